//! CSV and markdown renderings of sweep results.
//!
//! The CSV is long-format, one line per (framework, metric). The markdown
//! has one table per `U` and per comparison (pure quality, then each `t`),
//! with effort families as column groups, `φ` as columns and metrics as rows.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{FormatError, Result};
use crate::io::csv_error;
use crate::sweep::{SweepOutput, SweepResultRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

pub const CSV_HEADER: [&str; 8] = [
    "framework",
    "U",
    "phi",
    "t",
    "metric",
    "mean",
    "replications",
    "infeasible",
];

fn metrics(row: &SweepResultRow) -> Vec<(String, Option<f64>)> {
    let mut out = Vec::with_capacity(4);
    match row.t {
        None => {
            out.push(("QP(X_BP)".to_string(), row.qp));
            out.push(("RAER(X_BP,X_ILP)".to_string(), row.raer));
            out.push(("FR(X_BP,X_ILP)".to_string(), row.fr));
            out.push(("AC".to_string(), row.ac));
        }
        Some(_) => {
            out.push(("QP(X_ILP^t)".to_string(), row.qp));
            out.push(("RAER(X_BP,X_ILP^t)".to_string(), row.raer));
            out.push(("FR(X_BP,X_ILP^t)".to_string(), row.fr));
        }
    }
    out
}

fn fmt_mean(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| format!("{x:.6}"))
}

pub fn to_csv(rows: &[SweepResultRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(FormatError::Invalid("no sweep rows to tabulate".into()));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for row in rows {
        for (metric, mean) in metrics(row) {
            w.write_record([
                row.family.clone(),
                row.capacity.to_string(),
                row.phi.to_string(),
                row.t.map_or_else(String::new, |t| t.to_string()),
                metric,
                fmt_mean(mean),
                row.replications.to_string(),
                row.infeasible.to_string(),
            ])
            .map_err(csv_error)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| FormatError::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| FormatError::Invalid(e.to_string()))
}

fn unique<T: PartialEq + Clone>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for it in items {
        if !out.contains(&it) {
            out.push(it);
        }
    }
    out
}

pub fn to_markdown(output: &SweepOutput) -> Result<String> {
    let rows = &output.rows;
    if rows.is_empty() {
        return Err(FormatError::Invalid("no sweep rows to tabulate".into()));
    }
    let mut md = String::new();
    if let Some(mark) = &output.watermark {
        writeln!(md, "> {mark}\n").unwrap();
    }
    for capacity in unique(rows.iter().map(|r| r.capacity)) {
        let at_u: Vec<&SweepResultRow> = rows.iter().filter(|r| r.capacity == capacity).collect();
        let families = unique(at_u.iter().map(|r| r.family.clone()));
        let phis = unique(at_u.iter().map(|r| r.phi));
        let ts = unique(at_u.iter().map(|r| r.t.map(f64::to_bits)));
        for t_bits in ts {
            let t = t_bits.map(f64::from_bits);
            let title = match t {
                None => format!("U={capacity}, X_BP vs X_ILP"),
                Some(t) => format!("U={capacity}, X_BP vs X_ILP^t, t={t}"),
            };
            writeln!(md, "### {title}\n").unwrap();
            let mut header = String::from("| metric |");
            let mut rule = String::from("|---|");
            for f in &families {
                for p in &phis {
                    write!(header, " {f} phi={p} |").unwrap();
                    rule.push_str("---|");
                }
            }
            writeln!(md, "{header}\n{rule}").unwrap();
            let cell = |f: &String, p: usize| {
                at_u.iter()
                    .find(|r| &r.family == f && r.phi == p && r.t.map(f64::to_bits) == t_bits)
                    .copied()
            };
            let names: Vec<String> = at_u
                .iter()
                .find(|r| r.t.map(f64::to_bits) == t_bits)
                .map(|r| metrics(r).into_iter().map(|(n, _)| n).collect())
                .unwrap_or_default();
            for (k, name) in names.iter().enumerate() {
                let mut line = format!("| {name} |");
                for f in &families {
                    for &p in &phis {
                        let v = cell(f, p).and_then(|r| metrics(r)[k].1);
                        write!(
                            line,
                            " {} |",
                            v.map_or_else(|| "n/a".to_string(), |x| format!("{x:.2}"))
                        )
                        .unwrap();
                    }
                }
                writeln!(md, "{line}").unwrap();
            }
            md.push('\n');
        }
    }
    if !output.failed_cells.is_empty() {
        writeln!(
            md,
            "Cells with no feasible replication: {}",
            output.failed_cells.join("; ")
        )
        .unwrap();
    }
    Ok(md)
}

pub fn render(output: &SweepOutput, format: TableFormat) -> Result<String> {
    match format {
        TableFormat::Csv => {
            let mut text = String::new();
            if let Some(mark) = &output.watermark {
                writeln!(text, "# {mark}").unwrap();
            }
            text.push_str(&to_csv(&output.rows)?);
            Ok(text)
        }
        TableFormat::Markdown => to_markdown(output),
    }
}

pub fn emit_table(output: &SweepOutput, format: TableFormat, path: &Path) -> Result<()> {
    let text = render(output, format)?;
    fs::write(path, text).map_err(|e| FormatError::io(path, e))
}
