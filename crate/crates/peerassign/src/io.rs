//! JSON and CSV formats.
//!
//! * Instance: `{"n", "m", "l", "u", "U", "phi", "W_E", "W_R"}` with the
//!   matrices row-major (papers are rows). Nested `[[..], ..]` matrices are
//!   accepted on input; output is always flat.
//! * Matching: a list of 1-based `[paper, reviewer]` pairs.
//! * Triplet: edge lists `x`, `y`, `z` plus `bp_objective` and `accordance`.
//! * Partition: `{"blocks": [[reviewer ids], ..]}`, 1-based.
//! * Metrics: one flat JSON object or CSV row.

use std::fs;
use std::path::Path;

use peerassign_core::svp::ReviewerPartition;
use peerassign_core::{BpTriplet, Matching, Matrix, MetricsReport, ProblemInstance};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{FormatError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixRepr {
    Flat(Vec<f64>),
    Nested(Vec<Vec<f64>>),
}

impl MatrixRepr {
    fn into_matrix(self, rows: usize, cols: usize, name: &str) -> Result<Matrix> {
        let data = match self {
            MatrixRepr::Flat(v) => v,
            MatrixRepr::Nested(rs) => {
                if rs.len() != rows || rs.iter().any(|r| r.len() != cols) {
                    return Err(FormatError::Invalid(format!(
                        "{name} must be {rows} rows of {cols} values"
                    )));
                }
                rs.into_iter().flatten().collect()
            }
        };
        if data.len() != rows * cols {
            return Err(FormatError::Invalid(format!(
                "{name} has {} entries, expected {rows} x {cols}",
                data.len()
            )));
        }
        Ok(Matrix::from_row_major(rows, cols, data)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub m: usize,
    pub l: Vec<usize>,
    pub u: Vec<usize>,
    #[serde(rename = "U")]
    pub capacity: Vec<usize>,
    pub phi: Vec<usize>,
    #[serde(rename = "W_E")]
    pub quality: MatrixRepr,
    #[serde(rename = "W_R")]
    pub effort: MatrixRepr,
}

impl InstanceFile {
    pub fn from_instance(inst: &ProblemInstance) -> Self {
        Self {
            n: inst.papers(),
            m: inst.reviewers(),
            l: inst.min_reviews().to_vec(),
            u: inst.max_reviews().to_vec(),
            capacity: inst.capacity().to_vec(),
            phi: inst.freedom().to_vec(),
            quality: MatrixRepr::Flat(inst.quality().as_slice().to_vec()),
            effort: MatrixRepr::Flat(inst.effort().as_slice().to_vec()),
        }
    }

    pub fn into_instance(self) -> Result<ProblemInstance> {
        let (n, m) = (self.n, self.m);
        let quality = self.quality.into_matrix(n, m, "W_E")?;
        let effort = self.effort.into_matrix(n, m, "W_R")?;
        if self.l.len() != n || self.u.len() != n || self.capacity.len() != m || self.phi.len() != m {
            return Err(FormatError::Invalid(
                "l, u need n entries and U, phi need m entries".into(),
            ));
        }
        Ok(ProblemInstance::new(
            self.l,
            self.u,
            self.capacity,
            self.phi,
            quality,
            effort,
        )?)
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| FormatError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| FormatError::json(path, e))
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| FormatError::json(path, e))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| FormatError::io(path, e))
}

pub fn parse_instance(text: &str) -> Result<ProblemInstance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| FormatError::json("<input>", e))?;
    file.into_instance()
}

pub fn read_instance(path: &Path) -> Result<ProblemInstance> {
    read_json::<InstanceFile>(path)?.into_instance()
}

pub fn write_instance(path: &Path, inst: &ProblemInstance) -> Result<()> {
    write_json(path, &InstanceFile::from_instance(inst))
}

/// 1-based `[paper, reviewer]` pairs in row-major order.
pub fn matching_to_pairs(x: &Matching) -> Vec<[usize; 2]> {
    x.edges().map(|(i, j)| [i + 1, j + 1]).collect()
}

pub fn matching_from_pairs(n: usize, m: usize, pairs: &[[usize; 2]]) -> Result<Matching> {
    let mut edges = Vec::with_capacity(pairs.len());
    for &[p, r] in pairs {
        if p == 0 || r == 0 || p > n || r > m {
            return Err(FormatError::Invalid(format!(
                "edge [{p}, {r}] outside 1..={n} x 1..={m}"
            )));
        }
        edges.push((p - 1, r - 1));
    }
    Ok(Matching::from_edges(n, m, &edges)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripletFile {
    pub x: Vec<[usize; 2]>,
    pub y: Vec<[usize; 2]>,
    pub z: Vec<[usize; 2]>,
    pub bp_objective: f64,
    pub accordance: f64,
}

impl TripletFile {
    pub fn from_triplet(t: &BpTriplet) -> Self {
        Self {
            x: matching_to_pairs(&t.x),
            y: matching_to_pairs(&t.y),
            z: matching_to_pairs(&t.z),
            bp_objective: t.bp_objective,
            accordance: t.accordance,
        }
    }

    /// Rebuilds the triplet; the scalar fields are recomputed from `inst`.
    pub fn into_triplet(self, inst: &ProblemInstance) -> Result<BpTriplet> {
        let (n, m) = (inst.papers(), inst.reviewers());
        Ok(BpTriplet::new(
            inst,
            matching_from_pairs(n, m, &self.x)?,
            matching_from_pairs(n, m, &self.y)?,
            matching_from_pairs(n, m, &self.z)?,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionFile {
    pub blocks: Vec<Vec<usize>>,
}

impl PartitionFile {
    pub fn into_partition(self, reviewers: usize) -> Result<ReviewerPartition> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in self.blocks {
            if b.contains(&0) {
                return Err(FormatError::Invalid("reviewer ids are 1-based".into()));
            }
            blocks.push(b.into_iter().map(|j| j - 1).collect());
        }
        Ok(ReviewerPartition::new(reviewers, blocks)?)
    }
}

pub fn read_partition(path: &Path, reviewers: usize) -> Result<ReviewerPartition> {
    read_json::<PartitionFile>(path)?.into_partition(reviewers)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub quality: f64,
    pub n_active: usize,
    pub total_effort: f64,
    pub avg_effort: f64,
    pub variance: f64,
    /// `ρ_j` per reviewer, in reviewer order.
    pub efforts: Vec<f64>,
}

impl From<&MetricsReport> for MetricsRow {
    fn from(r: &MetricsReport) -> Self {
        Self {
            quality: r.quality,
            n_active: r.n_active,
            total_effort: r.total_effort,
            avg_effort: r.avg_effort,
            variance: r.variance,
            efforts: r.efforts.clone(),
        }
    }
}

/// Header plus one CSV row per report. Per-reviewer efforts become columns
/// `rho_1..rho_m`.
pub fn metrics_csv(reports: &[(&str, &MetricsReport)]) -> Result<String> {
    let m = reports.first().map_or(0, |(_, r)| r.efforts.len());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = ["label", "quality", "n_active", "total_effort", "avg_effort", "variance"]
        .into_iter()
        .map(String::from)
        .collect();
    header.extend((1..=m).map(|j| format!("rho_{j}")));
    w.write_record(&header).map_err(csv_error)?;
    for (label, r) in reports {
        if r.efforts.len() != m {
            return Err(FormatError::Invalid("reports cover different reviewer counts".into()));
        }
        let mut rec = vec![
            label.to_string(),
            r.quality.to_string(),
            r.n_active.to_string(),
            r.total_effort.to_string(),
            r.avg_effort.to_string(),
            r.variance.to_string(),
        ];
        rec.extend(r.efforts.iter().map(f64::to_string));
        w.write_record(&rec).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| FormatError::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub(crate) fn csv_error(e: csv::Error) -> FormatError {
    FormatError::Invalid(format!("csv: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_instance() -> ProblemInstance {
        let quality = Matrix::from_rows(&[[0.9, 0.2, 0.1], [0.8, 0.7, 0.2], [0.2, 0.9, 0.6], [0.1, 0.3, 0.8]]).unwrap();
        let effort = Matrix::from_rows(&[[1.0, 5.0, 5.0], [2.0, 1.0, 4.0], [5.0, 2.0, 1.0], [4.0, 4.0, 2.0]]).unwrap();
        ProblemInstance::uniform(1, 1, 2, 1, quality, effort).unwrap()
    }

    #[test]
    fn instance_round_trip() {
        let inst = small_instance();
        let text = serde_json::to_string(&InstanceFile::from_instance(&inst)).unwrap();
        assert!(text.contains("\"W_E\":[0.9,0.2,0.1,0.8"));
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn nested_matrices_accepted() {
        let text = r#"{"n":2,"m":1,"l":[1,1],"u":[1,1],"U":[2],"phi":[0],
            "W_E":[[0.5],[0.25]],"W_R":[1.0,2.0]}"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.quality().get(1, 0), 0.25);
        assert_eq!(inst.effort().get(1, 0), 2.0);
    }

    #[test]
    fn bad_shapes_rejected() {
        let short = r#"{"n":2,"m":1,"l":[1,1],"u":[1,1],"U":[2],"phi":[0],"W_E":[0.5],"W_R":[1.0,2.0]}"#;
        assert!(matches!(parse_instance(short), Err(FormatError::Invalid(_))));
        let ragged = r#"{"n":2,"m":1,"l":[1,1],"u":[1,1],"U":[2],"phi":[0],"W_E":[[0.5],[]],"W_R":[1.0,2.0]}"#;
        assert!(parse_instance(ragged).is_err());
        let lengths = r#"{"n":2,"m":1,"l":[1],"u":[1,1],"U":[2],"phi":[0],"W_E":[0.5,0.1],"W_R":[1.0,2.0]}"#;
        assert!(parse_instance(lengths).is_err());
    }

    #[test]
    fn matching_pairs_are_one_based() {
        let x = Matching::from_edges(4, 3, &[(0, 0), (3, 2)]).unwrap();
        let pairs = matching_to_pairs(&x);
        assert_eq!(pairs, vec![[1, 1], [4, 3]]);
        assert_eq!(matching_from_pairs(4, 3, &pairs).unwrap(), x);
        assert!(matching_from_pairs(4, 3, &[[0, 1]]).is_err());
        assert!(matching_from_pairs(4, 3, &[[5, 1]]).is_err());
    }

    #[test]
    fn triplet_round_trip() {
        let inst = small_instance();
        let t = peerassign_core::heuristic_solve(&inst).unwrap();
        let t = t.triplet().unwrap();
        let file = TripletFile::from_triplet(t);
        assert_eq!(file.x, vec![[1, 1], [2, 1], [3, 2], [4, 3]]);
        assert_eq!(&file.clone().into_triplet(&inst).unwrap(), t);
    }

    #[test]
    fn partition_ids() {
        let p: PartitionFile = serde_json::from_str(r#"{"blocks":[[1,2],[3]]}"#).unwrap();
        let part = p.into_partition(3).unwrap();
        assert_eq!(part.blocks(), &[vec![0, 1], vec![2]]);
        let zero: PartitionFile = serde_json::from_str(r#"{"blocks":[[0,1]]}"#).unwrap();
        assert!(zero.into_partition(2).is_err());
    }

    #[test]
    fn metrics_csv_layout() {
        let inst = small_instance();
        let x = Matching::from_edges(4, 3, &[(0, 0), (1, 0), (2, 1), (3, 2)]).unwrap();
        let r = peerassign_core::compute_report(&x, &inst).unwrap();
        let text = metrics_csv(&[("bp", &r)]).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "label,quality,n_active,total_effort,avg_effort,variance,rho_1,rho_2,rho_3"
        );
        assert!(lines[1].starts_with("bp,3.4"));
        assert!(lines[1].ends_with(",3,2,2"));
        let json = serde_json::to_value(MetricsRow::from(&r)).unwrap();
        assert_eq!(json["n_active"], 3);
    }
}
