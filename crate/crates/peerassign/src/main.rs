use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use peerassign::io::{matching_to_pairs, read_instance, read_partition, write_instance, MetricsRow, TripletFile};
use peerassign::sweep::{run_sweep, DatasetSource, SweepConfig};
use peerassign::table::{render, TableFormat};
use peerassign::verify;
use peerassign_core::datagen::{generate_effort, quality_from_topics, synthetic_topics, EffortFamily, EffortGenConfig};
use peerassign_core::metrics::{fr, qp, raer};
use peerassign_core::svp::{diversity, entropy_penalty, weighted_p_diversity, ReviewerPartition};
use peerassign_core::{
    compute_report, heuristic_solve, solve_pure_quality, solve_t_tuned, Matching, ProblemInstance, TunedConfig,
};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "peerassign", version, about = "Editor/reviewer paper assignment")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance with the pure-quality, bilevel and t-tuned methods.
    Solve(SolveArgs),
    /// Run a replication sweep and write the comparison tables.
    Sweep(SweepArgs),
    /// Run the randomized checks against exhaustive enumeration.
    Verify(VerifyArgs),
    /// Write a synthetic instance file.
    Gen(GenArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Instance JSON.
    instance: PathBuf,
    /// Reviewer partition JSON; adds diversity values to the report.
    #[arg(long)]
    partition: Option<PathBuf>,
    /// t values for the effort-tuned baseline.
    #[arg(long = "t", value_delimiter = ',', default_values_t = [0.05, 0.1, 0.15])]
    t_values: Vec<f64>,
    /// Scale W_R to a maximum of 1 before mixing it into the tuned objective.
    #[arg(long)]
    scale_effort: bool,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
}

impl From<FormatArg> for TableFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => TableFormat::Csv,
            FormatArg::Markdown => TableFormat::Markdown,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep configuration JSON; defaults are used when absent.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    reps: Option<usize>,
    /// Output directory for the table and `rows.json`; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "markdown")]
    format: FormatArg,
    /// Paper and reviewer topic files, overriding the configured dataset.
    #[arg(long, num_args = 2, value_names = ["PAPERS", "REVIEWERS"])]
    uiuc: Option<Vec<PathBuf>>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Multiplies every check's case count.
    #[arg(long, default_value_t = 1)]
    scale: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Aligned,
    Uniform,
    Exponential,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 73)]
    papers: usize,
    #[arg(long, default_value_t = 189)]
    reviewers: usize,
    #[arg(long, default_value_t = 25)]
    topics: usize,
    #[arg(long, value_enum, default_value = "aligned")]
    family: FamilyArg,
    #[arg(long, default_value_t = 0.1)]
    sigma: f64,
    #[arg(long, default_value_t = 0.5)]
    rate: f64,
    /// Seed of the effort draw.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seed of the topic vectors.
    #[arg(long, default_value_t = 2007)]
    topic_seed: u64,
    /// Keep the raw topic products instead of scaling W_E to a maximum of 1.
    #[arg(long)]
    no_normalize: bool,
    #[arg(long, default_value_t = 3)]
    l: usize,
    #[arg(long, default_value_t = 5)]
    u: usize,
    #[arg(long = "capacity", default_value_t = 8)]
    capacity: usize,
    #[arg(long, default_value_t = 4)]
    phi: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct Assignment {
    pairs: Vec<[usize; 2]>,
    metrics: MetricsRow,
    #[serde(skip_serializing_if = "Option::is_none")]
    diversity: Option<Value>,
}

fn assignment(x: &Matching, inst: &ProblemInstance, part: Option<&ReviewerPartition>) -> Result<Assignment> {
    let diversity = match part {
        Some(p) => Some(json!({
            "D": diversity(x, p)?,
            "F_2": weighted_p_diversity(x, inst.quality(), p, 2.0)?,
            "entropy": entropy_penalty(x, inst.quality(), p)?,
        })),
        None => None,
    };
    Ok(Assignment {
        pairs: matching_to_pairs(x),
        metrics: MetricsRow::from(&compute_report(x, inst)?),
        diversity,
    })
}

fn ratio(r: peerassign_core::Result<f64>) -> Value {
    r.map_or(Value::Null, Value::from)
}

fn solve(args: SolveArgs) -> Result<()> {
    let inst = read_instance(&args.instance)?;
    let part = match &args.partition {
        Some(p) => Some(read_partition(p, inst.reviewers())?),
        None => None,
    };
    let part = part.as_ref();
    let ilp = solve_pure_quality(&inst).context("pure-quality assignment")?;
    let (w_e, w_r) = (inst.quality(), inst.effort());

    let outcome = heuristic_solve(&inst)?;
    let bp = match outcome.triplet() {
        Some(t) => json!({
            "feasible": true,
            "triplet": TripletFile::from_triplet(t),
            "assignment": assignment(&t.x, &inst, part)?,
            "QP": ratio(qp(&t.x, &ilp, w_e)),
            "RAER": ratio(raer(&t.x, &ilp, w_r)),
            "FR": ratio(fr(&t.x, &ilp, w_r)),
            "AC": t.accordance,
        }),
        None => json!({ "feasible": false }),
    };
    let mut tuned = Vec::new();
    for &t in &args.t_values {
        let x = solve_t_tuned(&inst, TunedConfig::new(t)?.with_scaled_effort(args.scale_effort))?;
        let mut entry = json!({
            "t": t,
            "assignment": assignment(&x, &inst, part)?,
            "QP": ratio(qp(&x, &ilp, w_e)),
        });
        if let Some(b) = outcome.triplet() {
            entry["RAER_BP"] = ratio(raer(&b.x, &x, w_r));
            entry["FR_BP"] = ratio(fr(&b.x, &x, w_r));
        }
        tuned.push(entry);
    }
    let report = json!({
        "ilp": assignment(&ilp, &inst, part)?,
        "bp": bp,
        "tuned": tuned,
    });
    emit(args.out.as_deref(), &(serde_json::to_string_pretty(&report)? + "\n"))
}

fn sweep(args: SweepArgs) -> Result<()> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => SweepConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.base_seed = seed;
    }
    if let Some(reps) = args.reps {
        cfg.replications = reps;
    }
    if let Some(out) = &args.out {
        cfg.out_dir = Some(out.clone());
    }
    if let Some(paths) = args.uiuc {
        cfg.dataset = DatasetSource::Uiuc {
            papers: paths[0].clone(),
            reviewers: paths[1].clone(),
        };
    }
    info!("running {} replications per cell", cfg.replications);
    let output = run_sweep(&cfg)?;
    let format = TableFormat::from(args.format);
    let table = render(&output, format)?;
    match &cfg.out_dir {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let name = match format {
                TableFormat::Csv => "table.csv",
                TableFormat::Markdown => "table.md",
            };
            emit(Some(&dir.join(name)), &table)?;
            emit(
                Some(&dir.join("rows.json")),
                &(serde_json::to_string_pretty(&output)? + "\n"),
            )?;
        }
        None => emit(None, &table)?,
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<bool> {
    let k = args.scale.max(1);
    let s = args.seed;
    let reports = [
        verify::solver_vs_enumeration(500 * k, s),
        verify::zero_freedom(200 * k, s),
        verify::heuristic_bounds(100 * k, s),
        verify::capacity_condition(200 * k, s),
        verify::coverage_condition(200 * k, s),
        verify::bid_selection(1000 * k, s),
        verify::three_papers(),
        verify::diversity_penalties(100 * k, s),
    ];
    let mut ok = true;
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        println!("{status} {} ({} cases, {:.2?})", r.name, r.cases, r.elapsed);
        for note in &r.notes {
            println!("     note: {note}");
        }
        for f in &r.failures {
            println!("     {f}");
        }
        ok &= r.passed();
    }
    Ok(ok)
}

fn generate(args: GenArgs) -> Result<()> {
    let family = match args.family {
        FamilyArg::Aligned => EffortFamily::Aligned { sigma: args.sigma },
        FamilyArg::Uniform => EffortFamily::Uniform,
        FamilyArg::Exponential => EffortFamily::Exponential { rate: args.rate },
    };
    let topics = synthetic_topics(args.papers, args.reviewers, args.topics, args.topic_seed);
    let quality = quality_from_topics(&topics, !args.no_normalize)?;
    let effort = generate_effort(&quality, &EffortGenConfig::new(family, args.seed))?;
    let inst = ProblemInstance::uniform(args.l, args.u, args.capacity, args.phi, quality, effort)?;
    let problems = inst.validate();
    if !problems.is_empty() {
        let list: Vec<String> = problems.iter().map(ToString::to_string).collect();
        bail!("generated instance is invalid: {}", list.join("; "));
    }
    match &args.out {
        Some(path) => write_instance(path, &inst)?,
        None => {
            let file = peerassign::io::InstanceFile::from_instance(&inst);
            println!("{}", serde_json::to_string(&file)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve(a).map(|_| true),
        Command::Sweep(a) => sweep(a).map(|_| true),
        Command::Verify(a) => run_verify(a),
        Command::Gen(a) => generate(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
