//! Replication sweeps comparing the bilevel heuristic with the single-level
//! baselines over a grid of capacities, freedom degrees and effort families.

use std::path::PathBuf;

use log::{info, warn};
use peerassign_core::datagen::{generate_effort, quality_from_topics, synthetic_topics, EffortFamily, EffortGenConfig};
use peerassign_core::metrics::{fr, qp, raer};
use peerassign_core::{
    heuristic_solve, solve_pure_quality, solve_t_tuned, Error, Matching, Matrix, ProblemInstance, TunedConfig,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FormatError, Result};
use crate::uiuc::{load_uiuc, TOPICS};

pub const SYNTHETIC_WATERMARK: &str = "synthetic W_E";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DatasetSource {
    Uiuc {
        papers: PathBuf,
        reviewers: PathBuf,
    },
    /// Random sparse topic vectors standing in for the UIUC files.
    Synthetic {
        papers: usize,
        reviewers: usize,
        topics: usize,
        seed: u64,
    },
}

impl Default for DatasetSource {
    fn default() -> Self {
        DatasetSource::Synthetic {
            papers: 73,
            reviewers: 189,
            topics: TOPICS,
            seed: 2007,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Aligned { sigma: f64 },
    Uniform,
    Exponential { rate: f64 },
}

impl FamilySpec {
    pub fn to_core(self) -> EffortFamily {
        match self {
            FamilySpec::Aligned { sigma } => EffortFamily::Aligned { sigma },
            FamilySpec::Uniform => EffortFamily::Uniform,
            FamilySpec::Exponential { rate } => EffortFamily::Exponential { rate },
        }
    }

    pub fn label(self) -> String {
        match self {
            FamilySpec::Aligned { sigma } => format!("aligned sigma={sigma}"),
            FamilySpec::Uniform => "uniform".to_string(),
            FamilySpec::Exponential { rate } => format!("exp rate={rate}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub dataset: DatasetSource,
    /// Scale `W_E` so its largest entry is 1.
    pub normalize: bool,
    #[serde(rename = "l")]
    pub min_reviews: usize,
    #[serde(rename = "u")]
    pub max_reviews: usize,
    #[serde(rename = "U")]
    pub capacities: Vec<usize>,
    /// `φ = ⌊fraction · U⌋`.
    pub phi_fractions: Vec<f64>,
    pub families: Vec<FamilySpec>,
    pub t_values: Vec<f64>,
    /// Divide `W_R` by its maximum before mixing it into the `t`-tuned
    /// objective.
    pub scale_tuned_effort: bool,
    pub replications: usize,
    pub base_seed: u64,
    pub out_dir: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            dataset: DatasetSource::default(),
            normalize: true,
            min_reviews: 3,
            max_reviews: 5,
            capacities: vec![6, 8],
            phi_fractions: vec![0.5, 0.75, 1.0],
            families: vec![
                FamilySpec::Aligned { sigma: 0.1 },
                FamilySpec::Aligned { sigma: 0.3 },
                FamilySpec::Uniform,
                FamilySpec::Exponential { rate: 0.5 },
            ],
            t_values: vec![0.05, 0.1, 0.15],
            scale_tuned_effort: true,
            replications: 250,
            base_seed: 0,
            out_dir: None,
        }
    }
}

pub fn phi_for(capacity: usize, fraction: f64) -> usize {
    (fraction * capacity as f64 + 1e-9).floor() as usize
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(FormatError::Invalid(m.to_string()));
        if self.capacities.is_empty() || self.phi_fractions.is_empty() || self.families.is_empty() {
            return bad("U, phi and family grids must be nonempty");
        }
        if self.replications == 0 {
            return bad("replications must be at least 1");
        }
        if self.min_reviews > self.max_reviews {
            return bad("l must not exceed u");
        }
        if self.capacities.contains(&0) {
            return bad("U must be positive");
        }
        if self.phi_fractions.iter().any(|f| !(0.0..=1.0).contains(f)) {
            return bad("phi fractions must lie in [0, 1]");
        }
        for &t in &self.t_values {
            TunedConfig::new(t)?;
        }
        for f in &self.families {
            f.to_core().validate()?;
        }
        Ok(())
    }

    /// `(U, φ)` pairs in grid order.
    pub fn capacity_phi_pairs(&self) -> Vec<(usize, usize)> {
        self.capacities
            .iter()
            .flat_map(|&u| self.phi_fractions.iter().map(move |&f| (u, phi_for(u, f))))
            .collect()
    }
}

/// The quality matrix of a sweep and whether it came from the synthetic
/// surrogate.
pub fn load_quality(cfg: &SweepConfig) -> Result<(Matrix, bool)> {
    let (topics, synthetic) = match &cfg.dataset {
        DatasetSource::Uiuc { papers, reviewers } if papers.exists() && reviewers.exists() => {
            (load_uiuc(papers, reviewers)?, false)
        }
        DatasetSource::Uiuc { papers, .. } => {
            warn!("{} not found; using the synthetic surrogate", papers.display());
            let DatasetSource::Synthetic {
                papers,
                reviewers,
                topics,
                seed,
            } = DatasetSource::default()
            else {
                unreachable!()
            };
            (synthetic_topics(papers, reviewers, topics, seed), true)
        }
        DatasetSource::Synthetic {
            papers,
            reviewers,
            topics,
            seed,
        } => (synthetic_topics(*papers, *reviewers, *topics, *seed), true),
    };
    Ok((quality_from_topics(&topics, cfg.normalize)?, synthetic))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResultRow {
    pub family: String,
    #[serde(rename = "U")]
    pub capacity: usize,
    pub phi: usize,
    /// `None` for the comparison with the pure-quality assignment.
    pub t: Option<f64>,
    pub qp: Option<f64>,
    pub raer: Option<f64>,
    pub fr: Option<f64>,
    pub ac: Option<f64>,
    pub replications: usize,
    pub infeasible: usize,
    /// Replications where some ratio had a zero baseline and was skipped.
    pub degenerate: usize,
}

impl SweepResultRow {
    pub fn framework(&self) -> String {
        format!("{} U={} phi={}", self.family, self.capacity, self.phi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub rows: Vec<SweepResultRow>,
    /// Set when `W_E` came from the synthetic surrogate.
    pub watermark: Option<String>,
    /// Cells in which every replication was infeasible.
    pub failed_cells: Vec<String>,
}

/// Ratios of one replication in one cell; `None` entries were degenerate.
#[derive(Debug, Clone, Default)]
struct Sample {
    qp: Option<f64>,
    raer: Option<f64>,
    fr: Option<f64>,
    ac: Option<f64>,
}

impl Sample {
    fn degenerate(&self, with_ac: bool) -> bool {
        self.qp.is_none() || self.raer.is_none() || self.fr.is_none() || (with_ac && self.ac.is_none())
    }
}

/// Samples of one `(U, family, replication)` unit: for each φ either
/// `None` (infeasible) or the ILP sample followed by one sample per `t`.
type Unit = Vec<Option<Vec<Sample>>>;

fn ratio(r: std::result::Result<f64, Error>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::DegenerateBaseline(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn run_unit(
    cfg: &SweepConfig,
    quality: &Matrix,
    x_ilp: Option<&Matching>,
    capacity: usize,
    phis: &[usize],
    family: FamilySpec,
    seed: u64,
) -> Result<Unit> {
    let Some(x_ilp) = x_ilp else {
        return Ok(vec![None; phis.len()]);
    };
    let effort = generate_effort(quality, &EffortGenConfig::new(family.to_core(), seed))?;
    let base = ProblemInstance::uniform(cfg.min_reviews, cfg.max_reviews, capacity, 0, quality.clone(), effort)?;
    let mut tuned = Vec::with_capacity(cfg.t_values.len());
    for &t in &cfg.t_values {
        let tc = TunedConfig::new(t)?.with_scaled_effort(cfg.scale_tuned_effort);
        tuned.push(solve_t_tuned(&base, tc)?);
    }
    let w_e = base.quality();
    let w_r = base.effort();
    let mut out = Vec::with_capacity(phis.len());
    for &phi in phis {
        let inst = base.with_freedom(vec![phi; base.reviewers()])?;
        let outcome = heuristic_solve(&inst)?;
        let Some(bp) = outcome.triplet() else {
            out.push(None);
            continue;
        };
        let mut samples = vec![Sample {
            qp: ratio(qp(&bp.x, x_ilp, w_e))?,
            raer: ratio(raer(&bp.x, x_ilp, w_r))?,
            fr: ratio(fr(&bp.x, x_ilp, w_r))?,
            ac: Some(bp.accordance),
        }];
        for x_t in &tuned {
            samples.push(Sample {
                qp: ratio(qp(x_t, x_ilp, w_e))?,
                raer: ratio(raer(&bp.x, x_t, w_r))?,
                fr: ratio(fr(&bp.x, x_t, w_r))?,
                ac: None,
            });
        }
        out.push(Some(samples));
    }
    Ok(out)
}

fn mean(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let (sum, count) = values.flatten().fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

/// Runs every cell of the grid. Replications run in parallel; results are
/// reduced in replication order, so the output does not depend on the
/// thread count.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let (quality, synthetic) = load_quality(cfg)?;
    let (n, m) = (quality.rows(), quality.cols());
    info!("sweep over W_E of {n} papers x {m} reviewers");

    let phi_lists: Vec<Vec<usize>> = cfg
        .capacities
        .iter()
        .map(|&u| cfg.phi_fractions.iter().map(|&f| phi_for(u, f)).collect())
        .collect();
    let mut ilp = Vec::with_capacity(cfg.capacities.len());
    for &u in &cfg.capacities {
        let inst = ProblemInstance::uniform(
            cfg.min_reviews,
            cfg.max_reviews,
            u,
            0,
            quality.clone(),
            Matrix::filled(n, m, 1.0),
        )?;
        ilp.push(match solve_pure_quality(&inst) {
            Ok(x) => Some(x),
            Err(Error::Infeasible) => {
                warn!("pure-quality problem infeasible for U={u}");
                None
            }
            Err(e) => return Err(e.into()),
        });
    }

    let jobs: Vec<(usize, usize, usize)> = (0..cfg.capacities.len())
        .flat_map(|c| (0..cfg.families.len()).flat_map(move |f| (0..cfg.replications).map(move |r| (c, f, r))))
        .collect();
    let units: Vec<Unit> = jobs
        .par_iter()
        .map(|&(c, f, r)| {
            let seed = cfg.base_seed.wrapping_add(r as u64);
            run_unit(
                cfg,
                &quality,
                ilp[c].as_ref(),
                cfg.capacities[c],
                &phi_lists[c],
                cfg.families[f],
                seed,
            )
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut failed_cells = Vec::new();
    let per_cell = cfg.replications;
    for (c, &capacity) in cfg.capacities.iter().enumerate() {
        for (f, family) in cfg.families.iter().enumerate() {
            let start = (c * cfg.families.len() + f) * per_cell;
            let block = &units[start..start + per_cell];
            for (p, &phi) in phi_lists[c].iter().enumerate() {
                let feasible: Vec<&Vec<Sample>> = block.iter().filter_map(|u| u[p].as_ref()).collect();
                let infeasible = per_cell - feasible.len();
                if feasible.is_empty() {
                    let cell = format!("{} U={capacity} phi={phi}", family.label());
                    warn!("{cell}: every replication infeasible");
                    failed_cells.push(cell);
                }
                for k in 0..=cfg.t_values.len() {
                    let with_ac = k == 0;
                    let samples = || feasible.iter().map(move |s| &s[k]);
                    rows.push(SweepResultRow {
                        family: family.label(),
                        capacity,
                        phi,
                        t: k.checked_sub(1).map(|i| cfg.t_values[i]),
                        qp: mean(samples().map(|s| s.qp)),
                        raer: mean(samples().map(|s| s.raer)),
                        fr: mean(samples().map(|s| s.fr)),
                        ac: if with_ac { mean(samples().map(|s| s.ac)) } else { None },
                        replications: per_cell,
                        infeasible,
                        degenerate: samples().filter(|s| s.degenerate(with_ac)).count(),
                    });
                }
            }
        }
    }
    Ok(SweepOutput {
        rows,
        watermark: synthetic.then(|| SYNTHETIC_WATERMARK.to_string()),
        failed_cells,
    })
}
