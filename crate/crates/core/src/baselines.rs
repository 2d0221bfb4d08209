//! Single-level baselines: the pure-quality assignment and the `t`-tuned
//! assignments that trade quality against effort.

use crate::instance::ProblemInstance;
use crate::matrix::{EdgeMask, Matching};
use crate::solver::{solve_bmatching, DegreeBounds, WeightObjective};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TunedConfig {
    t: f64,
    scale_effort: bool,
}

impl TunedConfig {
    pub fn new(t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParameter("t must lie in [0, 1]"));
        }
        Ok(Self { t, scale_effort: false })
    }

    /// Divide `W_R` by its largest entry before mixing, so both matrices
    /// peak at 1 when `W_E` is normalized.
    pub fn with_scaled_effort(self, scale_effort: bool) -> Self {
        Self { scale_effort, ..self }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn scales_effort(&self) -> bool {
        self.scale_effort
    }
}

/// Maximizer of `⟨W_E, X⟩` under the degree bounds, all edges allowed.
pub fn solve_pure_quality(inst: &ProblemInstance) -> Result<Matching> {
    solve_bmatching(
        &WeightObjective::new(inst.quality().clone()),
        &EdgeMask::full(inst.papers(), inst.reviewers()),
        &DegreeBounds::of(inst),
    )
}

/// Maximizer of `⟨(1 − t)·W_E − t·W_R, X⟩` under the degree bounds. By
/// default the two matrices are mixed as given.
pub fn solve_t_tuned(inst: &ProblemInstance, cfg: TunedConfig) -> Result<Matching> {
    let effort_weight = match inst.effort().max() {
        Some(top) if cfg.scale_effort && top > 0.0 => -cfg.t / top,
        _ => -cfg.t,
    };
    let weights = inst.quality().combine(1.0 - cfg.t, inst.effort(), effort_weight)?;
    solve_bmatching(
        &WeightObjective::new(weights),
        &EdgeMask::full(inst.papers(), inst.reviewers()),
        &DegreeBounds::of(inst),
    )
}
