//! Greedy solution of the bilevel editor/reviewer model.
//!
//! 1. The editor proposes to each reviewer the `U_j + φ_j` papers of highest
//!    quality in their column.
//! 2. Reviewers bid on their `U_j` least-effort proposed papers.
//! 3. The editor solves the b-matching with weights `W_E + Y` restricted to
//!    edges that were not declined (`X ≤ E − Z + Y`).

use alloc::vec::Vec;
use log::warn;

use crate::instance::{largest_k, ProblemInstance};
use crate::lower_level::bid_all;
use crate::matrix::{EdgeMask, Matching, Matrix, Shaped};
use crate::solver::{objective_value, solve_bmatching, DegreeBounds, WeightObjective};
use crate::{Error, Result};

/// Final assignment `x`, bidding `y` and proposal `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct BpTriplet {
    pub x: Matching,
    pub y: Matching,
    pub z: Matching,
    /// `⟨W_E, X⟩ + ⟨Y, X⟩`.
    pub bp_objective: f64,
    pub accordance: f64,
}

impl BpTriplet {
    /// Assembles a triplet and fills in the objective and accordance.
    pub fn new(inst: &ProblemInstance, x: Matching, y: Matching, z: Matching) -> Self {
        let bp_objective = objective_value(inst.quality(), &x) + x.overlap(&y) as f64;
        let accordance = accordance(&x, &y);
        Self {
            x,
            y,
            z,
            bp_objective,
            accordance,
        }
    }

    pub fn quality(&self, inst: &ProblemInstance) -> f64 {
        objective_value(inst.quality(), &self.x)
    }

    /// Checks every structural constraint of a feasible triplet. Does not
    /// check that `y` is an optimal bid for `z`.
    pub fn is_consistent(&self, inst: &ProblemInstance) -> bool {
        let m = inst.reviewers();
        let shapes = self.x.shape() == inst.quality().shape()
            && self.y.shape() == self.x.shape()
            && self.z.shape() == self.x.shape();
        if !shapes || !self.y.is_subset_of(&self.z) {
            return false;
        }
        let columns = (0..m).all(|j| {
            self.z.col_sum(j) == inst.capacity()[j] + inst.freedom()[j] && self.y.col_sum(j) == inst.capacity()[j]
        });
        let declined_unused = self.x.edges().all(|(i, j)| !self.z.get(i, j) || self.y.get(i, j));
        columns && declined_unused && DegreeBounds::of(inst).admits(&self.x)
    }
}

/// Heuristic result; infeasibility is an ordinary outcome.
#[derive(Debug, Clone, PartialEq)]
pub enum BpOutcome {
    Feasible(BpTriplet),
    Infeasible { proposal: Matching, bidding: Matching },
}

impl BpOutcome {
    pub fn triplet(&self) -> Option<&BpTriplet> {
        match self {
            BpOutcome::Feasible(t) => Some(t),
            BpOutcome::Infeasible { .. } => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, BpOutcome::Feasible(_))
    }
}

/// Quality-maximal proposal: column `j` holds the `U_j + φ_j` highest-quality
/// papers.
pub fn greedy_proposal(quality: &Matrix, capacity: &[usize], freedom: &[usize]) -> Result<Matching> {
    let (n, m) = quality.shape();
    if capacity.len() != m || freedom.len() != m {
        return Err(Error::Shape("U and phi must have one entry per reviewer"));
    }
    let mut z = Matching::empty(n, m);
    for j in 0..m {
        let size = capacity[j] + freedom[j];
        if size > n {
            return Err(Error::ProposalTooLarge {
                reviewer: j,
                requested: size,
                papers: n,
            });
        }
        for i in largest_k(&quality.column(j), size) {
            z.set(i, j, true);
        }
    }
    Ok(z)
}

pub fn heuristic_solve(inst: &ProblemInstance) -> Result<BpOutcome> {
    let z = greedy_proposal(inst.quality(), inst.capacity(), inst.freedom())?;
    let y = bid_all(&z, inst.effort(), inst.capacity())?;
    let mask = EdgeMask::consistency(&z, &y)?;
    let weights = inst.quality().combine(1.0, &y.to_weights(), 1.0)?;
    match solve_bmatching(&WeightObjective::new(weights), &mask, &DegreeBounds::of(inst)) {
        Ok(x) => Ok(BpOutcome::Feasible(BpTriplet::new(inst, x, y, z))),
        Err(Error::Infeasible) => Ok(BpOutcome::Infeasible {
            proposal: z,
            bidding: y,
        }),
        Err(e) => Err(e),
    }
}

/// Exact bilevel optimum when every `φ_j = 0`.
///
/// Bids then equal proposals, so the problem is `max ⟨W_E + 1, X⟩` over the
/// full edge set; the proposal is `X` padded with the best remaining papers.
pub fn solve_without_freedom(inst: &ProblemInstance) -> Result<BpOutcome> {
    if inst.freedom().iter().any(|&f| f != 0) {
        return Err(Error::InvalidParameter("every phi_j must be 0"));
    }
    let (n, m) = inst.quality().shape();
    let weights = inst.quality().map(|w| w + 1.0);
    let full = EdgeMask::full(n, m);
    let x = match solve_bmatching(&WeightObjective::new(weights), &full, &DegreeBounds::of(inst)) {
        Ok(x) => x,
        Err(Error::Infeasible) => {
            let z = greedy_proposal(inst.quality(), inst.capacity(), inst.freedom())?;
            return Ok(BpOutcome::Infeasible {
                proposal: z.clone(),
                bidding: z,
            });
        }
        Err(e) => return Err(e),
    };
    let mut z = x.clone();
    for j in 0..m {
        let col = inst.quality().column(j);
        let mut rest: Vec<usize> = (0..n).filter(|&i| !x.get(i, j)).collect();
        rest.sort_by(|&a, &b| col[b].total_cmp(&col[a]).then(a.cmp(&b)));
        for &i in rest.iter().take(inst.capacity()[j] - x.col_sum(j)) {
            z.set(i, j, true);
        }
    }
    Ok(BpOutcome::Feasible(BpTriplet::new(inst, x, z.clone(), z)))
}

/// Share of assigned edges that were bid on, `⟨X, Y⟩ / ⟨X, X⟩`.
///
/// An empty assignment is vacuously perfect and scores 1.
pub fn accordance(x: &Matching, y: &Matching) -> f64 {
    let assigned = x.count();
    if assigned == 0 {
        warn!("accordance of an empty assignment; returning 1");
        return 1.0;
    }
    x.overlap(y) as f64 / assigned as f64
}
