//! Exact maximization of a linear objective over degree-constrained binary
//! bipartite matchings with forbidden edges.
//!
//! The constraint matrix is totally unimodular, so a min-cost flow on
//!
//! ```text
//! source ─[l_i .. u_i]→ paper i ─[mask_ij, −w_ij]→ reviewer j ─[U_j]→ sink
//! ```
//!
//! has an integral optimum that is an optimal matching. Weights are converted
//! to fixed point (`round(w · cost_scale)`, ties to even) and optimality is
//! exact with respect to those integers.
//!
//! Lower bounds are enforced by splitting each source arc into a mandatory
//! part of capacity `l_i` carrying a bonus larger than twice the total
//! absolute weight, and an optional part of capacity `u_i − l_i` at zero cost.
//! Any flow missing a mandatory unit is then strictly worse than every flow
//! that saturates them all, so the optimum saturates all of them whenever a
//! feasible matching exists.

use alloc::vec::Vec;

use crate::flow::{Cost, Network};
use crate::instance::ProblemInstance;
use crate::matrix::{EdgeMask, Matching, Matrix, Shaped};
use crate::{Error, Result};

pub const DEFAULT_COST_SCALE: u64 = 1_000_000;

/// Largest magnitude a single scaled weight may have.
const MAX_SCALED_WEIGHT: f64 = (1u64 << 52) as f64;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightObjective {
    weights: Matrix,
    cost_scale: u64,
}

impl WeightObjective {
    pub fn new(weights: Matrix) -> Self {
        Self {
            weights,
            cost_scale: DEFAULT_COST_SCALE,
        }
    }

    pub fn with_cost_scale(weights: Matrix, cost_scale: u64) -> Result<Self> {
        if cost_scale == 0 {
            return Err(Error::InvalidParameter("cost_scale must be at least 1"));
        }
        Ok(Self { weights, cost_scale })
    }

    pub fn weights(&self) -> &Matrix {
        &self.weights
    }

    pub fn cost_scale(&self) -> u64 {
        self.cost_scale
    }

    /// `round(w_ij · cost_scale)`, ties to even.
    pub fn scaled(&self, i: usize, j: usize) -> Result<i64> {
        let v = libm::rint(self.weights.get(i, j) * self.cost_scale as f64);
        if !v.is_finite() || v.abs() > MAX_SCALED_WEIGHT {
            return Err(Error::CostOverflow);
        }
        Ok(v as i64)
    }

    /// `⟨round(W · cost_scale), X⟩`.
    pub fn scaled_value(&self, x: &Matching) -> Result<i64> {
        x.edges().try_fold(0i64, |acc, (i, j)| {
            acc.checked_add(self.scaled(i, j)?).ok_or(Error::CostOverflow)
        })
    }
}

/// Per-paper review bounds `l ≤ Σ_j X_ij ≤ u` and per-reviewer capacities
/// `Σ_i X_ij ≤ U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBounds {
    pub min_reviews: Vec<usize>,
    pub max_reviews: Vec<usize>,
    pub capacity: Vec<usize>,
}

impl DegreeBounds {
    pub fn new(min_reviews: Vec<usize>, max_reviews: Vec<usize>, capacity: Vec<usize>) -> Result<Self> {
        if min_reviews.len() != max_reviews.len() {
            return Err(Error::Shape("l and u differ in length"));
        }
        if min_reviews.iter().zip(&max_reviews).any(|(l, u)| l > u) {
            return Err(Error::InvalidParameter("l_i must not exceed u_i"));
        }
        Ok(Self {
            min_reviews,
            max_reviews,
            capacity,
        })
    }

    pub fn of(inst: &ProblemInstance) -> Self {
        Self {
            min_reviews: inst.min_reviews().to_vec(),
            max_reviews: inst.max_reviews().to_vec(),
            capacity: inst.capacity().to_vec(),
        }
    }

    pub fn papers(&self) -> usize {
        self.min_reviews.len()
    }

    pub fn reviewers(&self) -> usize {
        self.capacity.len()
    }

    /// Whether `x` respects every degree bound.
    pub fn admits(&self, x: &Matching) -> bool {
        (0..self.papers()).all(|i| {
            let d = x.row_sum(i);
            self.min_reviews[i] <= d && d <= self.max_reviews[i]
        }) && (0..self.reviewers()).all(|j| x.col_sum(j) <= self.capacity[j])
    }
}

/// Exact maximizer of `⟨round(W · scale), X⟩` subject to the degree bounds and
/// `X ≤ mask`.
pub fn solve_bmatching(obj: &WeightObjective, mask: &EdgeMask, bounds: &DegreeBounds) -> Result<Matching> {
    let n = bounds.papers();
    let m = bounds.reviewers();
    if obj.weights.shape() != (n, m) || mask.shape() != (n, m) {
        return Err(Error::Shape("weights, mask and bounds disagree on n × m"));
    }
    if bounds.max_reviews.len() != n {
        return Err(Error::Shape("l and u differ in length"));
    }
    if bounds.min_reviews.iter().zip(&bounds.max_reviews).any(|(l, u)| l > u) {
        return Err(Error::InvalidParameter("l_i must not exceed u_i"));
    }

    let mut scaled = Vec::with_capacity(n * m);
    let mut total_abs: Cost = 0;
    for i in 0..n {
        for j in 0..m {
            let c = if mask.allows(i, j) { obj.scaled(i, j)? } else { 0 };
            total_abs = total_abs.checked_add(c.abs()).ok_or(Error::CostOverflow)?;
            scaled.push(c);
        }
    }
    let bonus = total_abs
        .checked_mul(2)
        .and_then(|v| v.checked_add(1))
        .ok_or(Error::CostOverflow)?;
    let max_flow: i64 = bounds.max_reviews.iter().map(|&u| u as i64).sum();
    // Path costs and potentials stay within a few multiples of bonus · flow.
    bonus
        .checked_mul(max_flow + 1)
        .and_then(|v| v.checked_mul(8))
        .ok_or(Error::CostOverflow)?;

    let source = 0;
    let paper = |i: usize| 1 + i;
    let reviewer = |j: usize| 1 + n + j;
    let sink = 1 + n + m;
    let mut net = Network::new(n + m + 2);

    let mut mandatory = Vec::new();
    for i in 0..n {
        let (l, u) = (bounds.min_reviews[i] as i64, bounds.max_reviews[i] as i64);
        if l > 0 {
            mandatory.push((net.add_arc(source, paper(i), l, -bonus), l));
        }
        if u > l {
            net.add_arc(source, paper(i), u - l, 0);
        }
    }
    let mut edge_arcs = Vec::new();
    for i in 0..n {
        for j in 0..m {
            if mask.allows(i, j) {
                let id = net.add_arc(paper(i), reviewer(j), 1, -scaled[i * m + j]);
                edge_arcs.push((i, j, id));
            }
        }
    }
    for j in 0..m {
        if bounds.capacity[j] > 0 {
            net.add_arc(reviewer(j), sink, bounds.capacity[j] as i64, 0);
        }
    }

    net.min_cost_free_flow(source, sink);

    if mandatory.iter().any(|&(id, l)| net.flow(id) < l) {
        return Err(Error::Infeasible);
    }
    let mut x = Matching::empty(n, m);
    for (i, j, id) in edge_arcs {
        if net.flow(id) > 0 {
            x.set(i, j, true);
        }
    }
    debug_assert!(bounds.admits(&x));
    Ok(x)
}

/// `⟨W, X⟩` in unscaled weights.
pub fn objective_value(weights: &Matrix, x: &Matching) -> f64 {
    x.edges().map(|(i, j)| weights.get(i, j)).sum()
}
