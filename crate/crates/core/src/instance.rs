//! Problem instances, their validation and the existence conditions for the
//! bilevel model.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::matrix::{Matrix, Shaped};
use crate::{Error, Result};

/// Papers, reviewers and everything the editor and the reviewers optimize.
///
/// `capacity[j]` (`U_j`) is both the most reviews reviewer `j` can be assigned
/// and the number of papers they must bid on; `freedom[j]` (`φ_j`) is how many
/// proposed papers they may refuse.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    min_reviews: Vec<usize>,
    max_reviews: Vec<usize>,
    capacity: Vec<usize>,
    freedom: Vec<usize>,
    quality: Matrix,
    effort: Matrix,
}

/// One broken instance invariant. Indices are 0-based; `Display` prints them
/// 1-based.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    MinExceedsMax {
        paper: usize,
        min: usize,
        max: usize,
    },
    DemandExceedsCapacity {
        demand: usize,
        capacity: usize,
    },
    ProposalExceedsPapers {
        reviewer: usize,
        proposal: usize,
        papers: usize,
    },
    ZeroCapacity {
        reviewer: usize,
    },
    NegativeQuality {
        paper: usize,
        reviewer: usize,
    },
    NonPositiveEffort {
        paper: usize,
        reviewer: usize,
    },
    NonFinite {
        matrix: &'static str,
        paper: usize,
        reviewer: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::MinExceedsMax { paper, min, max } => {
                write!(f, "l_{} > u_{} ({} > {})", paper + 1, paper + 1, min, max)
            }
            Violation::DemandExceedsCapacity { demand, capacity } => {
                write!(f, "sum of l ({demand}) exceeds sum of U ({capacity})")
            }
            Violation::ProposalExceedsPapers {
                reviewer,
                proposal,
                papers,
            } => write!(
                f,
                "U_{}+phi_{} > n ({} > {})",
                reviewer + 1,
                reviewer + 1,
                proposal,
                papers
            ),
            Violation::ZeroCapacity { reviewer } => write!(f, "U_{} must be positive", reviewer + 1),
            Violation::NegativeQuality { paper, reviewer } => {
                write!(f, "W_E[{},{}] is negative", paper + 1, reviewer + 1)
            }
            Violation::NonPositiveEffort { paper, reviewer } => {
                write!(f, "W_R[{},{}] is not strictly positive", paper + 1, reviewer + 1)
            }
            Violation::NonFinite {
                matrix,
                paper,
                reviewer,
            } => write!(f, "{}[{},{}] is not finite", matrix, paper + 1, reviewer + 1),
        }
    }
}

impl ProblemInstance {
    /// Checks only that all vectors and matrices agree on `n` and `m`; the
    /// modelling invariants are reported by [`ProblemInstance::validate`].
    pub fn new(
        min_reviews: Vec<usize>,
        max_reviews: Vec<usize>,
        capacity: Vec<usize>,
        freedom: Vec<usize>,
        quality: Matrix,
        effort: Matrix,
    ) -> Result<Self> {
        let n = quality.rows();
        let m = quality.cols();
        if min_reviews.len() != n || max_reviews.len() != n {
            return Err(Error::Shape("l and u must have one entry per paper"));
        }
        if capacity.len() != m || freedom.len() != m {
            return Err(Error::Shape("U and phi must have one entry per reviewer"));
        }
        if effort.shape() != (n, m) {
            return Err(Error::Shape("W_E and W_R differ in shape"));
        }
        Ok(Self {
            min_reviews,
            max_reviews,
            capacity,
            freedom,
            quality,
            effort,
        })
    }

    /// Instance with the same `l`, `u`, `U` and `φ` for every paper/reviewer.
    pub fn uniform(
        min_reviews: usize,
        max_reviews: usize,
        capacity: usize,
        freedom: usize,
        quality: Matrix,
        effort: Matrix,
    ) -> Result<Self> {
        let n = quality.rows();
        let m = quality.cols();
        Self::new(
            alloc::vec![min_reviews; n],
            alloc::vec![max_reviews; n],
            alloc::vec![capacity; m],
            alloc::vec![freedom; m],
            quality,
            effort,
        )
    }

    pub fn papers(&self) -> usize {
        self.quality.rows()
    }

    pub fn reviewers(&self) -> usize {
        self.quality.cols()
    }

    pub fn min_reviews(&self) -> &[usize] {
        &self.min_reviews
    }

    pub fn max_reviews(&self) -> &[usize] {
        &self.max_reviews
    }

    pub fn capacity(&self) -> &[usize] {
        &self.capacity
    }

    pub fn freedom(&self) -> &[usize] {
        &self.freedom
    }

    pub fn quality(&self) -> &Matrix {
        &self.quality
    }

    pub fn effort(&self) -> &Matrix {
        &self.effort
    }

    pub fn with_capacity(&self, capacity: Vec<usize>) -> Result<Self> {
        Self::new(
            self.min_reviews.clone(),
            self.max_reviews.clone(),
            capacity,
            self.freedom.clone(),
            self.quality.clone(),
            self.effort.clone(),
        )
    }

    pub fn with_freedom(&self, freedom: Vec<usize>) -> Result<Self> {
        Self::new(
            self.min_reviews.clone(),
            self.max_reviews.clone(),
            self.capacity.clone(),
            freedom,
            self.quality.clone(),
            self.effort.clone(),
        )
    }

    pub fn with_effort(&self, effort: Matrix) -> Result<Self> {
        Self::new(
            self.min_reviews.clone(),
            self.max_reviews.clone(),
            self.capacity.clone(),
            self.freedom.clone(),
            self.quality.clone(),
            effort,
        )
    }

    pub fn with_quality(&self, quality: Matrix) -> Result<Self> {
        Self::new(
            self.min_reviews.clone(),
            self.max_reviews.clone(),
            self.capacity.clone(),
            self.freedom.clone(),
            quality,
            self.effort.clone(),
        )
    }

    /// Every violated invariant; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.papers();
        for (i, (&l, &u)) in self.min_reviews.iter().zip(&self.max_reviews).enumerate() {
            if l > u {
                out.push(Violation::MinExceedsMax {
                    paper: i,
                    min: l,
                    max: u,
                });
            }
        }
        let demand: usize = self.min_reviews.iter().sum();
        let supply: usize = self.capacity.iter().sum();
        if demand > supply {
            out.push(Violation::DemandExceedsCapacity {
                demand,
                capacity: supply,
            });
        }
        for (j, (&cap, &phi)) in self.capacity.iter().zip(&self.freedom).enumerate() {
            if cap == 0 {
                out.push(Violation::ZeroCapacity { reviewer: j });
            }
            if cap + phi > n {
                out.push(Violation::ProposalExceedsPapers {
                    reviewer: j,
                    proposal: cap + phi,
                    papers: n,
                });
            }
        }
        for i in 0..n {
            for j in 0..self.reviewers() {
                let q = self.quality.get(i, j);
                let e = self.effort.get(i, j);
                if !q.is_finite() {
                    out.push(Violation::NonFinite {
                        matrix: "W_E",
                        paper: i,
                        reviewer: j,
                    });
                } else if q < 0.0 {
                    out.push(Violation::NegativeQuality { paper: i, reviewer: j });
                }
                if !e.is_finite() {
                    out.push(Violation::NonFinite {
                        matrix: "W_R",
                        paper: i,
                        reviewer: j,
                    });
                } else if e <= 0.0 {
                    out.push(Violation::NonPositiveEffort { paper: i, reviewer: j });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Sufficient condition for a feasible triplet to exist:
    /// `max φ + 2·max U ≤ n`.
    pub fn theorem3_check(&self) -> bool {
        let max_phi = self.freedom.iter().copied().max().unwrap_or(0);
        let max_cap = self.capacity.iter().copied().max().unwrap_or(0);
        max_phi + 2 * max_cap <= self.papers()
    }

    /// Sufficient condition for the greedy heuristic to find a feasible
    /// assignment.
    ///
    /// With `K = max φ + max U` and `L = Σ l`, every paper must lie outside the
    /// picks of at least `L` reviewers. A reviewer's picks are the union of the
    /// `K` highest-quality papers in its `W_E` column and the `K` lowest-effort
    /// papers in its `W_R` column, both under the index tie rule.
    pub fn theorem4_check(&self) -> bool {
        let n = self.papers();
        let m = self.reviewers();
        let k = self.freedom.iter().copied().max().unwrap_or(0) + self.capacity.iter().copied().max().unwrap_or(0);
        let demand: usize = self.min_reviews.iter().sum();
        let mut outside = alloc::vec![0usize; n];
        for j in 0..m {
            let mut picked = alloc::vec![false; n];
            for i in largest_k(&self.quality.column(j), k) {
                picked[i] = true;
            }
            for i in smallest_k(&self.effort.column(j), k) {
                picked[i] = true;
            }
            for (count, p) in outside.iter_mut().zip(picked) {
                if !p {
                    *count += 1;
                }
            }
        }
        outside.iter().all(|&c| c >= demand)
    }
}

/// Indices of the `k` largest values; lower index wins ties. Result ascending.
pub fn largest_k(values: &[f64], k: usize) -> Vec<usize> {
    select_k(values, k, |a, b| b.total_cmp(a))
}

/// Indices of the `k` smallest values; lower index wins ties. Result ascending.
pub fn smallest_k(values: &[f64], k: usize) -> Vec<usize> {
    select_k(values, k, |a, b| a.total_cmp(b))
}

/// Same as [`smallest_k`], restricted to `candidates`.
pub fn smallest_k_among(values: &[f64], candidates: &[usize], k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = candidates.to_vec();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    order.truncate(k);
    order.sort_unstable();
    order
}

fn select_k(values: &[f64], k: usize, cmp: impl Fn(&f64, &f64) -> Ordering) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| cmp(&values[a], &values[b]).then(a.cmp(&b)));
    order.truncate(k);
    order.sort_unstable();
    order
}
