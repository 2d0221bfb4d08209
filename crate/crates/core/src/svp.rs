//! Penalty functionals over a reviewer partition and the small-`λ`
//! regularized matching problem they induce.
//!
//! For a partition `{B_k}` of the reviewers let `s_ik = Σ_{j∈B_k} w_ij X_ij` be
//! the weight paper `i` receives from block `k`. Then
//!
//! * `F_p(X) = Σ_i Σ_k s_ik^p` (weighted p-diversity; `F_2` is the weighted
//!   diversity, `F_1 = ⟨W, X⟩`),
//! * `C(X) = −Σ_i Σ_k s_ik ln s_ik` (entropy, `0 ln 0 = 0`),
//! * `D(X) = Σ_i Σ_k (Σ_{j∈B_k} X_ij)²` (unweighted diversity).

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::{EdgeMask, Matching, Matrix, Shaped};
use crate::oracle::{enumerate_feasible_matchings, EnumerationGuard};
use crate::solver::{objective_value, DegreeBounds};
use crate::{Error, Result};

/// Disjoint, non-empty reviewer blocks covering every reviewer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReviewerPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl ReviewerPartition {
    pub fn new(reviewers: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; reviewers];
        for (k, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidParameter("partition blocks must be non-empty"));
            }
            for &j in block {
                if j >= reviewers {
                    return Err(Error::InvalidParameter("partition names an unknown reviewer"));
                }
                if block_of[j] != usize::MAX {
                    return Err(Error::InvalidParameter("partition blocks overlap"));
                }
                block_of[j] = k;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::InvalidParameter("partition does not cover every reviewer"));
        }
        Ok(Self { blocks, block_of })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn reviewers(&self) -> usize {
        self.block_of.len()
    }

    /// `s_ik` for every paper and block, `n × K`.
    fn block_sums(&self, x: &Matching, weight: impl Fn(usize, usize) -> f64) -> Vec<Vec<f64>> {
        (0..x.rows())
            .map(|i| {
                self.blocks
                    .iter()
                    .map(|b| b.iter().filter(|&&j| x.get(i, j)).map(|&j| weight(i, j)).sum())
                    .collect()
            })
            .collect()
    }
}

fn check_dims(x: &Matching, w: Option<&Matrix>, part: &ReviewerPartition) -> Result<()> {
    if w.is_some_and(|w| w.shape() != x.shape()) || part.reviewers() != x.cols() {
        return Err(Error::Shape("matching, weights and partition disagree"));
    }
    Ok(())
}

/// `F_p(X)`; requires `p ≥ 1`.
pub fn weighted_p_diversity(x: &Matching, w: &Matrix, part: &ReviewerPartition, p: f64) -> Result<f64> {
    check_dims(x, Some(w), part)?;
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter("p must be at least 1"));
    }
    Ok(part
        .block_sums(x, |i, j| w.get(i, j))
        .iter()
        .flatten()
        .map(|&s| if s == 0.0 { 0.0 } else { libm::pow(s, p) })
        .sum())
}

/// `C(X)`, natural logarithm.
pub fn entropy_penalty(x: &Matching, w: &Matrix, part: &ReviewerPartition) -> Result<f64> {
    check_dims(x, Some(w), part)?;
    Ok(-part
        .block_sums(x, |i, j| w.get(i, j))
        .iter()
        .flatten()
        .map(|&s| if s == 0.0 { 0.0 } else { s * libm::log(s) })
        .sum::<f64>())
}

/// `D(X)`.
pub fn diversity(x: &Matching, part: &ReviewerPartition) -> Result<f64> {
    check_dims(x, None, part)?;
    Ok(part.block_sums(x, |_, _| 1.0).iter().flatten().map(|&c| c * c).sum())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Penalty {
    /// `F_2`.
    WeightedDiversity,
    Entropy,
    Diversity,
    PDiversity(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvpConfig {
    pub lambda: f64,
    pub penalty: Penalty,
}

impl SvpConfig {
    pub fn evaluate(&self, x: &Matching, w: &Matrix, part: &ReviewerPartition) -> Result<f64> {
        match self.penalty {
            Penalty::WeightedDiversity => weighted_p_diversity(x, w, part, 2.0),
            Penalty::Entropy => entropy_penalty(x, w, part),
            Penalty::Diversity => diversity(x, part),
            Penalty::PDiversity(p) => weighted_p_diversity(x, w, part, p),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvpResult {
    /// Every maximizer of `⟨W, X⟩ − λ·C(X)` over the feasible set.
    pub maximizers: Vec<Matching>,
    /// `max C − min C` over the feasible set.
    pub delta_c: f64,
    /// `1 / ΔC`, infinite when the penalty is constant.
    pub epsilon_bound: f64,
    /// Maximizers of `⟨W, X⟩` alone.
    pub linear_maximizers: Vec<Matching>,
}

fn ties(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

/// Enumerates every feasible matching and solves the penalized problem
/// exactly.
pub fn svp_enumerate(
    w: &Matrix,
    mask: &EdgeMask,
    bounds: &DegreeBounds,
    part: &ReviewerPartition,
    cfg: SvpConfig,
    guard: EnumerationGuard,
) -> Result<SvpResult> {
    if w.shape() != mask.shape() {
        return Err(Error::Shape("weights and mask differ in shape"));
    }
    let mut scored = Vec::new();
    for x in enumerate_feasible_matchings(bounds, mask, guard)? {
        let linear = objective_value(w, &x);
        let penalty = cfg.evaluate(&x, w, part)?;
        scored.push((x, linear, penalty));
    }
    if scored.is_empty() {
        return Err(Error::Infeasible);
    }
    let c_max = scored.iter().map(|s| s.2).fold(f64::NEG_INFINITY, f64::max);
    let c_min = scored.iter().map(|s| s.2).fold(f64::INFINITY, f64::min);
    let delta_c = c_max - c_min;
    let epsilon_bound = if delta_c > 0.0 { 1.0 / delta_c } else { f64::INFINITY };

    let best_pen = scored
        .iter()
        .map(|(_, l, c)| l - cfg.lambda * c)
        .fold(f64::NEG_INFINITY, f64::max);
    let best_lin = scored.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    let mut maximizers = Vec::new();
    let mut linear_maximizers = Vec::new();
    for (x, l, c) in scored {
        if ties(l - cfg.lambda * c, best_pen) {
            maximizers.push(x.clone());
        }
        if ties(l, best_lin) {
            linear_maximizers.push(x);
        }
    }
    Ok(SvpResult {
        maximizers,
        delta_c,
        epsilon_bound,
        linear_maximizers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_blocks() -> (Matrix, ReviewerPartition) {
        let w = Matrix::from_rows(&[[0.1, 0.1, 0.9], [0.5, 0.5, 0.5], [0.5, 0.5, 0.5]]).unwrap();
        let part = ReviewerPartition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        (w, part)
    }

    #[test]
    fn two_blocks_weighted_diversity() {
        let (w, part) = two_blocks();
        let same = Matching::from_edges(3, 3, &[(0, 0), (0, 1)]).unwrap();
        let split = Matching::from_edges(3, 3, &[(0, 0), (0, 2)]).unwrap();
        let f_same = weighted_p_diversity(&same, &w, &part, 2.0).unwrap();
        let f_split = weighted_p_diversity(&split, &w, &part, 2.0).unwrap();
        assert!((f_same - 0.04).abs() < 1e-15);
        assert!((f_split - 0.82).abs() < 1e-15);
        assert_eq!(diversity(&same, &part).unwrap(), 4.0);
        assert_eq!(diversity(&split, &part).unwrap(), 2.0);
    }

    #[test]
    fn unit_weights_one_block() {
        let part = ReviewerPartition::new(2, vec![vec![0, 1]]).unwrap();
        let x = Matching::full(1, 2);
        assert_eq!(
            weighted_p_diversity(&x, &Matrix::filled(1, 2, 1.0), &part, 2.0).unwrap(),
            4.0
        );
    }

    #[test]
    fn p_one_is_linear() {
        let (w, part) = two_blocks();
        let x = Matching::from_edges(3, 3, &[(0, 2), (1, 0), (2, 1)]).unwrap();
        assert_eq!(
            weighted_p_diversity(&x, &w, &part, 1.0).unwrap(),
            objective_value(&w, &x)
        );
    }

    #[test]
    fn entropy_cases() {
        let part = ReviewerPartition::new(2, vec![vec![0], vec![1]]).unwrap();
        let w = Matrix::filled(1, 2, 0.5);
        assert_eq!(entropy_penalty(&Matching::empty(1, 2), &w, &part).unwrap(), 0.0);
        let one = Matching::from_edges(1, 2, &[(0, 0)]).unwrap();
        assert_eq!(entropy_penalty(&one, &Matrix::filled(1, 2, 1.0), &part).unwrap(), 0.0);
        let h = entropy_penalty(&Matching::full(1, 2), &w, &part).unwrap();
        assert!((h - core::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn diversity_counts_matched_rows() {
        let part = ReviewerPartition::new(3, vec![vec![0, 2], vec![1]]).unwrap();
        let x = Matching::from_edges(4, 3, &[(0, 0), (1, 2), (3, 1)]).unwrap();
        assert_eq!(diversity(&x, &part).unwrap(), 3.0);
        assert_eq!(diversity(&Matching::empty(4, 3), &part).unwrap(), 0.0);
    }

    #[test]
    fn partition_validation() {
        assert!(ReviewerPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(ReviewerPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(ReviewerPartition::new(2, vec![vec![0, 1], vec![]]).is_err());
        assert!(ReviewerPartition::new(2, vec![vec![0, 5]]).is_err());
    }

    #[test]
    fn p_below_one_rejected() {
        let (w, part) = two_blocks();
        assert!(weighted_p_diversity(&Matching::empty(3, 3), &w, &part, 0.5).is_err());
    }
}
