//! Quality, effort and fairness of an assignment, and the ratios used to
//! compare two assignments.

use alloc::vec::Vec;
use log::warn;

use crate::instance::ProblemInstance;
use crate::matrix::{Matching, Matrix, Shaped};
use crate::solver::objective_value;
use crate::{Error, Result};

/// Per-assignment figures. Only reviewers with positive effort (active
/// reviewers) enter the average and the variance.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub quality: f64,
    /// `ρ_j`, one entry per reviewer.
    pub efforts: Vec<f64>,
    pub n_active: usize,
    pub total_effort: f64,
    pub avg_effort: f64,
    /// Population variance of the active reviewers' efforts.
    pub variance: f64,
}

impl MetricsReport {
    pub fn is_degenerate(&self) -> bool {
        self.n_active == 0
    }
}

pub fn reviewer_efforts(x: &Matching, effort: &Matrix) -> Vec<f64> {
    let mut rho = alloc::vec![0.0; x.cols()];
    for (i, j) in x.edges() {
        rho[j] += effort.get(i, j);
    }
    rho
}

fn active(x: &Matching, effort: &Matrix) -> Vec<f64> {
    reviewer_efforts(x, effort).into_iter().filter(|&r| r > 0.0).collect()
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

fn population_variance(values: &[f64]) -> f64 {
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
        (lo.min(v), hi.max(v))
    });
    if values.len() < 2 || lo == hi {
        return 0.0;
    }
    let mu = mean(values);
    values.iter().map(|&v| (v - mu) * (v - mu)).sum::<f64>() / values.len() as f64
}

/// Average effort of the active reviewers, `𝓔(X) / n_act(X)`.
pub fn average_effort(x: &Matching, effort: &Matrix) -> f64 {
    mean(&active(x, effort))
}

/// `θ(X)`.
pub fn effort_variance(x: &Matching, effort: &Matrix) -> f64 {
    population_variance(&active(x, effort))
}

pub fn compute_report(x: &Matching, inst: &ProblemInstance) -> Result<MetricsReport> {
    if x.shape() != inst.quality().shape() {
        return Err(Error::Shape("assignment and instance differ in shape"));
    }
    let efforts = reviewer_efforts(x, inst.effort());
    let act: Vec<f64> = efforts.iter().copied().filter(|&r| r > 0.0).collect();
    if act.is_empty() {
        warn!("metrics of an assignment with no active reviewer");
    }
    Ok(MetricsReport {
        quality: objective_value(inst.quality(), x),
        n_active: act.len(),
        total_effort: act.iter().sum(),
        avg_effort: mean(&act),
        variance: population_variance(&act),
        efforts,
    })
}

/// Quality percentage `𝒬(X) / 𝒬(X_ILP)`.
pub fn qp(x: &Matching, x_ilp: &Matching, quality: &Matrix) -> Result<f64> {
    let num = objective_value(quality, x);
    let den = objective_value(quality, x_ilp);
    if den == 0.0 {
        return if num == 0.0 {
            Ok(1.0)
        } else {
            Err(Error::DegenerateBaseline("baseline quality is zero"))
        };
    }
    Ok(num / den)
}

/// Reviewers' average effort ratio `𝓔_avg(X) / 𝓔_avg(X')`.
pub fn raer(x: &Matching, x_prime: &Matching, effort: &Matrix) -> Result<f64> {
    let den = average_effort(x_prime, effort);
    if den == 0.0 {
        return Err(Error::DegenerateBaseline("baseline has no active reviewer"));
    }
    Ok(average_effort(x, effort) / den)
}

/// Fairness ratio `θ(X) / θ(X')`.
pub fn fr(x: &Matching, x_prime: &Matching, effort: &Matrix) -> Result<f64> {
    let num = effort_variance(x, effort);
    let den = effort_variance(x_prime, effort);
    if den == 0.0 {
        return if num == 0.0 {
            Ok(1.0)
        } else {
            Err(Error::DegenerateBaseline("baseline effort variance is zero"))
        };
    }
    Ok(num / den)
}

/// Which assigned effort a paper must reach to count as a burden the reviewer
/// was spared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BurdenThreshold {
    /// At least the cheapest paper assigned to the reviewer.
    MinAssigned,
    /// At least the most expensive paper assigned to the reviewer. Under this
    /// reading an optimal assignment is weakly fair exactly when a perfect
    /// quality-maximal triplet exists.
    #[default]
    MaxAssigned,
}

/// Whether every reviewer `j` has at least `φ_j` unassigned papers at or above
/// the threshold effort. Reviewers without assignments count every paper.
pub fn is_phi_weakly_fair(
    x: &Matching,
    effort: &Matrix,
    freedom: &[usize],
    threshold: BurdenThreshold,
) -> Result<bool> {
    let (n, m) = x.shape();
    if effort.shape() != (n, m) || freedom.len() != m {
        return Err(Error::Shape("assignment, effort and phi disagree on n × m"));
    }
    Ok((0..m).all(|j| {
        let assigned: Vec<f64> = x.column_papers(j).into_iter().map(|i| effort.get(i, j)).collect();
        let spared = if assigned.is_empty() {
            n
        } else {
            let bar = match threshold {
                BurdenThreshold::MinAssigned => assigned.iter().copied().fold(f64::INFINITY, f64::min),
                BurdenThreshold::MaxAssigned => assigned.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            };
            (0..n).filter(|&i| !x.get(i, j) && effort.get(i, j) >= bar).count()
        };
        spared >= freedom[j]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn small_instance() -> ProblemInstance {
        let quality = Matrix::from_rows(&[[0.9, 0.2, 0.1], [0.8, 0.7, 0.2], [0.2, 0.9, 0.6], [0.1, 0.3, 0.8]]).unwrap();
        let effort = Matrix::from_rows(&[[1.0, 5.0, 5.0], [2.0, 1.0, 4.0], [5.0, 2.0, 1.0], [4.0, 4.0, 2.0]]).unwrap();
        ProblemInstance::uniform(1, 1, 2, 1, quality, effort).unwrap()
    }

    fn small_x() -> Matching {
        Matching::from_edges(4, 3, &[(0, 0), (1, 0), (2, 1), (3, 2)]).unwrap()
    }

    #[test]
    fn small_instance_report() {
        let r = compute_report(&small_x(), &small_instance()).unwrap();
        assert_eq!(r.efforts, vec![3.0, 2.0, 2.0]);
        assert_eq!(r.n_active, 3);
        assert!((r.avg_effort - 7.0 / 3.0).abs() < 1e-12);
        assert!((r.variance - 2.0 / 9.0).abs() < 1e-12);
        assert!((r.quality - 3.4).abs() < 1e-12);
    }

    #[test]
    fn empty_assignment_report() {
        let r = compute_report(&Matching::empty(4, 3), &small_instance()).unwrap();
        assert_eq!(r.quality, 0.0);
        assert_eq!(r.n_active, 0);
        assert_eq!(r.avg_effort, 0.0);
        assert_eq!(r.variance, 0.0);
        assert!(r.is_degenerate());
    }

    #[test]
    fn single_active_reviewer_has_zero_variance() {
        let x = Matching::from_edges(4, 3, &[(0, 0), (1, 0)]).unwrap();
        assert_eq!(compute_report(&x, &small_instance()).unwrap().variance, 0.0);
    }

    #[test]
    fn equal_efforts_have_exactly_zero_variance() {
        assert_eq!(population_variance(&[0.1, 0.1, 0.1]), 0.0);
    }

    #[test]
    fn ratio_identities() {
        let inst = small_instance();
        let x = small_x();
        assert_eq!(qp(&x, &x, inst.quality()).unwrap(), 1.0);
        assert_eq!(raer(&x, &x, inst.effort()).unwrap(), 1.0);
        assert_eq!(fr(&x, &x, inst.effort()).unwrap(), 1.0);
        let half = Matrix::from_fn(4, 3, |i, j| if (i, j) == (0, 0) { 2.0 } else { 1.0 });
        let a = Matching::from_edges(4, 3, &[(1, 1)]).unwrap();
        let b = Matching::from_edges(4, 3, &[(0, 0)]).unwrap();
        assert_eq!(qp(&a, &b, &half).unwrap(), 0.5);
        let doubled = inst.effort().map(|v| 2.0 * v);
        let other = Matching::from_edges(4, 3, &[(0, 1), (1, 1), (2, 2), (3, 0)]).unwrap();
        assert_eq!(
            raer(&x, &other, inst.effort()).unwrap(),
            raer(&x, &other, &doubled).unwrap()
        );
    }

    #[test]
    fn equal_efforts_vs_spread_baseline() {
        let inst = small_instance();
        // r2 gets p3 (2), r3 gets p4 (2): equal efforts.
        let flat = Matching::from_edges(4, 3, &[(2, 1), (3, 2)]).unwrap();
        assert_eq!(fr(&flat, &small_x(), inst.effort()).unwrap(), 0.0);
    }

    #[test]
    fn degenerate_baselines() {
        let inst = small_instance();
        let empty = Matching::empty(4, 3);
        assert_eq!(qp(&empty, &empty, inst.quality()).unwrap(), 1.0);
        assert!(qp(&small_x(), &empty, inst.quality()).is_err());
        assert!(raer(&small_x(), &empty, inst.effort()).is_err());
        let single = Matching::from_edges(4, 3, &[(0, 0)]).unwrap();
        assert!(fr(&small_x(), &single, inst.effort()).is_err());
        assert_eq!(fr(&single, &single, inst.effort()).unwrap(), 1.0);
    }

    #[test]
    fn weak_fairness_cases() {
        let inst = small_instance();
        for t in [BurdenThreshold::MinAssigned, BurdenThreshold::MaxAssigned] {
            assert!(is_phi_weakly_fair(&small_x(), inst.effort(), &[0, 0, 0], t).unwrap());
            assert!(is_phi_weakly_fair(&small_x(), inst.effort(), &[1, 1, 1], t).unwrap());
        }
        // 3 papers, r1 receives only its most expensive paper, φ_1 = n − U_1 = 1.
        let effort = Matrix::from_rows(&[[11.0, 3.0], [10.0, 2.0], [1.0, 1.0]]).unwrap();
        let x = Matching::from_edges(3, 2, &[(0, 0), (1, 1), (2, 1)]).unwrap();
        for t in [BurdenThreshold::MinAssigned, BurdenThreshold::MaxAssigned] {
            assert!(!is_phi_weakly_fair(&x, &effort, &[1, 1], t).unwrap());
        }
    }

    #[test]
    fn readings_differ() {
        // r1 holds papers with efforts 1 and 5; one free paper costs 3.
        let effort = Matrix::from_rows(&[[1.0], [5.0], [3.0]]).unwrap();
        let x = Matching::from_edges(3, 1, &[(0, 0), (1, 0)]).unwrap();
        assert!(is_phi_weakly_fair(&x, &effort, &[1], BurdenThreshold::MinAssigned).unwrap());
        assert!(!is_phi_weakly_fair(&x, &effort, &[1], BurdenThreshold::MaxAssigned).unwrap());
    }
}
