//! Exhaustive ground truth for tiny instances.
//!
//! Nothing here calls the flow solver, the bid selection or the heuristic:
//! feasible matchings, follower responses and bilevel optima are all found by
//! plain enumeration so they can serve as independent checks.

use alloc::vec;
use alloc::vec::Vec;

use crate::heuristic::BpTriplet;
use crate::instance::ProblemInstance;
use crate::matrix::{EdgeMask, Matching, Matrix, Shaped};
use crate::solver::{DegreeBounds, WeightObjective};
use crate::{Error, Result};

/// Upper bound on how many candidates any single enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationGuard {
    pub max_candidates: u64,
}

impl Default for EnumerationGuard {
    fn default() -> Self {
        Self {
            max_candidates: 1_000_000,
        }
    }
}

impl EnumerationGuard {
    fn check(&self, candidates: u128) -> Result<()> {
        if candidates > self.max_candidates as u128 {
            Err(Error::EnumerationLimit {
                candidates,
                limit: self.max_candidates,
            })
        } else {
            Ok(())
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// All `k`-subsets of `items`, each in the order of `items`.
pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let needed = k - cur.len();
        for idx in start..items.len() {
            if items.len() - idx < needed {
                break;
            }
            cur.push(items[idx]);
            rec(items, k, idx + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        rec(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Iterator over every binary matrix that satisfies the degree bounds and the
/// mask. Each paper's row ranges over all subsets of its permitted reviewers
/// with a size in `[l_i, u_i]`; rows are combined odometer-style and
/// candidates breaking a reviewer capacity are skipped.
#[derive(Debug, Clone)]
pub struct FeasibleMatchings {
    rows: usize,
    cols: usize,
    options: Vec<Vec<Vec<usize>>>,
    capacity: Vec<usize>,
    cursor: Vec<usize>,
    done: bool,
}

impl Iterator for FeasibleMatchings {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        while !self.done {
            let mut load = vec![0usize; self.cols];
            let mut ok = true;
            for (row, &c) in self.options.iter().zip(&self.cursor) {
                for &j in &row[c] {
                    load[j] += 1;
                    if load[j] > self.capacity[j] {
                        ok = false;
                    }
                }
            }
            let candidate = ok.then(|| {
                let mut x = Matching::empty(self.rows, self.cols);
                for (i, (row, &c)) in self.options.iter().zip(&self.cursor).enumerate() {
                    for &j in &row[c] {
                        x.set(i, j, true);
                    }
                }
                x
            });
            self.advance();
            if candidate.is_some() {
                return candidate;
            }
        }
        None
    }
}

impl FeasibleMatchings {
    fn advance(&mut self) {
        for i in (0..self.rows).rev() {
            self.cursor[i] += 1;
            if self.cursor[i] < self.options[i].len() {
                return;
            }
            self.cursor[i] = 0;
        }
        self.done = true;
    }
}

pub fn enumerate_feasible_matchings(
    bounds: &DegreeBounds,
    mask: &EdgeMask,
    guard: EnumerationGuard,
) -> Result<FeasibleMatchings> {
    let (n, m) = (bounds.papers(), bounds.reviewers());
    if mask.shape() != (n, m) {
        return Err(Error::Shape("mask and bounds disagree on n × m"));
    }
    let mut product: u128 = 1;
    let mut allowed_per_paper = Vec::with_capacity(n);
    for i in 0..n {
        let allowed: Vec<usize> = (0..m).filter(|&j| mask.allows(i, j)).collect();
        let hi = bounds.max_reviews[i].min(allowed.len());
        let count: u128 = (bounds.min_reviews[i]..=hi).map(|s| binomial(allowed.len(), s)).sum();
        product = product.saturating_mul(count);
        allowed_per_paper.push(allowed);
    }
    guard.check(product)?;

    let options: Vec<Vec<Vec<usize>>> = allowed_per_paper
        .iter()
        .enumerate()
        .map(|(i, allowed)| {
            let hi = bounds.max_reviews[i].min(allowed.len());
            (bounds.min_reviews[i]..=hi)
                .flat_map(|s| combinations(allowed, s))
                .collect()
        })
        .collect();
    let done = product == 0;
    Ok(FeasibleMatchings {
        rows: n,
        cols: m,
        options,
        capacity: bounds.capacity.clone(),
        cursor: vec![0; n],
        done,
    })
}

/// Best matching under `round(W · scale)` by enumeration, with its scaled
/// value. `None` when nothing is feasible.
pub fn brute_force_best_matching(
    obj: &WeightObjective,
    mask: &EdgeMask,
    bounds: &DegreeBounds,
    guard: EnumerationGuard,
) -> Result<Option<(Matching, i64)>> {
    let scale = obj.cost_scale() as f64;
    let w = obj.weights();
    let mut best: Option<(Matching, i64)> = None;
    for x in enumerate_feasible_matchings(bounds, mask, guard)? {
        let value: i64 = x.edges().map(|(i, j)| libm::rint(w.get(i, j) * scale) as i64).sum();
        if best.as_ref().is_none_or(|(_, b)| value > *b) {
            best = Some((x, value));
        }
    }
    Ok(best)
}

fn nearly_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
}

/// Every effort-minimal bid of `capacity` papers from `proposed`, found by
/// trying all subsets. More than one bid is returned only under ties.
pub fn all_optimal_bids(proposed: &[usize], effort: &[f64], capacity: usize) -> Vec<Vec<usize>> {
    let subsets = combinations(proposed, capacity);
    let cost = |s: &Vec<usize>| s.iter().map(|&i| effort[i]).sum::<f64>();
    let best = subsets.iter().map(cost).fold(f64::INFINITY, f64::min);
    subsets.into_iter().filter(|s| nearly_equal(cost(s), best)).collect()
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for o in options {
                let mut p = prefix.clone();
                p.push(o.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn matching_from_columns(n: usize, columns: &[Vec<usize>]) -> Matching {
    let mut x = Matching::empty(n, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for &i in col {
            x.set(i, j, true);
        }
    }
    x
}

/// Every admissible proposal `Z` (column sums `U_j + φ_j`) paired with every
/// optimal follower response `Y`.
pub fn proposal_bid_pairs(inst: &ProblemInstance, guard: EnumerationGuard) -> Result<Vec<(Matching, Matching)>> {
    let n = inst.papers();
    let m = inst.reviewers();
    let space = (0..m).fold(1u128, |acc, j| {
        acc.saturating_mul(binomial(n, inst.capacity()[j] + inst.freedom()[j]))
    });
    guard.check(space)?;
    let papers: Vec<usize> = (0..n).collect();
    let per_column: Vec<Vec<Vec<usize>>> = (0..m)
        .map(|j| combinations(&papers, inst.capacity()[j] + inst.freedom()[j]))
        .collect();
    let mut pairs = Vec::new();
    for z_cols in cartesian(&per_column) {
        let bid_choices: Vec<Vec<Vec<usize>>> = z_cols
            .iter()
            .enumerate()
            .map(|(j, col)| all_optimal_bids(col, &inst.effort().column(j), inst.capacity()[j]))
            .collect();
        let z = matching_from_columns(n, &z_cols);
        for y_cols in cartesian(&bid_choices) {
            pairs.push((z.clone(), matching_from_columns(n, &y_cols)));
        }
    }
    Ok(pairs)
}

/// Calls `visit` with every feasible triplet `(Z, Y, X)`.
pub fn for_each_feasible_triplet(
    inst: &ProblemInstance,
    guard: EnumerationGuard,
    mut visit: impl FnMut(&Matching, &Matching, &Matching),
) -> Result<()> {
    let bounds = DegreeBounds::of(inst);
    for (z, y) in proposal_bid_pairs(inst, guard)? {
        let mask = EdgeMask::consistency(&z, &y)?;
        for x in enumerate_feasible_matchings(&bounds, &mask, guard)? {
            visit(&z, &y, &x);
        }
    }
    Ok(())
}

fn plain_sum(w: &Matrix, x: &Matching) -> f64 {
    let mut s = 0.0;
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            if x.get(i, j) {
                s += w.get(i, j);
            }
        }
    }
    s
}

/// Exact bilevel optimum by enumerating every proposal, every optimal bid and
/// every feasible assignment. Under bid ties the response most favourable to
/// the editor counts. `None` when no triplet is feasible.
pub fn brute_force_bp_optimum(inst: &ProblemInstance, guard: EnumerationGuard) -> Result<Option<BpTriplet>> {
    let mut best: Option<(f64, Matching, Matching, Matching)> = None;
    for_each_feasible_triplet(inst, guard, |z, y, x| {
        let value = plain_sum(inst.quality(), x) + x.overlap(y) as f64;
        if best.as_ref().is_none_or(|(b, ..)| value > *b + 1e-12) {
            best = Some((value, x.clone(), y.clone(), z.clone()));
        }
    })?;
    Ok(best.map(|(_, x, y, z)| BpTriplet::new(inst, x, y, z)))
}

/// Whether at least one feasible triplet exists.
pub fn bp_feasible(inst: &ProblemInstance, guard: EnumerationGuard) -> Result<bool> {
    let bounds = DegreeBounds::of(inst);
    for (z, y) in proposal_bid_pairs(inst, guard)? {
        let mask = EdgeMask::consistency(&z, &y)?;
        if enumerate_feasible_matchings(&bounds, &mask, guard)?.next().is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}
