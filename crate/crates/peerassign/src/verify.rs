//! Randomized checks of the solver, heuristic and penalty functionals
//! against exhaustive enumeration.
//!
//! Every check draws its instances from a seeded ChaCha stream, so a report
//! can be reproduced from `(cases, seed)` alone.

use std::time::{Duration, Instant};

use peerassign_core::lower_level::bid_reviewer;
use peerassign_core::oracle::{
    bp_feasible, brute_force_best_matching, brute_force_bp_optimum, combinations, for_each_feasible_triplet,
    EnumerationGuard,
};
use peerassign_core::solver::{objective_value, solve_bmatching, WeightObjective};
use peerassign_core::svp::{diversity, svp_enumerate, weighted_p_diversity, Penalty, ReviewerPartition, SvpConfig};
use peerassign_core::{
    heuristic_solve, solve_pure_quality, solve_without_freedom, DegreeBounds, EdgeMask, Error, Matching, Matrix,
    ProblemInstance,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const GUARD: EnumerationGuard = EnumerationGuard {
    max_candidates: 1_000_000,
};

/// Upper bound on rejected draws per accepted case.
const MAX_REJECTS: usize = 1000;

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl CheckReport {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.cases > 0 && self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 10 {
            self.failures.push(msg);
        } else if self.failures.len() == 10 {
            self.failures.push("further failures omitted".into());
        }
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sum of `round(1000 · w)` over the edges; exact for 3-decimal weights.
fn milli_value(w: &Matrix, x: &Matching) -> i64 {
    x.edges().map(|(i, j)| (w.get(i, j) * 1000.0).round() as i64).sum()
}

fn thousandths(rng: &mut ChaCha8Rng, n: usize, m: usize, lo: i32, hi: i32) -> Matrix {
    Matrix::from_fn(n, m, |_, _| f64::from(rng.random_range(lo..=hi)) / 1000.0)
}

/// Random degree-bounded problem with 3-decimal weights in `[-1, 1]` and a
/// random mask.
fn tiny_problem(rng: &mut ChaCha8Rng) -> (Matrix, EdgeMask, DegreeBounds) {
    let n = rng.random_range(1..=5);
    let m = rng.random_range(1..=3);
    let w = thousandths(rng, n, m, -1000, 1000);
    let mut mask = Matching::empty(n, m);
    for i in 0..n {
        for j in 0..m {
            mask.set(i, j, rng.random_bool(0.8));
        }
    }
    let (l, u): (Vec<usize>, Vec<usize>) = (0..n)
        .map(|_| {
            let (a, b) = (rng.random_range(0..=2), rng.random_range(0..=2));
            (a.min(b), a.max(b))
        })
        .unzip();
    let caps = (0..m).map(|_| rng.random_range(0..=2)).collect();
    let bounds = DegreeBounds::new(l, u, caps).expect("shapes agree");
    (w, EdgeMask::from_matching(mask), bounds)
}

/// The flow solver's optimum equals the best enumerated matching, compared
/// as integers at scale 1000.
pub fn solver_vs_enumeration(cases: usize, seed: u64) -> CheckReport {
    let start = Instant::now();
    let mut report = CheckReport::new("solver vs enumeration");
    let mut rng = rng(seed);
    let mut feasible = 0;
    for case in 0..cases {
        let (w, mask, bounds) = tiny_problem(&mut rng);
        let obj = WeightObjective::with_cost_scale(w.clone(), 1000).expect("positive scale");
        let brute = match brute_force_best_matching(&obj, &mask, &bounds, GUARD) {
            Ok(b) => b.map(|(_, v)| v),
            Err(e) => {
                report.fail(format!("case {case}: enumeration failed: {e}"));
                continue;
            }
        };
        let solved = match solve_bmatching(&obj, &mask, &bounds) {
            Ok(x) if bounds.admits(&x) && x.is_subset_of(mask.as_matching()) => Some(milli_value(&w, &x)),
            Ok(_) => {
                report.fail(format!("case {case}: solver returned an inadmissible matching"));
                continue;
            }
            Err(Error::Infeasible) => None,
            Err(e) => {
                report.fail(format!("case {case}: solver failed: {e}"));
                continue;
            }
        };
        if solved != brute {
            report.fail(format!("case {case}: solver {solved:?} vs enumeration {brute:?}"));
        }
        feasible += usize::from(brute.is_some());
        report.cases += 1;
    }
    report.notes.push(format!("{feasible} of {} feasible", report.cases));
    report.timed(start)
}

/// Instance with `φ = 0` and `l_i = u_i`, sized up to 30 × 10.
fn zero_freedom_instance(rng: &mut ChaCha8Rng) -> Option<ProblemInstance> {
    let n = rng.random_range(5..=30);
    let m = rng.random_range(2..=10);
    let b = rng.random_range(1..=2usize.min(m));
    let demand = n * b;
    let base = demand.div_ceil(m);
    let caps: Vec<usize> = (0..m).map(|_| (base + rng.random_range(0..=2)).min(n)).collect();
    let q = thousandths(rng, n, m, 0, 1000);
    let e = Matrix::from_fn(n, m, |_, _| f64::from(rng.random_range(1..=1000)) / 100.0);
    let inst = ProblemInstance::new(vec![b; n], vec![b; n], caps, vec![0; m], q, e).ok()?;
    inst.is_valid().then_some(inst)
}

/// Without freedom the exact bilevel solution reaches the classic optimum
/// quality with full accordance.
pub fn zero_freedom(cases: usize, seed: u64) -> CheckReport {
    let start = Instant::now();
    let mut report = CheckReport::new("zero freedom matches the classic optimum");
    let mut rng = rng(seed);
    let mut heuristic_misses = 0;
    let mut rejects = 0;
    while report.cases < cases {
        let Some(inst) = zero_freedom_instance(&mut rng) else {
            rejects += 1;
            if rejects > MAX_REJECTS * cases {
                report.fail("generator rarely produces valid instances".into());
                break;
            }
            continue;
        };
        let case = report.cases;
        report.cases += 1;
        let ilp = match solve_pure_quality(&inst) {
            Ok(x) => x,
            Err(e) => {
                report.fail(format!("case {case}: classic problem failed: {e}"));
                continue;
            }
        };
        let target = milli_value(inst.quality(), &ilp);
        match solve_without_freedom(&inst) {
            Ok(out) => match out.triplet() {
                Some(t) => {
                    let got = milli_value(inst.quality(), &t.x);
                    if got != target || t.accordance != 1.0 || !t.is_consistent(&inst) {
                        report.fail(format!(
                            "case {case}: quality {got} vs {target} (x1000), AC {}",
                            t.accordance
                        ));
                    }
                }
                None => report.fail(format!(
                    "case {case}: infeasible although the classic problem is feasible"
                )),
            },
            Err(e) => report.fail(format!("case {case}: {e}")),
        }
        let h = heuristic_solve(&inst).ok().and_then(|o| o.triplet().cloned());
        if h.is_none_or(|t| milli_value(inst.quality(), &t.x) != target || t.accordance != 1.0) {
            heuristic_misses += 1;
        }
    }
    report.notes.push(format!(
        "greedy heuristic reached the optimum with AC = 1 in {} of {} cases",
        report.cases - heuristic_misses,
        report.cases
    ));
    report.timed(start)
}

/// Tiny instance whose efforts are a permutation of `1..=n` in every column.
fn tie_free_instance(rng: &mut ChaCha8Rng, fixed_load: bool) -> Option<ProblemInstance> {
    let n = rng.random_range(2..=5);
    let m = rng.random_range(1..=3);
    let q = thousandths(rng, n, m, 0, 1000);
    let mut e = Matrix::zeros(n, m);
    for j in 0..m {
        let mut col: Vec<usize> = (1..=n).collect();
        col.shuffle(rng);
        for (i, v) in col.into_iter().enumerate() {
            e.set(i, j, v as f64);
        }
    }
    let (l, u): (Vec<usize>, Vec<usize>) = (0..n)
        .map(|_| {
            let (a, b) = (rng.random_range(0..=1), rng.random_range(1..=2));
            if fixed_load {
                (b, b)
            } else {
                (a.min(b), a.max(b))
            }
        })
        .unzip();
    let caps: Vec<usize> = (0..m).map(|_| rng.random_range(1..=2usize.min(n))).collect();
    let phis = caps.iter().map(|&c| rng.random_range(0..=2usize).min(n - c)).collect();
    let inst = ProblemInstance::new(l, u, caps, phis, q, e).ok()?;
    inst.is_valid().then_some(inst)
}

/// Best objective over all feasible triplets and the lowest quality among
/// the triplets attaining it.
pub fn bp_optimum_summary(inst: &ProblemInstance) -> Result<Option<(f64, f64)>, Error> {
    let mut best: Option<(f64, f64)> = None;
    for_each_feasible_triplet(inst, GUARD, |_, y, x| {
        let q = objective_value(inst.quality(), x);
        let v = q + x.overlap(y) as f64;
        best = match best {
            None => Some((v, q)),
            Some((b, _)) if v > b + 1e-9 => Some((v, q)),
            Some((b, bq)) if (v - b).abs() <= 1e-9 => Some((b, bq.min(q))),
            keep => keep,
        };
    })?;
    Ok(best)
}

/// The heuristic's bilevel objective never exceeds the enumerated optimum,
/// and when it reaches full accordance its quality is at most the optimum's.
/// The quality bound is checked on instances with `l_i = u_i`.
pub fn heuristic_bounds(cases: usize, seed: u64) -> CheckReport {
    let start = Instant::now();
    let mut report = CheckReport::new("heuristic bounded by the bilevel optimum");
    let mut rng = rng(seed);
    let mut perfect = 0;
    let mut rejects = 0;
    for fixed_load in [true, false] {
        let mut done = 0;
        while done < cases {
            let Some(inst) = tie_free_instance(&mut rng, fixed_load) else {
                rejects += 1;
                if rejects > MAX_REJECTS * cases {
                    report.fail("generator rarely produces valid instances".into());
                    return report.timed(start);
                }
                continue;
            };
            let outcome = match heuristic_solve(&inst) {
                Ok(o) => o,
                Err(e) => {
                    report.fail(format!("heuristic failed: {e}"));
                    continue;
                }
            };
            let Some(t) = outcome.triplet() else { continue };
            done += 1;
            report.cases += 1;
            let summary = match bp_optimum_summary(&inst) {
                Ok(Some(s)) => s,
                Ok(None) => {
                    report.fail(format!("oracle finds no triplet but the heuristic does: {inst:?}"));
                    continue;
                }
                Err(e) => {
                    report.fail(format!("oracle failed: {e}"));
                    continue;
                }
            };
            let (best, worst_optimal_quality) = summary;
            if !t.is_consistent(&inst) || t.bp_objective > best + 1e-9 {
                report.fail(format!("objective {} above optimum {best}: {inst:?}", t.bp_objective));
            }
            if fixed_load && t.accordance == 1.0 {
                perfect += 1;
                if t.quality(&inst) > worst_optimal_quality + 1e-9 {
                    report.fail(format!(
                        "quality {} above optimum quality {worst_optimal_quality}: {inst:?}",
                        t.quality(&inst)
                    ));
                }
            }
        }
    }
    report.notes.push(format!("{perfect} fixed-load cases with AC = 1"));
    report.timed(start)
}

fn capacity_condition_instance(rng: &mut ChaCha8Rng) -> Option<ProblemInstance> {
    let n = rng.random_range(3..=6);
    let m = rng.random_range(1..=3);
    let cap_max = rng.random_range(1..=n / 2);
    let phi_max = rng.random_range(0..=n - 2 * cap_max);
    let caps: Vec<usize> = (0..m).map(|_| rng.random_range(1..=cap_max)).collect();
    let phis: Vec<usize> = (0..m).map(|_| rng.random_range(0..=phi_max)).collect();
    let l: Vec<usize> = (0..n).map(|_| rng.random_range(0..=1)).collect();
    let q = thousandths(rng, n, m, 0, 1000);
    let e = Matrix::from_fn(n, m, |_, _| f64::from(rng.random_range(1..=1000)) / 100.0);
    let inst = ProblemInstance::new(l, vec![1; n], caps, phis, q, e).ok()?;
    (inst.is_valid() && inst.theorem3_check() && solve_pure_quality(&inst).is_ok()).then_some(inst)
}

/// Instances meeting `max φ + 2·max U ≤ n` (with `u_i = 1` and a feasible
/// classic problem) always admit a feasible triplet.
pub fn capacity_condition(cases: usize, seed: u64) -> CheckReport {
    let start = Instant::now();
    let mut report = CheckReport::new("capacity condition gives a feasible triplet");
    let mut rng = rng(seed);
    let mut rejects = 0;
    while report.cases < cases {
        let Some(inst) = capacity_condition_instance(&mut rng) else {
            rejects += 1;
            if rejects > MAX_REJECTS * cases {
                report.fail("generator rarely meets the hypothesis".into());
                break;
            }
            continue;
        };
        report.cases += 1;
        match bp_feasible(&inst, GUARD) {
            Ok(true) => {}
            Ok(false) => report.fail(format!("no feasible triplet: {inst:?}")),
            Err(e) => report.fail(format!("oracle failed: {e}")),
        }
    }
    report.timed(start)
}

/// Instances passing the outside-the-picks count are solved by the heuristic.
pub fn coverage_condition(cases: usize, seed: u64) -> CheckReport {
    let start = Instant::now();
    let mut report = CheckReport::new("coverage condition gives heuristic feasibility");
    let mut rng = rng(seed);
    let mut rejects = 0;
    while report.cases < cases {
        let n = rng.random_range(4..=10);
        let l: Vec<usize> = (0..n).map(|_| rng.random_range(0..=1)).collect();
        let demand: usize = l.iter().sum();
        let m = demand + rng.random_range(demand..=3 * demand + 5);
        let cap = rng.random_range(1..=2);
        let phi = rng.random_range(0..=2);
        let q = Matrix::from_fn(n, m, |_, _| rng.random::<f64>());
        let e = Matrix::from_fn(n, m, |_, _| rng.random::<f64>() + 0.01);
        let u: Vec<usize> = l.iter().map(|&x| x + rng.random_range(0..=1)).collect();
        let inst = match ProblemInstance::new(l, u, vec![cap; m], vec![phi; m], q, e) {
            Ok(inst) if inst.is_valid() && inst.theorem4_check() => inst,
            _ => {
                rejects += 1;
                if rejects > MAX_REJECTS * cases {
                    report.fail("generator rarely meets the hypothesis".into());
                    break;
                }
                continue;
            }
        };
        report.cases += 1;
        match heuristic_solve(&inst) {
            Ok(o) if o.is_feasible() => {}
            Ok(_) => report.fail(format!("heuristic infeasible: {inst:?}")),
            Err(e) => report.fail(format!("heuristic failed: {e}")),
        }
    }
    report.timed(start)
}

/// Point of `[0, 1]^b` summing to `a`.
fn fractional_point(rng: &mut ChaCha8Rng, b: usize, a: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..b).map(|_| rng.random::<f64>() + 1e-9).collect();
    let total: f64 = raw.iter().sum();
    let mut x: Vec<f64> = raw.iter().map(|v| v * a as f64 / total).collect();
    loop {
        let excess: f64 = x.iter().map(|v| (v - 1.0).max(0.0)).sum();
        if excess <= 0.0 {
            return x;
        }
        for v in x.iter_mut() {
            *v = v.min(1.0);
        }
        let slack: f64 = x.iter().map(|v| 1.0 - v).sum();
        for v in x.iter_mut() {
            *v += (1.0 - *v) / slack * excess;
        }
    }
}

/// Fractional selections never beat the cheapest `a` items, and the bid
/// selection equals the best subset found by enumeration.
pub fn bid_selection(samples: usize, seed: u64) -> CheckReport {
    let start = Instant::now();
    let mut report = CheckReport::new("bid selection is effort-minimal");
    let mut rng = rng(seed);
    for s in 0..samples {
        let b = rng.random_range(2..=12);
        let a = rng.random_range(1..b);
        let mut w: Vec<f64> = (0..b).map(|_| rng.random_range(0.01..10.0)).collect();
        w.sort_by(f64::total_cmp);
        let x = fractional_point(&mut rng, b, a);
        let prefix: f64 = w[..a].iter().sum();
        let mixed: f64 = w.iter().zip(&x).map(|(wi, xi)| wi * xi).sum();
        if prefix > mixed + 1e-12 {
            report.fail(format!("sample {s}: prefix {prefix} above fractional {mixed}"));
        }
        report.cases += 1;
    }
    for s in 0..samples {
        let n = rng.random_range(1..=10);
        let proposal: Vec<bool> = (0..n).map(|_| rng.random_bool(0.6)).collect();
        let effort: Vec<f64> = (0..n).map(|_| f64::from(rng.random_range(1..=20))).collect();
        let proposed: Vec<usize> = (0..n).filter(|&i| proposal[i]).collect();
        let cap = rng.random_range(0..=proposed.len().min(3));
        let best = combinations(&proposed, cap)
            .iter()
            .map(|c| c.iter().map(|&i| effort[i]).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        match bid_reviewer(&proposal, &effort, cap) {
            Ok(bid)
                if bid.effort_total == best
                    && bid.selected.len() == cap
                    && bid.selected.iter().all(|&i| proposal[i]) => {}
            Ok(bid) => report.fail(format!(
                "column {s}: bid effort {} vs subset minimum {best}",
                bid.effort_total
            )),
            Err(e) => report.fail(format!("column {s}: {e}")),
        }
        report.cases += 1;
    }
    report.timed(start)
}

/// Three papers, two reviewers, `W_R` columns (11, 10, 1) and (3, 2, 1).
pub fn three_papers_instance(capacity: Vec<usize>) -> ProblemInstance {
    let effort = Matrix::from_rows(&[[11.0, 3.0], [10.0, 2.0], [1.0, 1.0]]).expect("rectangular");
    let quality = Matrix::from_rows(&[[0.9, 0.9], [0.5, 0.5], [0.1, 0.1]]).expect("rectangular");
    ProblemInstance::new(vec![1; 3], vec![1; 3], capacity, vec![1, 1], quality, effort).expect("valid shapes")
}

pub fn three_papers() -> CheckReport {
    let start = Instant::now();
    let mut report = CheckReport::new("three-paper example");
    let tight = three_papers_instance(vec![2, 2]);
    match heuristic_solve(&tight) {
        Ok(o) if !o.is_feasible() => {}
        Ok(_) => report.fail("heuristic feasible with U = (2, 2)".into()),
        Err(e) => report.fail(format!("heuristic failed: {e}")),
    }
    match brute_force_bp_optimum(&tight, GUARD) {
        Ok(None) => {}
        Ok(Some(_)) => report.fail("oracle feasible with U = (2, 2)".into()),
        Err(e) => report.fail(format!("oracle failed: {e}")),
    }
    let relaxed = three_papers_instance(vec![2, 1]);
    match brute_force_bp_optimum(&relaxed, GUARD) {
        Ok(Some(t)) if t.is_consistent(&relaxed) => {}
        Ok(_) => report.fail("no feasible triplet with U = (2, 1)".into()),
        Err(e) => report.fail(format!("oracle failed: {e}")),
    }
    report.cases = 3;
    report.timed(start)
}

fn random_partition(rng: &mut ChaCha8Rng, m: usize) -> ReviewerPartition {
    let labels: Vec<usize> = (0..m).map(|_| rng.random_range(0..m)).collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for (j, &label) in labels.iter().enumerate() {
        match seen.iter().position(|&s| s == label) {
            Some(k) => blocks[k].push(j),
            None => {
                seen.push(label);
                blocks.push(vec![j]);
            }
        }
    }
    ReviewerPartition::new(m, blocks).expect("labels cover every reviewer")
}

fn penalized_case(
    report: &mut CheckReport,
    w: &Matrix,
    bounds: &DegreeBounds,
    part: &ReviewerPartition,
    penalty: Penalty,
) -> bool {
    let mask = EdgeMask::full(w.rows(), w.cols());
    let probe = SvpConfig { lambda: 0.0, penalty };
    let Ok(base) = svp_enumerate(w, &mask, bounds, part, probe, GUARD) else {
        return false;
    };
    let lambda = if base.delta_c > 0.0 { 0.9 / base.delta_c } else { 1.0 };
    let cfg = SvpConfig { lambda, penalty };
    let res = match svp_enumerate(w, &mask, bounds, part, cfg, GUARD) {
        Ok(r) => r,
        Err(e) => {
            report.fail(format!("{penalty:?}: {e}"));
            return true;
        }
    };
    let c_of = |x: &Matching| cfg.evaluate(x, w, part).expect("shapes agree");
    let c_min = res.linear_maximizers.iter().map(c_of).fold(f64::INFINITY, f64::min);
    let mut expected: Vec<Matching> = res
        .linear_maximizers
        .iter()
        .filter(|x| (c_of(x) - c_min).abs() <= 1e-9 * (1.0 + c_min.abs()))
        .cloned()
        .collect();
    let mut got = res.maximizers.clone();
    expected.sort();
    got.sort();
    if got != expected {
        report.fail(format!(
            "{penalty:?} lambda {lambda}: maximizers differ from the least-penalty linear maximizers"
        ));
    }
    true
}

/// Penalty functionals: `F_1` equals the linear objective, the two-partition
/// example, and small penalties only break ties among linear maximizers.
pub fn diversity_penalties(cases: usize, seed: u64) -> CheckReport {
    let start = Instant::now();
    let mut report = CheckReport::new("diversity penalties");
    let mut rng = rng(seed);

    let w = Matrix::from_rows(&[[0.1, 0.1, 0.9], [0.5, 0.5, 0.5], [0.5, 0.5, 0.5]]).expect("rectangular");
    let part = ReviewerPartition::new(3, vec![vec![0, 1], vec![2]]).expect("partition");
    let same = Matching::from_edges(3, 3, &[(0, 0), (0, 1)]).expect("in range");
    let split = Matching::from_edges(3, 3, &[(0, 0), (0, 2)]).expect("in range");
    let observed = [
        weighted_p_diversity(&same, &w, &part, 2.0),
        weighted_p_diversity(&split, &w, &part, 2.0),
        diversity(&same, &part),
        diversity(&split, &part),
    ];
    let expected = [0.2f64 * 0.2, 0.1f64 * 0.1 + 0.9 * 0.9, 4.0, 2.0];
    for (k, (got, want)) in observed.iter().zip(expected).enumerate() {
        if got.as_ref().ok() != Some(&want) {
            report.fail(format!("two-partition example value {k}: {got:?} vs {want}"));
        }
    }
    if (expected[0] - 0.04).abs() > 1e-15 || (expected[1] - 0.82).abs() > 1e-15 {
        report.fail("two-partition example constants".into());
    }
    report.cases += 1;

    for c in 0..cases {
        let (n, m) = (rng.random_range(1..=6), rng.random_range(1..=5));
        let w = Matrix::from_fn(n, m, |_, _| f64::from(rng.random_range(0..=1024)) / 1024.0);
        let mut x = Matching::empty(n, m);
        for i in 0..n {
            for j in 0..m {
                x.set(i, j, rng.random_bool(0.5));
            }
        }
        let part = random_partition(&mut rng, m);
        match weighted_p_diversity(&x, &w, &part, 1.0) {
            Ok(v) if v == objective_value(&w, &x) => {}
            other => report.fail(format!("case {c}: F_1 {other:?} vs {}", objective_value(&w, &x))),
        }
        report.cases += 1;
    }

    for penalty in [Penalty::WeightedDiversity, Penalty::Entropy, Penalty::Diversity] {
        let mut done = 0;
        let mut rejects = 0;
        while done < cases {
            let (n, m) = (rng.random_range(1..=4), rng.random_range(1..=3));
            let w = Matrix::from_fn(n, m, |_, _| f64::from(rng.random_range(0..=5)));
            let (l, u): (Vec<usize>, Vec<usize>) = (0..n)
                .map(|_| (rng.random_range(0..=1), rng.random_range(1..=2)))
                .unzip();
            let caps = (0..m).map(|_| rng.random_range(1..=2)).collect();
            let bounds = DegreeBounds::new(l, u, caps).expect("shapes agree");
            let part = random_partition(&mut rng, m);
            if penalized_case(&mut report, &w, &bounds, &part, penalty) {
                done += 1;
                report.cases += 1;
            } else {
                rejects += 1;
                if rejects > MAX_REJECTS * cases {
                    report.fail(format!("{penalty:?}: too few feasible cases"));
                    break;
                }
            }
        }
    }
    report.timed(start)
}

/// Every check at its default size.
pub fn run_all(seed: u64) -> Vec<CheckReport> {
    vec![
        solver_vs_enumeration(500, seed),
        zero_freedom(200, seed),
        heuristic_bounds(100, seed),
        capacity_condition(200, seed),
        coverage_condition(200, seed),
        bid_selection(1000, seed),
        three_papers(),
        diversity_penalties(100, seed),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for r in [
            solver_vs_enumeration(20, 1),
            zero_freedom(5, 1),
            heuristic_bounds(5, 1),
            capacity_condition(5, 1),
            coverage_condition(5, 1),
            bid_selection(20, 1),
            three_papers(),
            diversity_penalties(5, 1),
        ] {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = zero_freedom(3, 9);
        let b = zero_freedom(3, 9);
        assert_eq!(a.notes, b.notes);
        assert_eq!(a.cases, 3);
    }
}
