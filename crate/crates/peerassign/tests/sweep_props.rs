use peerassign::io::{parse_instance, InstanceFile};
use peerassign::sweep::{run_sweep, DatasetSource, FamilySpec, SweepConfig};
use peerassign_core::{Matrix, ProblemInstance};
use proptest::prelude::*;

fn tiny(seed: u64, reps: usize, sigma: f64, rate: f64) -> SweepConfig {
    SweepConfig {
        dataset: DatasetSource::Synthetic {
            papers: 10,
            reviewers: 16,
            topics: 5,
            seed: seed ^ 0x5eed,
        },
        min_reviews: 1,
        max_reviews: 2,
        capacities: vec![2, 3],
        phi_fractions: vec![0.5, 1.0],
        families: vec![
            FamilySpec::Aligned { sigma },
            FamilySpec::Uniform,
            FamilySpec::Exponential { rate },
        ],
        t_values: vec![0.05, 0.15],
        replications: reps,
        base_seed: seed,
        ..SweepConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn means_stay_in_range(seed in any::<u64>(), reps in 1usize..=3, sigma in 0.01f64..0.5, rate in 0.1f64..2.0) {
        let out = run_sweep(&tiny(seed, reps, sigma, rate)).unwrap();
        prop_assert_eq!(out.rows.len(), 2 * 3 * 2 * 3);
        for row in &out.rows {
            prop_assert!(row.infeasible <= row.replications);
            if let Some(v) = row.qp {
                prop_assert!((0.0..=1.0 + 1e-12).contains(&v), "QP {}", v);
            }
            if let Some(v) = row.ac {
                prop_assert!((0.0..=1.0).contains(&v));
            }
            for v in [row.raer, row.fr].into_iter().flatten() {
                prop_assert!(v > 0.0 && v.is_finite());
            }
            prop_assert_eq!(row.ac.is_some() && row.infeasible < row.replications, row.t.is_none() && row.infeasible < row.replications);
        }
    }

    #[test]
    fn identical_configs_give_identical_output(seed in any::<u64>()) {
        let cfg = tiny(seed, 2, 0.1, 0.5);
        let a = serde_json::to_string(&run_sweep(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&run_sweep(&cfg).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn instance_json_round_trips(
        n in 1usize..=6,
        m in 1usize..=4,
        seed in any::<u64>(),
    ) {
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        let q = Matrix::from_fn(n, m, |_, _| next());
        let e = Matrix::from_fn(n, m, |_, _| next() + 0.01);
        let inst = ProblemInstance::new(vec![0; n], vec![1; n], vec![1; m], vec![0; m], q, e).unwrap();
        let text = serde_json::to_string(&InstanceFile::from_instance(&inst)).unwrap();
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
    }
}
