use predshare::empirical::metrics::{battery, frequency_grid, optimality_frequency};
use predshare::empirical::sweep::{cost_sweep, default_cost_grid, train_firms, TrainingConfig};
use predshare::empirical::empirical_rules;
use predshare::empirical::{generate_dataset, SyntheticDatasetSpec, DEFAULT_SEED};
use predshare::{Contract, UtilityParams};

fn small(seed: u64, epsilon: f64) -> SyntheticDatasetSpec {
    let mut spec = SyntheticDatasetSpec::with_seed(seed).with_epsilon(epsilon);
    spec.n_train = 2000;
    spec.n_test = 1000;
    spec.n_valid = 1000;
    spec
}

#[test]
fn sweep_is_a_pure_function_of_the_seed() {
    let cfg = TrainingConfig::default();
    let run = || {
        let ds = generate_dataset(&small(11, 0.7)).unwrap();
        cost_sweep(&ds, &default_cost_grid(), &cfg).unwrap().to_csv()
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a.lines().count(), 2 + 51 * 8);
}

#[test]
fn frequencies_are_a_distribution() {
    let cfg = TrainingConfig::default();
    for eps in [1.0, 0.4] {
        let ds = generate_dataset(&small(3, eps)).unwrap();
        let sweep = cost_sweep(&ds, &frequency_grid(), &cfg).unwrap();
        let f = optimality_frequency(&sweep).unwrap();
        assert!(f.iter().all(|&x| x >= 0.0));
        assert!((f.iter().sum::<f64>() - 1.0).abs() < 1e-12, "{f:?}");
    }
}

#[test]
fn default_seed_battery_conserves_credit() {
    let runs = battery(&[DEFAULT_SEED], &TrainingConfig::default()).unwrap();
    assert_eq!(runs.len(), 6);
    for r in &runs {
        assert!((r.frequencies.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(r.mcc > -1.0 && r.mcc < 1.0);
    }
}

/// Both firms see `(X, x)` under either contract, so total utility on a cell
/// depends only on whether anyone acts; full sharing's welfare-maximizing
/// rule acts exactly on the cells worth acting on.
#[test]
fn full_sharing_welfare_at_least_infer_sharing_on_test_split() {
    let ds = generate_dataset(&SyntheticDatasetSpec::with_seed(DEFAULT_SEED)).unwrap();
    let firms = train_firms(&ds, &TrainingConfig::default()).unwrap();
    let [s1, s2] = &firms.test_signals;
    for c1 in default_cost_grid() {
        let u = UtilityParams::significant_action(1.0, c1).unwrap();
        let welfare = |c| {
            let (a, b) = empirical_rules(c, &firms.stats, &u).unwrap().evaluate(s1, s2, &ds.test.labels, &u);
            a + b
        };
        let (fs, is) = (welfare(Contract::FullSharing), welfare(Contract::InferSharing));
        assert!(fs >= is - 1e-12, "c1 = {c1}: fs {fs}, is {is}");
    }
}
