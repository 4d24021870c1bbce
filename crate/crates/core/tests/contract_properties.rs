use approx::assert_abs_diff_eq;
use predshare::contracts::{
    build_game, classify, contract_report, known_corr_closed_form, known_correlation_model, pareto_dominates, ModelSpec,
    ThresholdReading,
};
use predshare::distributions::{theta_max, theta_min, CorrelationModelSpec, ThetaPrior};
use predshare::{Contract, Player, UtilityFamily};
use proptest::prelude::*;

/// `(α, β, θa, θb, w)` with `½ ≤ β ≤ α ≤ 0.95` and feasible correlations.
fn accuracies_and_prior(equal: bool) -> impl Strategy<Value = (f64, f64, f64, f64, f64)> {
    (0.5..=0.95f64, 0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64, 0.05..=0.95f64).prop_map(move |(a, bf, ua, ub, w)| {
        let b = if equal { a } else { 0.5 + bf * (a - 0.5) };
        let (lo, hi) = (theta_min(a, b), theta_max(a, b));
        (a, b, lo + ua * (hi - lo), lo + ub * (hi - lo), w)
    })
}

fn model(a: f64, b: f64, ta: f64, tb: f64, w: f64, r1: f64, c1: f64) -> ModelSpec {
    let prior = if (ta - tb).abs() < 1e-9 {
        ThetaPrior::point(ta)
    } else {
        ThetaPrior::two_point(ta, tb, w).unwrap()
    };
    ModelSpec::Correlation(
        CorrelationModelSpec::new(a, b, prior, UtilityFamily::significant_action(r1, c1).unwrap()).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn full_sharing_dominates_infer_sharing(
        (a, b, ta, tb, w) in accuracies_and_prior(false),
        r1 in 0.5..=2.0f64,
        c1 in 0.0..=3.0f64,
    ) {
        let m = model(a, b, ta, tb, w, r1, c1);
        prop_assert!(pareto_dominates(&m, Contract::FullSharing, Contract::InferSharing).unwrap());
    }

    #[test]
    fn symmetric_cost_train_equals_no_sharing(
        (a, b, ta, tb, w) in accuracies_and_prior(false),
        r in 0.5..=2.0f64,
    ) {
        prop_assume!((3.0 * b - a - 1.0).abs() > 1e-6);
        let m = model(a, b, ta, tb, w, r, r);
        let ns = contract_report(&m, Contract::NoSharing).unwrap();
        let ts = contract_report(&m, Contract::TrainSharing).unwrap();
        prop_assert_eq!(ns.equilibria.len(), 1);
        prop_assert_eq!(ts.equilibria.len(), 1);
        prop_assert!((ns.equilibria[0].u1 - ts.equilibria[0].u1).abs() < 1e-12);
        prop_assert!((ns.equilibria[0].u2 - ts.equilibria[0].u2).abs() < 1e-12);
        let c = classify(&m).unwrap();
        prop_assert_eq!(c.uniquely_irpo, Some(Contract::NoSharing));
    }

    #[test]
    fn equal_accuracy_full_sharing_irpo(
        (a, b, ta, tb, w) in accuracies_and_prior(true),
        r1 in 0.5..=2.0f64,
        c1 in 0.0..=3.0f64,
    ) {
        let m = model(a, b, ta, tb, w, r1, c1);
        let c = classify(&m).unwrap();
        prop_assert!(c.is_irpo(Contract::FullSharing), "IRPO {:?}", c.irpo);
        for &other in &c.irpo {
            prop_assert!(c.equivalent(other, Contract::FullSharing), "{other:?} in IRPO {:?}", c.irpo);
        }
        prop_assert!(pareto_dominates(&m, Contract::FullSharing, Contract::TrainSharing).unwrap());
    }

    #[test]
    fn equilibria_are_best_responses(
        (a, b, ta, tb, w) in accuracies_and_prior(false),
        r1 in 0.5..=2.0f64,
        c1 in 0.0..=3.0f64,
        k in 0usize..4,
    ) {
        let m = model(a, b, ta, tb, w, r1, c1);
        let g = build_game(&m, Contract::ALL[k]).unwrap();
        for e in g.enumerate_pure_equilibria().unwrap() {
            for p in Player::BOTH {
                let opp = e.strategy(p.other());
                for s in g.positive_infosets(p) {
                    let chosen = e.strategy(p).get(s).unwrap();
                    let mine = g.conditional_utility(p, s, chosen, opp).unwrap();
                    let alt = g.conditional_utility(p, s, chosen.flip(), opp).unwrap();
                    prop_assert!(mine >= alt - 1e-9);
                }
            }
        }
    }
}

/// `α, β ∈ {0.55, …, 0.95}` with `β ≤ α`: 45 pairs. On the regime boundary
/// `3β = α + 1` firm 2 is indifferent and both regimes are equilibria; the
/// closed form picks acting.
#[test]
fn closed_form_matches_enumeration_on_grid() {
    let grid: Vec<f64> = (11..20).map(|i| i as f64 / 20.0).collect();
    let (mut n, mut boundary_points) = (0, 0);
    for &a in &grid {
        for &b in grid.iter().filter(|&&b| b <= a) {
            n += 1;
            let cf = known_corr_closed_form(a, b, ThresholdReading::AtLeastZero).unwrap();
            let m = known_correlation_model(a, b, 0.0, UtilityFamily::significant_action(1.0, 1.0).unwrap()).unwrap();
            let g = build_game(&m, Contract::NoSharing).unwrap();
            let eqs = g.enumerate_pure_equilibria().unwrap();
            let boundary = (3.0 * b - a - 1.0).abs() < 1e-9;
            if boundary {
                boundary_points += 1;
            }
            assert_eq!(eqs.len(), if boundary { 2 } else { 1 }, "α={a} β={b}");
            let e = eqs.iter().find(|e| e.s1 == cf.s1 && e.s2 == cf.s2).expect("closed-form profile is an equilibrium");
            assert_abs_diff_eq!(g.exante_utility(e, Player::One).unwrap(), cf.u1, epsilon = 1e-12);
            assert_abs_diff_eq!(g.exante_utility(e, Player::Two).unwrap(), cf.u2, epsilon = 1e-12);
        }
    }
    assert_eq!((n, boundary_points), (45, 3));
}
