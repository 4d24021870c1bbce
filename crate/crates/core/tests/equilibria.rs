//! Equilibrium and utility values of the small games, checked against
//! closed forms and hand-summed cell probabilities.

use approx::assert_abs_diff_eq;
use predshare::contracts::{build_game, known_correlation_model, ModelSpec};
use predshare::distributions::{joint_from_correlation, two_hypotheses_joint, Hypothesis, Signal1, Signal2, TwoHypothesesSpec};
use predshare::game::{PureStrategy, PureStrategyProfile};
use predshare::{Action, Contract, Label, Player, UtilityFamily};

fn follow1() -> PureStrategy {
    PureStrategy::new([("A", Action::One), ("B", Action::Zero)])
}

fn follow2() -> PureStrategy {
    PureStrategy::new([("a", Action::One), ("b", Action::Zero)])
}

fn sym_game(alpha: f64, beta: f64, contract: Contract) -> predshare::game::BayesianGame {
    let m = known_correlation_model(alpha, beta, 0.0, UtilityFamily::significant_action(1.0, 1.0).unwrap()).unwrap();
    build_game(&m, contract).unwrap()
}

#[test]
fn conditional_utilities_at_independent_signals() {
    let g = sym_game(0.7, 0.6, Contract::NoSharing);
    let u = g.conditional_utility(Player::Two, "a", Action::One, &follow1()).unwrap();
    assert_abs_diff_eq!(u, 0.5 * (3.0 * 0.6 - 1.0 - 0.7), epsilon = 1e-12);
    assert_abs_diff_eq!(u, 0.05, epsilon = 1e-12);
    for s in [follow1(), PureStrategy::constant(&["A", "B"], Action::One)] {
        assert_eq!(g.conditional_utility(Player::Two, "b", Action::Zero, &s).unwrap(), 0.0);
    }
    let u = g.conditional_utility(Player::One, "A", Action::One, &follow2()).unwrap();
    assert_abs_diff_eq!(u, 0.25, epsilon = 1e-12);
}

/// Firm 1 acting at `A` against a signal-following firm 2, summed over cells.
#[test]
fn conditional_utility_matches_cell_sum() {
    for (a, b, th) in [(0.7, 0.6, 0.0), (0.8, 0.65, 0.3), (0.9, 0.55, -0.1)] {
        let m = known_correlation_model(a, b, th, UtilityFamily::significant_action(1.0, 1.0).unwrap()).unwrap();
        let g = build_game(&m, Contract::NoSharing).unwrap();
        let j = joint_from_correlation(a, b, th).unwrap();
        let mut num = 0.0;
        for x2 in Signal2::BOTH {
            for t in Label::BOTH {
                let base = if t == Label::One { 1.0 } else { -1.0 };
                let share = if x2 == Signal2::A { 0.5 } else { 1.0 };
                num += j.prob(Signal1::A, x2, t) * base * share;
            }
        }
        let want = num / j.firm1_signal_prob(Signal1::A);
        let got = g.conditional_utility(Player::One, "A", Action::One, &follow2()).unwrap();
        assert_abs_diff_eq!(got, want, epsilon = 1e-12);
    }
}

#[test]
fn weak_second_firm_gives_in() {
    let g = sym_game(0.9, 0.55, Contract::NoSharing);
    let br = g.best_responses(Player::Two, &follow1()).unwrap();
    assert_eq!(br.strategies(), vec![PureStrategy::constant(&["a", "b"], Action::Zero)]);
    let eqs = g.enumerate_pure_equilibria().unwrap();
    assert_eq!(eqs, vec![PureStrategyProfile { s1: follow1(), s2: PureStrategy::constant(&["a", "b"], Action::Zero) }]);
    assert_abs_diff_eq!(g.exante_utility(&eqs[0], Player::One).unwrap(), 0.4, epsilon = 1e-12);
}

#[test]
fn both_follow_signals_when_second_firm_is_accurate_enough() {
    let g = sym_game(0.7, 0.6, Contract::NoSharing);
    let eqs = g.enumerate_pure_equilibria().unwrap();
    assert_eq!(eqs, vec![PureStrategyProfile { s1: follow1(), s2: follow2() }]);
    assert_abs_diff_eq!(g.exante_utility(&eqs[0], Player::One).unwrap(), 0.125, epsilon = 1e-12);
    assert_abs_diff_eq!(g.exante_utility(&eqs[0], Player::Two).unwrap(), 0.025, epsilon = 1e-12);
    assert_abs_diff_eq!(g.interim_utility(&eqs[0], Player::One, "w").unwrap(), 0.125, epsilon = 1e-12);
}

#[test]
fn full_sharing_utility_of_first_firm() {
    for (a, b) in [(0.7, 0.6), (0.9, 0.55), (0.8, 0.8), (0.95, 0.5)] {
        let g = sym_game(a, b, Contract::FullSharing);
        for e in g.enumerate_pure_equilibria().unwrap() {
            assert_abs_diff_eq!(g.exante_utility(&e, Player::One).unwrap(), (2.0 * a - 1.0) / 4.0, epsilon = 1e-12);
        }
    }
}

/// Under hypothesis I firm 1 follows its signal, so with firm 2 out of the
/// market it is right on every positive and on the `(B, ·, 0)` negatives.
#[test]
fn first_firm_interim_under_hypothesis_one() {
    let s = TwoHypothesesSpec::matching(0.7, 0.055, 0.0155, 0.29).unwrap();
    let (k, l) = (s.kappa, s.lambda);
    let g = build_game(&ModelSpec::TwoHypInfinite(s.clone()), Contract::NoSharing).unwrap();
    let eqs = g.enumerate_pure_equilibria().unwrap();
    assert!(!eqs.is_empty());
    let want = (1.0 + k - (1.0 - k) * l) / 2.0;
    for e in &eqs {
        assert_abs_diff_eq!(g.interim_utility(e, Player::One, "I").unwrap(), want, epsilon = 1e-12);
    }
    // the same number summed straight from the hypothesis-I joint
    let j = two_hypotheses_joint(&s, Hypothesis::I);
    let e = &eqs[0];
    let mut direct = 0.0;
    for (c, p) in j.iter() {
        let a1 = e.s1.get(&format!("I:{}", c.x1)).unwrap();
        let a2 = e.s2.get(&c.x2.to_string()).unwrap();
        direct += p * predshare::utility::expost_utility(g.utility(), a1, c.t, a2);
    }
    assert_abs_diff_eq!(direct, want, epsilon = 1e-12);
}

#[test]
fn interim_components_average_to_exante() {
    let s = TwoHypothesesSpec::matching(0.5, 5.0 / 32.0, 1.0 / 8.0, 0.5).unwrap();
    for contract in Contract::ALL {
        let g = build_game(&ModelSpec::TwoHypOneSample(s.clone()), contract).unwrap();
        for e in g.enumerate_pure_equilibria().unwrap() {
            for p in Player::BOTH {
                let avg: f64 = g
                    .train_components(p)
                    .iter()
                    .map(|w| g.train_mass(p, w) * g.interim_utility(&e, p, w).unwrap())
                    .sum();
                assert_abs_diff_eq!(avg, g.exante_utility(&e, p).unwrap(), epsilon = 1e-12);
            }
        }
    }
}
