//! Brute-force reference for equilibrium enumeration.
//!
//! Checks every profile of the whole game against the equilibrium condition
//! directly, without decomposition or best-response shortcuts. Only usable on
//! tiny games; the decomposed enumerator is tested against it.

use rand::Rng;

use crate::error::{Error, Result};
use crate::game::{BayesianGame, GameAtom, PureStrategy, PureStrategyProfile};
use crate::utility::{expost_utility, Action, Label, Player, UtilityParams, DEFAULT_TOLERANCE};

/// Largest `n1 + n2` the oracle accepts.
pub const MAX_ORACLE_INFOSETS: usize = 20;

/// All pure equilibria by exhaustive search over `2^(n1 + n2)` profiles.
///
/// Zero-mass infosets are held at action 0 and never checked.
pub fn naive_equilibria(game: &BayesianGame) -> Result<Vec<PureStrategyProfile>> {
    let live = |p: Player| -> Vec<String> {
        game.infosets(p)
            .iter()
            .filter(|s| game.infoset_mass(p, s) > 0.0)
            .cloned()
            .collect()
    };
    let (l1, l2) = (live(Player::One), live(Player::Two));
    if l1.len() + l2.len() > MAX_ORACLE_INFOSETS {
        return Err(Error::Capacity(format!(
            "oracle limited to {MAX_ORACLE_INFOSETS} infosets, game has {}",
            l1.len() + l2.len()
        )));
    }
    let mut out = Vec::new();
    for b1 in 0u64..(1 << l1.len()) {
        let s1 = assemble(game, Player::One, &l1, b1);
        for b2 in 0u64..(1 << l2.len()) {
            let s2 = assemble(game, Player::Two, &l2, b2);
            if no_profitable_deviation(game, &s1, &s2) {
                out.push(PureStrategyProfile { s1: s1.clone(), s2 });
            }
        }
    }
    out.sort();
    Ok(out)
}

fn assemble(game: &BayesianGame, p: Player, live: &[String], bits: u64) -> PureStrategy {
    let mut s = PureStrategy::constant(game.infosets(p), Action::Zero);
    for (k, name) in live.iter().enumerate() {
        s.choice.insert(name.clone(), Action::from_bool(bits >> k & 1 == 1));
    }
    s
}

/// Summed payoff of `p` over the atoms of `infoset` when it plays `action`.
fn infoset_payoff(game: &BayesianGame, p: Player, infoset: &str, action: Action, opp: &PureStrategy) -> f64 {
    game.atoms()
        .iter()
        .filter(|a| a.infoset(p) == infoset)
        .map(|a| {
            let other = opp.get(a.infoset(p.other())).expect("total strategy");
            a.prob * expost_utility(game.utility(), action, a.label, other)
        })
        .sum()
}

fn no_profitable_deviation(game: &BayesianGame, s1: &PureStrategy, s2: &PureStrategy) -> bool {
    for (p, own, opp) in [(Player::One, s1, s2), (Player::Two, s2, s1)] {
        for (name, &chosen) in &own.choice {
            let mass = game.infoset_mass(p, name);
            if mass <= 0.0 {
                continue;
            }
            let stay = infoset_payoff(game, p, name, chosen, opp) / mass;
            let dev = infoset_payoff(game, p, name, chosen.flip(), opp) / mass;
            if dev > stay + DEFAULT_TOLERANCE {
                return false;
            }
        }
    }
    true
}

/// Random game with at most `max_sets` infosets per player.
///
/// Probabilities are ratios of small integers and payoffs are small integers, so
/// exact ties occur regularly. Some atoms get zero probability.
pub fn random_game<R: Rng + ?Sized>(rng: &mut R, max_sets: usize) -> BayesianGame {
    let n1 = rng.random_range(1..=max_sets);
    let n2 = rng.random_range(1..=max_sets);
    let params = UtilityParams::new(
        rng.random_range(0..=2) as f64,
        rng.random_range(0..=2) as f64,
        rng.random_range(0..=2) as f64,
        rng.random_range(0..=2) as f64,
    )
    .expect("nonnegative integers");
    let mut weights = Vec::new();
    for i in 0..n1 {
        for j in 0..n2 {
            for t in Label::BOTH {
                let w: u32 = if rng.random_bool(0.4) { 0 } else { rng.random_range(1..=4) };
                weights.push((i, j, t, w));
            }
        }
    }
    if weights.iter().all(|w| w.3 == 0) {
        weights[0].3 = 1;
    }
    let total: u32 = weights.iter().map(|w| w.3).sum();
    let atoms: Vec<GameAtom> = weights
        .into_iter()
        .map(|(i, j, t, w)| GameAtom {
            prob: w as f64 / total as f64,
            infoset1: format!("I{i}"),
            infoset2: format!("J{j}"),
            label: t,
            train1: "w".into(),
            train2: "w".into(),
        })
        .collect();
    BayesianGame::new(atoms, params).expect("valid by construction")
}
