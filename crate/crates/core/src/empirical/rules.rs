//! Decision rules learned from test-split signal statistics.
//!
//! Under no- and infer-sharing the firms only know each signal's accuracy,
//! so they treat the signals as conditionally independent. Under train- and
//! full-sharing they see each other's test predictions and use the empirical
//! joint. Either joint is turned into a one-world game and solved with the
//! exact equilibrium machinery.

use serde::{Deserialize, Serialize};

use crate::distributions::{CellKey, JointSignalDistribution, Signal1, Signal2};
use crate::error::{Error, Result};
use crate::game::{BayesianGame, GameAtom, PureStrategy, PureStrategyProfile};
use crate::utility::{expost_utility, Action, Contract, Label, Player, UtilityParams};

/// Counts of `(X, x, t)` on the test split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalStats {
    /// Indexed `[X][x][t]`.
    pub counts: [[[u64; 2]; 2]; 2],
}

impl EmpiricalStats {
    pub fn from_predictions(pred1: &[bool], pred2: &[bool], labels: &[Label]) -> Result<Self> {
        if pred1.len() != labels.len() || pred2.len() != labels.len() {
            return Err(Error::InvalidParameter("prediction and label lengths differ".into()));
        }
        let mut counts = [[[0; 2]; 2]; 2];
        for ((&p1, &p2), &t) in pred1.iter().zip(pred2).zip(labels) {
            let x1 = Signal1::from_prediction(p1);
            let x2 = Signal2::from_prediction(p2);
            counts[x1.index()][x2.index()][t.index()] += 1;
        }
        Ok(EmpiricalStats { counts })
    }

    pub fn count(&self, k: CellKey) -> u64 {
        self.counts[k.x1.index()][k.x2.index()][k.t.index()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().flatten().sum()
    }

    /// Add-one smoothed joint.
    pub fn smoothed_joint(&self) -> JointSignalDistribution {
        let n = self.total() as f64 + 8.0;
        JointSignalDistribution::from_fn(|k| (self.count(k) as f64 + 1.0) / n).expect("smoothed counts are a distribution")
    }

    /// `Pr[t]·Pr[X | t]·Pr[x | t]` from the smoothed joint.
    pub fn independent_joint(&self) -> JointSignalDistribution {
        let j = self.smoothed_joint();
        JointSignalDistribution::from_fn(|k| {
            j.label_prob(k.t) * j.firm1_given(k.x1, k.t) * j.firm2_given(k.x2, k.t)
        })
        .expect("product of marginals is a distribution")
    }

    /// `(Pr[A | 1], Pr[B | 0])` on the raw counts.
    pub fn firm1_accuracy(&self) -> (f64, f64) {
        let j = self.raw_joint();
        (j.firm1_given(Signal1::A, Label::One), j.firm1_given(Signal1::B, Label::Zero))
    }

    /// `(Pr[a | 1], Pr[b | 0])` on the raw counts.
    pub fn firm2_accuracy(&self) -> (f64, f64) {
        let j = self.raw_joint();
        (j.firm2_given(Signal2::A, Label::One), j.firm2_given(Signal2::B, Label::Zero))
    }

    fn raw_joint(&self) -> JointSignalDistribution {
        let n = self.total().max(1) as f64;
        JointSignalDistribution::from_fn(|k| self.count(k) as f64 / n).unwrap_or_else(|_| self.smoothed_joint())
    }
}

/// Infoset names a firm sees for the signal pair `(X, x)` under `contract`.
pub fn infoset_names(contract: Contract, x1: Signal1, x2: Signal2) -> (String, String) {
    if contract.shares_inference() {
        let s = format!("{x1}{x2}");
        (s.clone(), s)
    } else {
        (x1.to_string(), x2.to_string())
    }
}

/// One-world game on `joint` with the visibility of `contract`.
pub fn game_from_joint(joint: &JointSignalDistribution, contract: Contract, utility: UtilityParams) -> Result<BayesianGame> {
    let atoms = joint
        .iter()
        .filter(|(_, p)| *p > 0.0)
        .map(|(k, p)| {
            let (s1, s2) = infoset_names(contract, k.x1, k.x2);
            GameAtom {
                prob: p,
                infoset1: s1,
                infoset2: s2,
                label: k.t,
                train1: "w".into(),
                train2: "w".into(),
            }
        })
        .collect();
    BayesianGame::new(atoms, utility)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Selection {
    Unique,
    /// Highest total utility among several equilibria.
    MaxWelfare,
    /// No pure equilibrium; the rest point or last iterate of best-response dynamics.
    Dynamics,
}

/// Each firm's action over the signals it sees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionRules {
    pub contract: Contract,
    pub profile: PureStrategyProfile,
    pub selection: Selection,
}

impl DecisionRules {
    pub fn action(&self, player: Player, x1: Signal1, x2: Signal2) -> Action {
        let (s1, s2) = infoset_names(self.contract, x1, x2);
        let name = match player {
            Player::One => s1,
            Player::Two => s2,
        };
        self.profile.strategy(player).get(&name).unwrap_or(Action::Zero)
    }

    pub fn is_constant(&self, player: Player, action: Action) -> bool {
        self.profile.strategy(player).is_constant(action)
    }

    /// Average utility per firm on labeled signal pairs.
    pub fn evaluate(&self, pred1: &[bool], pred2: &[bool], labels: &[Label], utility: &UtilityParams) -> (f64, f64) {
        let mut u = [0.0; 2];
        for ((&p1, &p2), &t) in pred1.iter().zip(pred2).zip(labels) {
            let (x1, x2) = (Signal1::from_prediction(p1), Signal2::from_prediction(p2));
            let a1 = self.action(Player::One, x1, x2);
            let a2 = self.action(Player::Two, x1, x2);
            u[0] += expost_utility(utility, a1, t, a2);
            u[1] += expost_utility(utility, a2, t, a1);
        }
        let n = labels.len().max(1) as f64;
        (u[0] / n, u[1] / n)
    }
}

/// Equilibrium rules for `contract` given test statistics.
///
/// Several equilibria: the one with the highest total utility under the
/// game's own joint, then the first in sorted order. None: alternating best
/// responses from "always act", ties keeping the current action.
pub fn empirical_rules(contract: Contract, stats: &EmpiricalStats, utility: &UtilityParams) -> Result<DecisionRules> {
    if stats.total() == 0 {
        return Err(Error::InvalidParameter("empty test statistics".into()));
    }
    let joint = if contract.shares_training() {
        stats.smoothed_joint()
    } else {
        stats.independent_joint()
    };
    let game = game_from_joint(&joint, contract, *utility)?;
    let eqs = game.enumerate_pure_equilibria()?;
    let (profile, selection) = match eqs.len() {
        0 => (best_response_dynamics(&game)?, Selection::Dynamics),
        1 => (eqs.into_iter().next().unwrap(), Selection::Unique),
        _ => {
            let mut best: Option<(f64, PureStrategyProfile)> = None;
            for e in eqs {
                let w = game.exante_utility(&e, Player::One)? + game.exante_utility(&e, Player::Two)?;
                if best.as_ref().is_none_or(|(bw, _)| w > *bw + 1e-12) {
                    best = Some((w, e));
                }
            }
            (best.unwrap().1, Selection::MaxWelfare)
        }
    };
    Ok(DecisionRules {
        contract,
        profile,
        selection,
    })
}

fn best_response_dynamics(game: &BayesianGame) -> Result<PureStrategyProfile> {
    let mut profile = PureStrategyProfile {
        s1: PureStrategy::constant(game.infosets(Player::One), Action::One),
        s2: PureStrategy::constant(game.infosets(Player::Two), Action::One),
    };
    for _ in 0..64 {
        let before = profile.clone();
        for p in Player::BOTH {
            let opp = profile.strategy(p.other()).clone();
            let br = game.best_responses(p, &opp)?;
            let own = match p {
                Player::One => &mut profile.s1,
                Player::Two => &mut profile.s2,
            };
            for (name, opts) in &br.options {
                if !opts.contains(&own.choice[name]) {
                    own.choice.insert(name.clone(), opts[0]);
                }
            }
        }
        if profile == before {
            break;
        }
    }
    Ok(profile)
}
