//! Contract games, Pareto dominance and IRPO classification.
//!
//! A contract decides which signals a firm sees before acting. `build_game`
//! turns a model and a contract into a [`BayesianGame`] whose information
//! sets encode exactly that visibility:
//!
//! | model | contract | firm 1 | firm 2 |
//! |---|---|---|---|
//! | correlation | ns | `X` | `x` |
//! | correlation | ts | `(θ, X)` | `(θ, x)` |
//! | correlation | is | `(X, x)` | `(X, x)` |
//! | correlation | fs | `(θ, X, x)` | `(θ, X, x)` |
//! | two hypotheses | ns | `(h, X)` | `x` |
//! | two hypotheses | ts | `(h, X)` | `(h, x)` |
//! | two hypotheses | is | `(h, X, x)` | `(X, x)` |
//! | two hypotheses | fs | `(h, X, x)` | `(h, X, x)` |
//!
//! In the one-sample variant each firm trains on a single labeled example
//! `(X₀, x₀, t₀)` and sees only its own coordinate `(X₀, t₀)` or `(x₀, t₀)`,
//! unless training data is shared, in which case both see the whole sample.

use std::collections::BTreeMap;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::distributions::{
    two_hypotheses_joint, CellKey, CorrelationModelSpec, Hypothesis, ThetaPrior, TwoHypothesesSpec,
};
use crate::error::{Error, Result};
use crate::game::{BayesianGame, GameAtom, PureStrategy, PureStrategyProfile};
use crate::utility::{
    Action, Contract, Label, Player, UtilityFamily, UtilityParams, DEFAULT_TOLERANCE,
};

/// The single training component of models where training reveals nothing private.
pub const SOLE_COMPONENT: &str = "w";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum ModelSpec {
    Correlation(CorrelationModelSpec),
    /// Each firm learns its own signal structure exactly.
    TwoHypInfinite(TwoHypothesesSpec),
    /// Each firm trains on one labeled example.
    TwoHypOneSample(TwoHypothesesSpec),
}

impl ModelSpec {
    pub fn utility(&self) -> &UtilityParams {
        match self {
            ModelSpec::Correlation(s) => s.utility.params(),
            ModelSpec::TwoHypInfinite(s) | ModelSpec::TwoHypOneSample(s) => s.utility.params(),
        }
    }
}

/// Game induced by `model` under `contract`. Zero-probability outcomes are dropped.
pub fn build_game(model: &ModelSpec, contract: Contract) -> Result<BayesianGame> {
    let mut atoms = Vec::new();
    match model {
        ModelSpec::Correlation(spec) => {
            for (k, (_, weight, joint)) in spec.joints().into_iter().enumerate() {
                for (c, p) in joint.iter() {
                    let (s1, s2) = correlation_infosets(contract, k, c);
                    push(&mut atoms, weight * p, s1, s2, c.t, SOLE_COMPONENT, SOLE_COMPONENT);
                }
            }
        }
        ModelSpec::TwoHypInfinite(spec) => {
            for h in Hypothesis::BOTH {
                let joint = two_hypotheses_joint(spec, h);
                for (c, p) in joint.iter() {
                    let (s1, s2) = match contract {
                        Contract::NoSharing => (format!("{h}:{}", c.x1), c.x2.to_string()),
                        Contract::TrainSharing => (format!("{h}:{}", c.x1), format!("{h}:{}", c.x2)),
                        Contract::InferSharing => (format!("{h}:{}{}", c.x1, c.x2), format!("{}{}", c.x1, c.x2)),
                        Contract::FullSharing => {
                            let s = format!("{h}:{}{}", c.x1, c.x2);
                            (s.clone(), s)
                        }
                    };
                    push(&mut atoms, spec.prior(h) * p, s1, s2, c.t, &h.to_string(), SOLE_COMPONENT);
                }
            }
        }
        ModelSpec::TwoHypOneSample(spec) => {
            for h in Hypothesis::BOTH {
                let joint = two_hypotheses_joint(spec, h);
                for (sample, ps) in joint.iter() {
                    let w1 = format!("{}{}", sample.x1, sample.t);
                    let w2 = format!("{}{}", sample.x2, sample.t);
                    let full = sample.to_string();
                    for (c, p) in joint.iter() {
                        let pair = format!("{}{}", c.x1, c.x2);
                        let (s1, s2) = match contract {
                            Contract::NoSharing => (format!("{w1}:{}", c.x1), format!("{w2}:{}", c.x2)),
                            Contract::TrainSharing => (format!("{full}:{}", c.x1), format!("{full}:{}", c.x2)),
                            Contract::InferSharing => (format!("{w1}:{pair}"), format!("{w2}:{pair}")),
                            Contract::FullSharing => (format!("{full}:{pair}"), format!("{full}:{pair}")),
                        };
                        push(&mut atoms, spec.prior(h) * ps * p, s1, s2, c.t, &w1, &w2);
                    }
                }
            }
        }
    }
    BayesianGame::new(atoms, *model.utility())
}

fn correlation_infosets(contract: Contract, k: usize, c: CellKey) -> (String, String) {
    match contract {
        Contract::NoSharing => (c.x1.to_string(), c.x2.to_string()),
        Contract::TrainSharing => (format!("th{k}:{}", c.x1), format!("th{k}:{}", c.x2)),
        Contract::InferSharing => {
            let s = format!("{}{}", c.x1, c.x2);
            (s.clone(), s)
        }
        Contract::FullSharing => {
            let s = format!("th{k}:{}{}", c.x1, c.x2);
            (s.clone(), s)
        }
    }
}

fn push(atoms: &mut Vec<GameAtom>, prob: f64, s1: String, s2: String, t: Label, w1: &str, w2: &str) {
    if prob > 0.0 {
        atoms.push(GameAtom {
            prob,
            infoset1: s1,
            infoset2: s2,
            label: t,
            train1: w1.to_string(),
            train2: w2.to_string(),
        });
    }
}

/// One equilibrium with its utilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub profile: PureStrategyProfile,
    pub u1: f64,
    pub u2: f64,
    /// Interim utility per training component, firm 1.
    pub interim1: BTreeMap<String, f64>,
    pub interim2: BTreeMap<String, f64>,
}

impl EquilibriumReport {
    pub fn interim(&self, player: Player) -> &BTreeMap<String, f64> {
        match player {
            Player::One => &self.interim1,
            Player::Two => &self.interim2,
        }
    }

    pub fn exante(&self, player: Player) -> f64 {
        match player {
            Player::One => self.u1,
            Player::Two => self.u2,
        }
    }
}

/// Every pure equilibrium of one contract game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractReport {
    pub contract: Contract,
    pub equilibria: Vec<EquilibriumReport>,
}

/// Enumerates the equilibria of `model` under `contract` and evaluates them.
pub fn contract_report(model: &ModelSpec, contract: Contract) -> Result<ContractReport> {
    let game = build_game(model, contract)?;
    report_for_game(&game, contract)
}

pub fn report_for_game(game: &BayesianGame, contract: Contract) -> Result<ContractReport> {
    let equilibria = game
        .enumerate_pure_equilibria()?
        .into_iter()
        .map(|profile| {
            Ok(EquilibriumReport {
                u1: game.exante_utility(&profile, Player::One)?,
                u2: game.exante_utility(&profile, Player::Two)?,
                interim1: game.interim_table(&profile, Player::One)?,
                interim2: game.interim_table(&profile, Player::Two)?,
                profile,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ContractReport { contract, equilibria })
}

/// Training component pairs `(w1, w2)` that occur with positive probability.
/// They do not depend on the contract.
pub fn training_pairs(model: &ModelSpec) -> Result<Vec<(String, String)>> {
    Ok(build_game(model, Contract::NoSharing)?.train_pairs())
}

/// `a ⪰ b`: at every training pair some equilibrium of `a` gives both firms at
/// least what every equilibrium of `b` gives them.
pub fn report_dominates(a: &ContractReport, b: &ContractReport, pairs: &[(String, String)], tol: f64) -> Result<bool> {
    for r in [a, b] {
        if r.equilibria.is_empty() {
            return Err(Error::NoPureEquilibrium(r.contract));
        }
    }
    for (w1, w2) in pairs {
        let best = |p: Player, w: &str| {
            b.equilibria
                .iter()
                .map(|e| e.interim(p)[w])
                .fold(f64::NEG_INFINITY, f64::max)
        };
        let (m1, m2) = (best(Player::One, w1), best(Player::Two, w2));
        let ok = a
            .equilibria
            .iter()
            .any(|e| e.interim1[w1] >= m1 - tol && e.interim2[w2] >= m2 - tol);
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `ct` Pareto-dominates `ct_prime` under `model`.
pub fn pareto_dominates(model: &ModelSpec, ct: Contract, ct_prime: Contract) -> Result<bool> {
    let pairs = training_pairs(model)?;
    report_dominates(
        &contract_report(model, ct)?,
        &contract_report(model, ct_prime)?,
        &pairs,
        DEFAULT_TOLERANCE,
    )
}

/// Full classification of the four contracts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractClassification {
    pub contracts: BTreeMap<Contract, ContractReport>,
    /// `dominance[a][b]` is `a ⪰ b`; `None` when either side has no pure equilibrium.
    pub dominance: [[Option<bool>; 4]; 4],
    pub ir: Vec<Contract>,
    pub pareto: Vec<Contract>,
    pub irpo: Vec<Contract>,
    /// Representative of the IRPO set when all its members are equivalent.
    pub uniquely_irpo: Option<Contract>,
    pub warnings: Vec<String>,
}

impl ContractClassification {
    pub fn dominates(&self, a: Contract, b: Contract) -> Option<bool> {
        self.dominance[a.index()][b.index()]
    }

    /// Mutual domination.
    pub fn equivalent(&self, a: Contract, b: Contract) -> bool {
        self.dominates(a, b) == Some(true) && self.dominates(b, a) == Some(true)
    }

    pub fn strictly_dominates(&self, a: Contract, b: Contract) -> bool {
        self.dominates(a, b) == Some(true) && self.dominates(b, a) == Some(false)
    }

    pub fn is_ir(&self, c: Contract) -> bool {
        self.ir.contains(&c)
    }

    pub fn is_irpo(&self, c: Contract) -> bool {
        self.irpo.contains(&c)
    }

    pub fn report(&self, c: Contract) -> &ContractReport {
        &self.contracts[&c]
    }
}

pub fn classify(model: &ModelSpec) -> Result<ContractClassification> {
    classify_with_tol(model, DEFAULT_TOLERANCE)
}

/// Contracts that are individually rational (no-sharing, or dominating it)
/// and not strictly dominated by another contract. Contracts without a pure
/// equilibrium are left out of every set, with a warning.
pub fn classify_with_tol(model: &ModelSpec, tol: f64) -> Result<ContractClassification> {
    let pairs = training_pairs(model)?;
    let mut contracts = BTreeMap::new();
    let mut warnings = Vec::new();
    for c in Contract::ALL {
        let r = contract_report(model, c)?;
        if r.equilibria.is_empty() {
            let msg = format!("{c} has no pure equilibrium; excluded from dominance comparisons");
            warn!("{msg}");
            warnings.push(msg);
        }
        contracts.insert(c, r);
    }
    let live = |c: Contract| !contracts[&c].equilibria.is_empty();

    let mut dominance = [[None; 4]; 4];
    for a in Contract::ALL {
        for b in Contract::ALL {
            if live(a) && live(b) {
                dominance[a.index()][b.index()] =
                    Some(report_dominates(&contracts[&a], &contracts[&b], &pairs, tol)?);
            }
        }
    }
    let dom = |a: Contract, b: Contract| dominance[a.index()][b.index()] == Some(true);

    let ir: Vec<Contract> = Contract::ALL
        .into_iter()
        .filter(|&c| live(c) && (c == Contract::NoSharing || dom(c, Contract::NoSharing)))
        .collect();
    let pareto: Vec<Contract> = Contract::ALL
        .into_iter()
        .filter(|&c| live(c) && !Contract::ALL.iter().any(|&o| dom(o, c) && !dom(c, o)))
        .collect();
    let irpo: Vec<Contract> = ir.iter().copied().filter(|c| pareto.contains(c)).collect();
    let one_class = irpo.iter().all(|&a| irpo.iter().all(|&b| dom(a, b)));
    let uniquely_irpo = if one_class {
        irpo.iter().copied().min_by_key(|c| c.naturalness_rank())
    } else {
        None
    };

    Ok(ContractClassification {
        contracts,
        dominance,
        ir,
        pareto,
        irpo,
        uniquely_irpo,
        warnings,
    })
}

/// Correlation model with a single known θ.
pub fn known_correlation_model(alpha: f64, beta: f64, theta: f64, utility: UtilityFamily) -> Result<ModelSpec> {
    Ok(ModelSpec::Correlation(CorrelationModelSpec::new(
        alpha,
        beta,
        ThetaPrior::point(theta),
        utility,
    )?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Both firms follow their signals.
    HighBeta,
    /// Firm 2 never takes the significant action.
    LowBeta,
}

/// Reading of the firm-2 participation threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdReading {
    /// `3β − α − 1 ≥ 0`, where firm 2's value of acting at `a` changes sign.
    #[default]
    AtLeastZero,
    /// `3β − α − 1 ≥ 1`.
    AtLeastOne,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub regime: Regime,
    pub u1: f64,
    pub u2: f64,
    pub s1: PureStrategy,
    pub s2: PureStrategy,
    /// Firm 1's utility under full sharing, `(2α − 1)/4`.
    pub u1_fs: f64,
}

/// No-sharing equilibrium of a correlation model with one known θ and
/// symmetric significant-action utilities `R1 = c1 = 1`.
///
/// Firm 1 always follows its signal. Firm 2 follows its signal when
/// `3β − α − 1 ≥ 0` and otherwise stays out.
pub fn known_corr_closed_form(alpha: f64, beta: f64, reading: ThresholdReading) -> Result<ClosedForm> {
    if !(0.5 <= beta && beta <= alpha && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "accuracies must satisfy 1/2 <= β <= α <= 1, got α = {alpha}, β = {beta}"
        )));
    }
    let margin = 3.0 * beta - alpha - 1.0;
    let high = match reading {
        ThresholdReading::AtLeastZero => margin >= 0.0,
        ThresholdReading::AtLeastOne => margin >= 1.0,
    };
    let s1 = PureStrategy::new([("A", Action::One), ("B", Action::Zero)]);
    let (regime, u1, u2, s2) = if high {
        (
            Regime::HighBeta,
            (3.0 * alpha - beta - 1.0) / 4.0,
            margin / 4.0,
            PureStrategy::new([("a", Action::One), ("b", Action::Zero)]),
        )
    } else {
        (
            Regime::LowBeta,
            (2.0 * alpha - 1.0) / 2.0,
            0.0,
            PureStrategy::new([("a", Action::Zero), ("b", Action::Zero)]),
        )
    };
    Ok(ClosedForm {
        regime,
        u1,
        u2,
        s1,
        s2,
        u1_fs: (2.0 * alpha - 1.0) / 4.0,
    })
}

/// Closed-form sufficient conditions for full sharing to be the unique IRPO
/// contract under independent signals and significant-action utilities with
/// `R1 = 1`, next to the verdict of [`classify`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullSharingConditions {
    /// Under full sharing both firms act on `Aa` and on nothing else.
    pub fs_threshold_ok: bool,
    /// Under no sharing both firms following their signals is an equilibrium.
    pub ns_eq_ok: bool,
    /// `u2^ns ≤ u1^ns ≤ u^fs`.
    pub utility_ordering_ok: bool,
    /// The classification verdict.
    pub fs_uniquely_irpo: bool,
    pub u_fs: f64,
    pub u1_ns: f64,
    pub u2_ns: f64,
}

impl FullSharingConditions {
    pub fn all_hold(&self) -> bool {
        self.fs_threshold_ok && self.ns_eq_ok && self.utility_ordering_ok
    }

    /// The closed form and the classification give the same answer.
    pub fn agrees(&self) -> bool {
        self.all_hold() == self.fs_uniquely_irpo
    }
}

pub fn full_sharing_conditions(alpha: f64, beta: f64, c1: f64) -> Result<FullSharingConditions> {
    let (a, b) = (alpha, beta);
    let (na, nb) = (1.0 - a, 1.0 - b);
    let fs_threshold_ok = a * b - c1 * na * nb >= 0.0 && a * nb - c1 * b * na < 0.0;

    // firm values of acting, times two, with the other firm following its signal
    let v2a = a * b / 2.0 + na * b - c1 * (na * nb / 2.0 + a * nb);
    let v2b = a * nb / 2.0 + na * nb - c1 * (na * b / 2.0 + a * b);
    let v1a = a * b / 2.0 + a * nb - c1 * (na * nb / 2.0 + na * b);
    let v1b = na * b / 2.0 + na * nb - c1 * (a * nb / 2.0 + a * b);
    let ns_eq_ok = v2a >= 0.0 && v2b <= 0.0 && v1a >= 0.0 && v1b <= 0.0;

    let u_fs = (a * b - c1 * na * nb) / 4.0;
    let (u1_ns, u2_ns) = (v1a / 2.0, v2a / 2.0);
    let utility_ordering_ok = u2_ns <= u1_ns && u1_ns <= u_fs;

    let model = known_correlation_model(alpha, beta, 0.0, UtilityFamily::significant_action(1.0, c1)?)?;
    let fs_uniquely_irpo = classify(&model)?.uniquely_irpo == Some(Contract::FullSharing);
    Ok(FullSharingConditions {
        fs_threshold_ok,
        ns_eq_ok,
        utility_ordering_ok,
        fs_uniquely_irpo,
        u_fs,
        u1_ns,
        u2_ns,
    })
}

/// Firm 2's full-sharing utility in the one-sample model, in closed form.
pub fn one_sample_fs_firm2(spec: &TwoHypothesesSpec) -> f64 {
    let k = spec.kappa;
    0.5 * (k * (k + (1.0 - k) * spec.mu - 1.0) + 1.0)
}
