//! Actions, labels, contracts and the ex-post utility model.
//!
//! Both firms share one utility function `u(p, t, p')` of the own action `p`,
//! the true label `t` and the other firm's action `p'`. It is pinned down by
//! four magnitudes: the exclusive rewards `R0`, `R1` for a correct action and
//! the exclusive costs `c0`, `c1` for a wrong one. When both firms take the
//! same action the payoff (positive or negative) is halved for each.
//!
//! Costs are stored as nonnegative magnitudes and subtracted.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for equality and tie tests.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Action {
    Zero,
    One,
}

impl Action {
    pub const BOTH: [Action; 2] = [Action::Zero, Action::One];

    pub fn flip(self) -> Action {
        match self {
            Action::Zero => Action::One,
            Action::One => Action::Zero,
        }
    }

    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn from_bool(b: bool) -> Action {
        if b {
            Action::One
        } else {
            Action::Zero
        }
    }

    /// Whether this action is correct for `label`.
    pub fn matches(self, label: Label) -> bool {
        self.as_u8() == label.as_u8()
    }
}

impl From<Action> for u8 {
    fn from(a: Action) -> u8 {
        a.as_u8()
    }
}

impl TryFrom<u8> for Action {
    type Error = String;
    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            0 => Ok(Action::Zero),
            1 => Ok(Action::One),
            _ => Err(format!("action must be 0 or 1, got {v}")),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// True label of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Label {
    Zero,
    One,
}

impl Label {
    pub const BOTH: [Label; 2] = [Label::Zero, Label::One];

    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_bool(b: bool) -> Label {
        if b {
            Label::One
        } else {
            Label::Zero
        }
    }
}

impl From<Label> for u8 {
    fn from(l: Label) -> u8 {
        l.as_u8()
    }
}

impl TryFrom<u8> for Label {
    type Error = String;
    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            0 => Ok(Label::Zero),
            1 => Ok(Label::One),
            _ => Err(format!("label must be 0 or 1, got {v}")),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// One of the two competing firms. Firm one is the primary (weakly more
/// accurate) firm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::One, Player::Two];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::One => f.write_str("firm 1"),
            Player::Two => f.write_str("firm 2"),
        }
    }
}

/// Which signals the two firms exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Contract {
    NoSharing,
    TrainSharing,
    InferSharing,
    FullSharing,
}

impl Contract {
    pub const ALL: [Contract; 4] = [
        Contract::NoSharing,
        Contract::TrainSharing,
        Contract::InferSharing,
        Contract::FullSharing,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn shares_training(self) -> bool {
        matches!(self, Contract::TrainSharing | Contract::FullSharing)
    }

    pub fn shares_inference(self) -> bool {
        matches!(self, Contract::InferSharing | Contract::FullSharing)
    }

    pub fn short(self) -> &'static str {
        match self {
            Contract::NoSharing => "ns",
            Contract::TrainSharing => "ts",
            Contract::InferSharing => "is",
            Contract::FullSharing => "fs",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Contract::NoSharing => "no-sharing",
            Contract::TrainSharing => "train-sharing",
            Contract::InferSharing => "infer-sharing",
            Contract::FullSharing => "full-sharing",
        }
    }

    /// Preference used to pick a representative among equivalent contracts:
    /// no-sharing first, then full-sharing, then the partial contracts.
    pub fn naturalness_rank(self) -> u8 {
        match self {
            Contract::NoSharing => 0,
            Contract::FullSharing => 1,
            Contract::TrainSharing => 2,
            Contract::InferSharing => 3,
        }
    }
}

impl fmt::Display for Contract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Contract {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Contract::ALL
            .into_iter()
            .find(|c| c.short() == s || c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown contract '{s}'")))
    }
}

/// The four exclusive payoffs. `c0` and `c1` are cost magnitudes (≥ 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UtilityParams {
    pub r0: f64,
    pub r1: f64,
    pub c0: f64,
    pub c1: f64,
}

impl UtilityParams {
    pub fn new(r0: f64, r1: f64, c0: f64, c1: f64) -> Result<Self> {
        for (name, v) in [("R0", r0), ("R1", r1), ("c0", c0), ("c1", c1)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be a finite nonnegative number, got {v}"
                )));
            }
        }
        Ok(UtilityParams { r0, r1, c0, c1 })
    }

    /// Significant-action utilities: the safe action 0 always pays zero.
    pub fn significant_action(r1: f64, c1: f64) -> Result<Self> {
        Self::new(0.0, r1, 0.0, c1)
    }

    pub fn matching_recommendations() -> Self {
        UtilityParams {
            r0: 1.0,
            r1: 1.0,
            c0: 0.0,
            c1: 0.0,
        }
    }

    /// Payoff of taking `p` alone when the label is `t`.
    pub fn exclusive(&self, p: Action, t: Label) -> f64 {
        match (p, p.matches(t)) {
            (Action::Zero, true) => self.r0,
            (Action::One, true) => self.r1,
            (Action::Zero, false) => -self.c0,
            (Action::One, false) => -self.c1,
        }
    }
}

/// Ex-post utility `u(p, t, p_other)` with the half-split rule.
pub fn expost_utility(params: &UtilityParams, p: Action, t: Label, p_other: Action) -> f64 {
    let base = params.exclusive(p, t);
    if p == p_other {
        base / 2.0
    } else {
        base
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UtilityTag {
    SignificantAction,
    MatchingRecommendations,
    Custom,
}

/// A utility parameterization together with the family it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UtilityFamily {
    tag: UtilityTag,
    params: UtilityParams,
}

impl UtilityFamily {
    pub fn new(tag: UtilityTag, params: UtilityParams) -> Result<Self> {
        let ok = match tag {
            UtilityTag::SignificantAction => params.r0 == 0.0 && params.c0 == 0.0,
            UtilityTag::MatchingRecommendations => {
                params == UtilityParams::matching_recommendations()
            }
            UtilityTag::Custom => true,
        };
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "parameters {params:?} do not belong to the {tag:?} family"
            )));
        }
        Ok(UtilityFamily { tag, params })
    }

    pub fn significant_action(r1: f64, c1: f64) -> Result<Self> {
        Self::new(
            UtilityTag::SignificantAction,
            UtilityParams::significant_action(r1, c1)?,
        )
    }

    pub fn matching_recommendations() -> Self {
        UtilityFamily {
            tag: UtilityTag::MatchingRecommendations,
            params: UtilityParams::matching_recommendations(),
        }
    }

    pub fn custom(params: UtilityParams) -> Self {
        UtilityFamily {
            tag: UtilityTag::Custom,
            params,
        }
    }

    pub fn tag(&self) -> UtilityTag {
        self.tag
    }

    pub fn params(&self) -> &UtilityParams {
        &self.params
    }

    /// Significant action with `c1 = R1`.
    pub fn is_symmetric_significant_action(&self) -> bool {
        self.tag == UtilityTag::SignificantAction && self.params.c1 == self.params.r1
    }
}

/// Symmetric significant-action family: `R0 = c0 = 0`, `c1 = R1`.
pub fn make_symmetric_significant_action(r1: f64) -> Result<UtilityFamily> {
    if !(r1 > 0.0) || !r1.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "symmetric significant-action reward must be positive, got {r1}"
        )));
    }
    UtilityFamily::significant_action(r1, r1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sym() -> UtilityParams {
        *make_symmetric_significant_action(1.0).unwrap().params()
    }

    #[test]
    fn symmetric_sa_examples() {
        let p = sym();
        assert_eq!(expost_utility(&p, Action::One, Label::One, Action::Zero), 1.0);
        assert_eq!(expost_utility(&p, Action::One, Label::One, Action::One), 0.5);
        assert_eq!(expost_utility(&p, Action::One, Label::Zero, Action::Zero), -1.0);
    }

    #[test]
    fn safe_action_pays_nothing() {
        let p = UtilityParams::significant_action(1.7, 0.3).unwrap();
        assert_eq!(expost_utility(&p, Action::Zero, Label::One, Action::One), 0.0);
        assert_eq!(expost_utility(&p, Action::Zero, Label::Zero, Action::Zero), 0.0);
    }

    #[test]
    fn symmetric_constructor() {
        let f = make_symmetric_significant_action(1.0).unwrap();
        assert_eq!(*f.params(), UtilityParams::new(0.0, 1.0, 0.0, 1.0).unwrap());
        let f = make_symmetric_significant_action(2.0).unwrap();
        assert_eq!(*f.params(), UtilityParams::new(0.0, 2.0, 0.0, 2.0).unwrap());
        assert!(f.is_symmetric_significant_action());
        assert!(make_symmetric_significant_action(0.0).is_err());
        assert!(make_symmetric_significant_action(-1.0).is_err());
    }

    #[test]
    fn family_invariants() {
        let bad = UtilityParams::new(0.5, 1.0, 0.0, 1.0).unwrap();
        assert!(UtilityFamily::new(UtilityTag::SignificantAction, bad).is_err());
        assert!(UtilityFamily::new(UtilityTag::MatchingRecommendations, bad).is_err());
        assert!(UtilityParams::new(0.0, -1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn contract_parse() {
        for c in Contract::ALL {
            assert_eq!(c.short().parse::<Contract>().unwrap(), c);
            assert_eq!(c.name().parse::<Contract>().unwrap(), c);
        }
        assert!("both".parse::<Contract>().is_err());
    }

    fn params() -> impl Strategy<Value = UtilityParams> {
        (0.0..5.0f64, 0.0..5.0f64, 0.0..5.0f64, 0.0..5.0f64)
            .prop_map(|(a, b, c, d)| UtilityParams::new(a, b, c, d).unwrap())
    }

    proptest! {
        #[test]
        fn half_split_is_exact(p in params(), a in any::<bool>(), t in any::<bool>()) {
            let (a, t) = (Action::from_bool(a), Label::from_bool(t));
            let same = expost_utility(&p, a, t, a);
            let diff = expost_utility(&p, a, t, a.flip());
            prop_assert_eq!(same, diff / 2.0);
            // both firms together collect what one firm collects alone
            prop_assert_eq!(same + same, diff);
        }

        #[test]
        fn matching_recommendations_nonnegative(a in any::<bool>(), t in any::<bool>(), o in any::<bool>()) {
            let p = UtilityParams::matching_recommendations();
            prop_assert!(expost_utility(&p, Action::from_bool(a), Label::from_bool(t), Action::from_bool(o)) >= 0.0);
        }
    }
}
