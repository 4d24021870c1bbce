//! Joint distributions over (firm-1 signal, firm-2 signal, label).
//!
//! Two generators are provided:
//!
//! * the correlation model, where both accuracies are common knowledge and the
//!   Pearson correlation `θ` of the two signals (conditional on the label)
//!   pins down the whole joint;
//! * the two-hypotheses model, where the label is 1 exactly when the
//!   environmental cause (`a`) meets the "right" mutation, and which mutation
//!   that is depends on the hypothesis.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::utility::{Label, Player, UtilityFamily};

/// Cells below `-FEASIBILITY_TOL` are rejected; cells in `(-FEASIBILITY_TOL, 0)`
/// are clamped to zero.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Cells of a joint must sum to one within this tolerance.
pub const SUM_TOL: f64 = 1e-12;

/// Firm 1's inference-time signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Signal1 {
    A,
    B,
}

/// Firm 2's inference-time signal (`a` or `b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Signal2 {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
}

impl Signal1 {
    pub const BOTH: [Signal1; 2] = [Signal1::A, Signal1::B];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `A` is the signal that predicts label 1.
    pub fn predicts_one(self) -> bool {
        self == Signal1::A
    }

    pub fn from_prediction(one: bool) -> Signal1 {
        if one {
            Signal1::A
        } else {
            Signal1::B
        }
    }
}

impl Signal2 {
    pub const BOTH: [Signal2; 2] = [Signal2::A, Signal2::B];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn predicts_one(self) -> bool {
        self == Signal2::A
    }

    pub fn from_prediction(one: bool) -> Signal2 {
        if one {
            Signal2::A
        } else {
            Signal2::B
        }
    }
}

impl fmt::Display for Signal1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Signal1::A => "A",
            Signal1::B => "B",
        })
    }
}

impl fmt::Display for Signal2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Signal2::A => "a",
            Signal2::B => "b",
        })
    }
}

/// Key of one cell, rendered as e.g. `Aa1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey {
    pub x1: Signal1,
    pub x2: Signal2,
    pub t: Label,
}

impl CellKey {
    /// All eight cells in canonical order (`Aa1, Ab1, Ba1, Bb1, Aa0, Ab0, Ba0, Bb0`).
    pub fn all() -> [CellKey; 8] {
        let mut out = [CellKey {
            x1: Signal1::A,
            x2: Signal2::A,
            t: Label::One,
        }; 8];
        let mut i = 0;
        for t in [Label::One, Label::Zero] {
            for x1 in Signal1::BOTH {
                for x2 in Signal2::BOTH {
                    out[i] = CellKey { x1, x2, t };
                    i += 1;
                }
            }
        }
        out
    }
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.x1, self.x2, self.t)
    }
}

impl FromStr for CellKey {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let b = s.as_bytes();
        if b.len() != 3 {
            return Err(Error::Parse(format!("bad cell key '{s}'")));
        }
        let x1 = match b[0] {
            b'A' => Signal1::A,
            b'B' => Signal1::B,
            _ => return Err(Error::Parse(format!("bad firm-1 signal in '{s}'"))),
        };
        let x2 = match b[1] {
            b'a' => Signal2::A,
            b'b' => Signal2::B,
            _ => return Err(Error::Parse(format!("bad firm-2 signal in '{s}'"))),
        };
        let t = match b[2] {
            b'0' => Label::Zero,
            b'1' => Label::One,
            _ => return Err(Error::Parse(format!("bad label in '{s}'"))),
        };
        Ok(CellKey { x1, x2, t })
    }
}

/// Probabilities over the eight `(X, x, t)` cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointSignalDistribution {
    cells: [[[f64; 2]; 2]; 2],
}

impl JointSignalDistribution {
    /// Validates nonnegativity (with clamping of tiny negatives) and unit mass.
    pub fn new(mut cells: [[[f64; 2]; 2]; 2]) -> Result<Self> {
        let mut sum = 0.0;
        for x1 in Signal1::BOTH {
            for x2 in Signal2::BOTH {
                for t in Label::BOTH {
                    let v = &mut cells[x1.index()][x2.index()][t.index()];
                    if !v.is_finite() || *v < -FEASIBILITY_TOL {
                        return Err(Error::InvalidParameter(format!(
                            "cell {} = {v} is negative",
                            CellKey { x1, x2, t }
                        )));
                    }
                    if *v < 0.0 {
                        *v = 0.0;
                    }
                    sum += *v;
                }
            }
        }
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidParameter(format!(
                "joint cells sum to {sum}, not 1"
            )));
        }
        Ok(JointSignalDistribution { cells })
    }

    pub fn from_fn(mut f: impl FnMut(CellKey) -> f64) -> Result<Self> {
        let mut cells = [[[0.0; 2]; 2]; 2];
        for k in CellKey::all() {
            cells[k.x1.index()][k.x2.index()][k.t.index()] = f(k);
        }
        Self::new(cells)
    }

    pub fn prob(&self, x1: Signal1, x2: Signal2, t: Label) -> f64 {
        self.cells[x1.index()][x2.index()][t.index()]
    }

    pub fn cell(&self, key: CellKey) -> f64 {
        self.prob(key.x1, key.x2, key.t)
    }

    /// `(key, probability)` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (CellKey, f64)> + '_ {
        CellKey::all().into_iter().map(move |k| (k, self.cell(k)))
    }

    pub fn label_prob(&self, t: Label) -> f64 {
        self.iter().filter(|(k, _)| k.t == t).map(|(_, p)| p).sum()
    }

    /// `Pr[X = x1 | t]`.
    pub fn firm1_given(&self, x1: Signal1, t: Label) -> f64 {
        let pt = self.label_prob(t);
        Signal2::BOTH.iter().map(|&x2| self.prob(x1, x2, t)).sum::<f64>() / pt
    }

    /// `Pr[x = x2 | t]`.
    pub fn firm2_given(&self, x2: Signal2, t: Label) -> f64 {
        let pt = self.label_prob(t);
        Signal1::BOTH.iter().map(|&x1| self.prob(x1, x2, t)).sum::<f64>() / pt
    }

    /// `Pr[X = x1, t]` summed over firm 2's signal.
    pub fn firm1_marginal(&self, x1: Signal1, t: Label) -> f64 {
        Signal2::BOTH.iter().map(|&x2| self.prob(x1, x2, t)).sum()
    }

    /// `Pr[x = x2, t]` summed over firm 1's signal.
    pub fn firm2_marginal(&self, x2: Signal2, t: Label) -> f64 {
        Signal1::BOTH.iter().map(|&x1| self.prob(x1, x2, t)).sum()
    }

    pub fn firm1_signal_prob(&self, x1: Signal1) -> f64 {
        Label::BOTH.iter().map(|&t| self.firm1_marginal(x1, t)).sum()
    }

    pub fn firm2_signal_prob(&self, x2: Signal2) -> f64 {
        Label::BOTH.iter().map(|&t| self.firm2_marginal(x2, t)).sum()
    }

    /// Weighted mixture of joints. Weights must sum to one.
    pub fn mixture(parts: &[(f64, JointSignalDistribution)]) -> Result<Self> {
        Self::from_fn(|k| parts.iter().map(|(w, j)| w * j.cell(k)).sum())
    }

    /// Largest absolute cell difference.
    pub fn max_abs_diff(&self, other: &JointSignalDistribution) -> f64 {
        CellKey::all()
            .into_iter()
            .map(|k| (self.cell(k) - other.cell(k)).abs())
            .fold(0.0, f64::max)
    }

    /// Eight-row CSV with header `X,x,t,prob`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("X,x,t,prob\n");
        for (k, p) in self.iter() {
            out.push_str(&format!("{},{},{},{}\n", k.x1, k.x2, k.t, render_f64(p)));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut cells = [[[f64::NAN; 2]; 2]; 2];
        let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some(h) if h.trim() == "X,x,t,prob" => {}
            other => return Err(Error::Parse(format!("unexpected CSV header {other:?}"))),
        }
        let mut seen = 0;
        for line in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(Error::Parse(format!("bad CSV row '{line}'")));
            }
            let key: CellKey = format!("{}{}{}", fields[0], fields[1], fields[2]).parse()?;
            let p: f64 = fields[3]
                .parse()
                .map_err(|e| Error::Parse(format!("bad probability '{}': {e}", fields[3])))?;
            let slot = &mut cells[key.x1.index()][key.x2.index()][key.t.index()];
            if !slot.is_nan() {
                return Err(Error::Parse(format!("duplicate cell {key}")));
            }
            *slot = p;
            seen += 1;
        }
        if seen != 8 {
            return Err(Error::Parse(format!("expected 8 cells, found {seen}")));
        }
        Self::new(cells)
    }

    /// JSON object keyed `Aa1 .. Bb0` with 17 significant digits per value.
    pub fn to_json_string(&self) -> String {
        let body: Vec<String> = self
            .iter()
            .map(|(k, p)| format!("\"{k}\":{}", render_f64(p)))
            .collect();
        format!("{{{}}}", body.join(","))
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Decimal rendering with 17 significant digits; round-trips every `f64`.
pub fn render_f64(v: f64) -> String {
    format!("{v:.16e}")
}

impl Serialize for JointSignalDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(8))?;
        for (k, p) in self.iter() {
            m.serialize_entry(&k.to_string(), &p)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for JointSignalDistribution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = JointSignalDistribution;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object keyed Aa1..Bb0")
            }
            fn visit_map<M: MapAccess<'de>>(self, mut map: M) -> std::result::Result<Self::Value, M::Error> {
                let mut cells = [[[f64::NAN; 2]; 2]; 2];
                while let Some((k, v)) = map.next_entry::<String, f64>()? {
                    let key: CellKey = k.parse().map_err(de::Error::custom)?;
                    cells[key.x1.index()][key.x2.index()][key.t.index()] = v;
                }
                if cells.iter().flatten().flatten().any(|v| v.is_nan()) {
                    return Err(de::Error::custom("missing cells"));
                }
                JointSignalDistribution::new(cells).map_err(de::Error::custom)
            }
        }
        d.deserialize_map(V)
    }
}

fn check_accuracies(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha.is_finite() && beta.is_finite() && 0.5 <= beta && beta <= alpha && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "accuracies must satisfy 1/2 <= β <= α <= 1, got α = {alpha}, β = {beta}"
        )));
    }
    Ok(())
}

/// `Pr[X = A, x = a | 1]` for accuracies `α, β` and correlation `θ`.
pub fn overlap_mass(alpha: f64, beta: f64, theta: f64) -> f64 {
    let ab = (alpha * beta).sqrt();
    ab * (ab + theta * ((1.0 - alpha) * (1.0 - beta)).sqrt())
}

/// Joint of the correlation model with `Pr[0] = Pr[1] = 1/2`.
///
/// Under label 1, `Pr[Aa|1] = ρ`, `Pr[Ab|1] = α − ρ`, `Pr[Ba|1] = β − ρ` and
/// `Pr[Bb|1]` is the remainder. Label 0 is the mirror image (`Bb ↔ Aa`).
pub fn joint_from_correlation(alpha: f64, beta: f64, theta: f64) -> Result<JointSignalDistribution> {
    check_accuracies(alpha, beta)?;
    if !theta.is_finite() {
        return Err(Error::InvalidParameter(format!("θ must be finite, got {theta}")));
    }
    let rho = overlap_mass(alpha, beta, theta);
    let given_one = [
        (Signal1::A, Signal2::A, rho),
        (Signal1::A, Signal2::B, alpha - rho),
        (Signal1::B, Signal2::A, beta - rho),
        (Signal1::B, Signal2::B, 1.0 - alpha - beta + rho),
    ];
    let mut cells = [[[0.0; 2]; 2]; 2];
    for (x1, x2, p) in given_one {
        if p < -FEASIBILITY_TOL {
            return Err(Error::InfeasibleCorrelation {
                alpha,
                beta,
                theta,
                cell: format!("{x1}{x2}|1"),
                value: p,
            });
        }
        let p = p.max(0.0);
        cells[x1.index()][x2.index()][Label::One.index()] = 0.5 * p;
        // mirror: flip both signals under label 0
        let (m1, m2) = (other1(x1), other2(x2));
        cells[m1.index()][m2.index()][Label::Zero.index()] = 0.5 * p;
    }
    JointSignalDistribution::new(cells)
}

fn other1(s: Signal1) -> Signal1 {
    match s {
        Signal1::A => Signal1::B,
        Signal1::B => Signal1::A,
    }
}

fn other2(s: Signal2) -> Signal2 {
    match s {
        Signal2::A => Signal2::B,
        Signal2::B => Signal2::A,
    }
}

/// Largest feasible correlation for accuracies `α ≥ β`.
pub fn theta_max(alpha: f64, beta: f64) -> f64 {
    if alpha >= 1.0 && beta >= 1.0 {
        return 1.0;
    }
    (beta * (1.0 - alpha) / (alpha * (1.0 - beta))).sqrt()
}

/// Smallest feasible correlation (keeps `Pr[Bb|1] ≥ 0`).
pub fn theta_min(alpha: f64, beta: f64) -> f64 {
    if alpha >= 1.0 || beta >= 1.0 {
        return 0.0;
    }
    -((1.0 - alpha) * (1.0 - beta) / (alpha * beta)).sqrt()
}

/// Per-label Pearson correlation `(θ0, θ1)` of the two signals.
pub fn correlation_of(joint: &JointSignalDistribution) -> Result<(f64, f64)> {
    let mut out = [0.0; 2];
    for t in Label::BOTH {
        if joint.label_prob(t) <= 0.0 {
            return Err(Error::DegenerateMarginal(format!("Pr[t = {t}] = 0")));
        }
        let p1 = joint.firm1_given(Signal1::A, t);
        let p2 = joint.firm2_given(Signal2::A, t);
        let var = p1 * (1.0 - p1) * p2 * (1.0 - p2);
        if var <= 0.0 {
            return Err(Error::DegenerateMarginal(format!(
                "Pr[A|{t}] = {p1}, Pr[a|{t}] = {p2}"
            )));
        }
        let both = joint.prob(Signal1::A, Signal2::A, t) / joint.label_prob(t);
        out[t.index()] = (both - p1 * p2) / var.sqrt();
    }
    Ok((out[0], out[1]))
}

/// Finite-support prior over correlations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaPrior {
    support: Vec<(f64, f64)>,
}

impl ThetaPrior {
    /// `support` lists `(θ, weight)`; weights must be positive and sum to one.
    pub fn new(support: Vec<(f64, f64)>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidParameter("θ prior has empty support".into()));
        }
        if let Some((_, w)) = support.iter().find(|(_, w)| !(*w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "θ prior weights must be positive, got {w}"
            )));
        }
        let total: f64 = support.iter().map(|(_, w)| w).sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidParameter(format!(
                "θ prior weights sum to {total}, not 1"
            )));
        }
        Ok(ThetaPrior { support })
    }

    pub fn point(theta: f64) -> Self {
        ThetaPrior {
            support: vec![(theta, 1.0)],
        }
    }

    /// `θa` with weight `w`, `θb` with weight `1 − w`.
    pub fn two_point(theta_a: f64, theta_b: f64, w: f64) -> Result<Self> {
        Self::new(vec![(theta_a, w), (theta_b, 1.0 - w)])
    }

    pub fn support(&self) -> &[(f64, f64)] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

/// Accuracies, correlation prior and utilities of the correlation model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationModelSpec {
    pub alpha: f64,
    pub beta: f64,
    pub theta_prior: ThetaPrior,
    pub utility: UtilityFamily,
}

impl CorrelationModelSpec {
    pub fn new(alpha: f64, beta: f64, theta_prior: ThetaPrior, utility: UtilityFamily) -> Result<Self> {
        check_accuracies(alpha, beta)?;
        for &(theta, _) in theta_prior.support() {
            joint_from_correlation(alpha, beta, theta)?;
        }
        Ok(CorrelationModelSpec {
            alpha,
            beta,
            theta_prior,
            utility,
        })
    }

    /// Joint for each support point, paired with its weight.
    pub fn joints(&self) -> Vec<(f64, f64, JointSignalDistribution)> {
        self.theta_prior
            .support()
            .iter()
            .map(|&(theta, w)| {
                let j = joint_from_correlation(self.alpha, self.beta, theta)
                    .expect("feasibility checked at construction");
                (theta, w, j)
            })
            .collect()
    }

    /// Prior-weighted mixture of the per-θ joints.
    pub fn mixed_joint(&self) -> JointSignalDistribution {
        let parts: Vec<_> = self.joints().into_iter().map(|(_, w, j)| (w, j)).collect();
        JointSignalDistribution::mixture(&parts).expect("mixture of valid joints")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Hypothesis {
    I,
    II,
}

impl Hypothesis {
    pub const BOTH: [Hypothesis; 2] = [Hypothesis::I, Hypothesis::II];
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::I => "I",
            Hypothesis::II => "II",
        })
    }
}

/// How the second hypothesis rearranges the first one's cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisLayout {
    /// Mutations swap roles wherever the environmental cause is present:
    /// `(A,a,·) ↔ (B,a,·)`. Cells with `x = b` are shared by both hypotheses.
    #[default]
    SwapOnCause,
    /// Only the label-1 mass moves, from `(A,a,1)` to `(B,a,1)`.
    SwapPositivesOnly,
}

/// Parameters of the two-hypotheses model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoHypothesesSpec {
    pub pi_i: f64,
    pub kappa: f64,
    pub lambda: f64,
    pub mu: f64,
    pub utility: UtilityFamily,
    #[serde(default)]
    pub layout: HypothesisLayout,
}

impl TwoHypothesesSpec {
    pub fn new(pi_i: f64, kappa: f64, lambda: f64, mu: f64, utility: UtilityFamily) -> Result<Self> {
        let unit = |v: f64| v.is_finite() && (0.0..=1.0).contains(&v);
        if !unit(pi_i) {
            return Err(Error::InvalidParameter(format!("π_I must lie in [0,1], got {pi_i}")));
        }
        if !(kappa > 0.0 && kappa < 1.0) {
            return Err(Error::InvalidParameter(format!("κ must lie in (0,1), got {kappa}")));
        }
        if !unit(lambda) || !unit(mu) || lambda + mu > 1.0 {
            return Err(Error::InvalidParameter(format!(
                "λ, μ must lie in [0,1] with λ + μ ≤ 1, got λ = {lambda}, μ = {mu}"
            )));
        }
        Ok(TwoHypothesesSpec {
            pi_i,
            kappa,
            lambda,
            mu,
            utility,
            layout: HypothesisLayout::default(),
        })
    }

    /// Matching-recommendation utilities, the family every result in this model uses.
    pub fn matching(pi_i: f64, kappa: f64, lambda: f64, mu: f64) -> Result<Self> {
        Self::new(pi_i, kappa, lambda, mu, UtilityFamily::matching_recommendations())
    }

    pub fn with_layout(mut self, layout: HypothesisLayout) -> Self {
        self.layout = layout;
        self
    }

    pub fn prior(&self, h: Hypothesis) -> f64 {
        match h {
            Hypothesis::I => self.pi_i,
            Hypothesis::II => 1.0 - self.pi_i,
        }
    }
}

/// Joint of `(X, x, t)` under hypothesis `hyp`.
pub fn two_hypotheses_joint(spec: &TwoHypothesesSpec, hyp: Hypothesis) -> JointSignalDistribution {
    let (k, l, m) = (spec.kappa, spec.lambda, spec.mu);
    let mut cells = [[[0.0; 2]; 2]; 2];
    let mut set = |x1: Signal1, x2: Signal2, t: Label, p: f64| {
        cells[x1.index()][x2.index()][t.index()] = p;
    };
    set(Signal1::A, Signal2::B, Label::Zero, (1.0 - k) * l);
    set(Signal1::B, Signal2::B, Label::Zero, (1.0 - k) * (1.0 - l - m));
    match (hyp, spec.layout) {
        (Hypothesis::I, _) => {
            set(Signal1::A, Signal2::A, Label::One, k);
            set(Signal1::B, Signal2::A, Label::Zero, (1.0 - k) * m);
        }
        (Hypothesis::II, HypothesisLayout::SwapOnCause) => {
            set(Signal1::B, Signal2::A, Label::One, k);
            set(Signal1::A, Signal2::A, Label::Zero, (1.0 - k) * m);
        }
        (Hypothesis::II, HypothesisLayout::SwapPositivesOnly) => {
            set(Signal1::B, Signal2::A, Label::One, k);
            set(Signal1::B, Signal2::A, Label::Zero, (1.0 - k) * m);
        }
    }
    JointSignalDistribution::new(cells).expect("spec invariants keep cells valid")
}

/// A firm's own training observation: its signal and the true label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OwnSample {
    Firm1(Signal1, Label),
    Firm2(Signal2, Label),
}

impl OwnSample {
    pub fn player(&self) -> Player {
        match self {
            OwnSample::Firm1(..) => Player::One,
            OwnSample::Firm2(..) => Player::Two,
        }
    }

    pub fn prob_under(&self, joint: &JointSignalDistribution) -> f64 {
        match *self {
            OwnSample::Firm1(x1, t) => joint.firm1_marginal(x1, t),
            OwnSample::Firm2(x2, t) => joint.firm2_marginal(x2, t),
        }
    }
}

impl fmt::Display for OwnSample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OwnSample::Firm1(s, t) => write!(f, "({s},{t})"),
            OwnSample::Firm2(s, t) => write!(f, "({s},{t})"),
        }
    }
}

/// Posterior probability of hypothesis I.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypPosterior {
    pub prob_hyp_i: f64,
}

/// Bayes update of `π_I` after a firm observes one of its own `(signal, label)` samples.
pub fn posterior_given_sample(spec: &TwoHypothesesSpec, sample: OwnSample) -> Result<HypPosterior> {
    let like_i = sample.prob_under(&two_hypotheses_joint(spec, Hypothesis::I));
    let like_ii = sample.prob_under(&two_hypotheses_joint(spec, Hypothesis::II));
    let num = spec.pi_i * like_i;
    let den = num + (1.0 - spec.pi_i) * like_ii;
    if den <= 0.0 {
        return Err(Error::ZeroProbabilitySample(sample.to_string()));
    }
    Ok(HypPosterior { prob_hyp_i: num / den })
}
