//! Interval worlds: realizing an unknown correlation as signal spaces on `[0, 1)`.
//!
//! A world `w(η, θ)` places firm 1's label-1 `A` set at the arc `[η, η + α)`
//! and firm 2's label-1 `a` set at the arc starting `ρ` before the end of
//! firm 1's, so that the two overlap in exactly `ρ = Pr[Aa | 1]`. Label-0
//! sets are the complements. Drawing `η` uniformly hides `θ` from each firm's
//! own interval structure: a firm that learns its own arcs still holds the
//! prior over `θ`.
//!
//! All arcs are half-open and taken modulo 1.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::distributions::{
    joint_from_correlation, overlap_mass, CellKey, JointSignalDistribution, Signal1, Signal2, ThetaPrior,
};
use crate::error::{Error, Result};
use crate::utility::{Label, Player};

/// Equal-width bins for the offset uniformity tests.
pub const OFFSET_BINS: usize = 20;
/// Largest acceptable max-norm gap between the sampled and analytic joint.
pub const DEVIATION_BOUND: f64 = 3e-3;
/// Significance level of the uniformity tests.
pub const SIGNIFICANCE: f64 = 1e-3;
/// Fewest samples `validate_family` accepts.
pub const MIN_SAMPLES: usize = 100_000;

const SHARDS: usize = 64;

fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// Union of disjoint half-open subintervals of `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalSet {
    pieces: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { pieces: Vec::new() }
    }

    /// The arc of length `len` starting at `start`, wrapping past 1.
    pub fn arc(start: f64, len: f64) -> Self {
        let start = frac(start);
        let len = len.clamp(0.0, 1.0);
        let pieces = if len <= 0.0 {
            Vec::new()
        } else if len >= 1.0 {
            vec![(0.0, 1.0)]
        } else if start + len <= 1.0 {
            vec![(start, start + len)]
        } else {
            vec![(start, 1.0), (0.0, start + len - 1.0)]
        };
        IntervalSet { pieces }
    }

    pub fn pieces(&self) -> &[(f64, f64)] {
        &self.pieces
    }

    pub fn measure(&self) -> f64 {
        self.pieces.iter().map(|(lo, hi)| hi - lo).sum()
    }

    pub fn contains(&self, z: f64) -> bool {
        self.pieces.iter().any(|&(lo, hi)| lo <= z && z < hi)
    }

    pub fn intersection_measure(&self, other: &IntervalSet) -> f64 {
        let mut m = 0.0;
        for &(a0, a1) in &self.pieces {
            for &(b0, b1) in &other.pieces {
                m += (a1.min(b1) - a0.max(b0)).max(0.0);
            }
        }
        m
    }

    /// Complement within `[0, 1)`.
    pub fn complement(&self) -> Self {
        let mut sorted = self.pieces.clone();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out = Vec::new();
        let mut cursor = 0.0;
        for (lo, hi) in sorted {
            if lo > cursor {
                out.push((cursor, lo));
            }
            cursor = cursor.max(hi);
        }
        if cursor < 1.0 {
            out.push((cursor, 1.0));
        }
        IntervalSet { pieces: out }
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.pieces.iter().map(|(lo, hi)| format!("[{lo:.4}, {hi:.4})")).collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

/// Both firms' signal spaces in one world.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalWorld {
    pub alpha: f64,
    pub beta: f64,
    /// Offset of firm 1's label-1 `A` arc; `None` for hand-built worlds.
    pub eta: Option<f64>,
    pub theta: f64,
    /// `Pr[Aa | 1]`, the overlap of the two label-1 sets.
    pub rho: f64,
    /// Firm 1's `A` set, indexed by label.
    pub firm1_sets: [IntervalSet; 2],
    /// Firm 2's `a` set, indexed by label.
    pub firm2_sets: [IntervalSet; 2],
}

/// World `w(η, θ)` for accuracies `α ≥ β`.
pub fn build_interval_world(alpha: f64, beta: f64, theta: f64, eta: f64) -> Result<IntervalWorld> {
    joint_from_correlation(alpha, beta, theta)?;
    if !(0.0..1.0).contains(&eta) {
        return Err(Error::InvalidParameter(format!("η must lie in [0, 1), got {eta}")));
    }
    let rho = overlap_mass(alpha, beta, theta);
    let a1 = IntervalSet::arc(eta, alpha);
    let e1 = IntervalSet::arc(eta + alpha - rho, beta);
    Ok(IntervalWorld {
        alpha,
        beta,
        eta: Some(eta),
        theta,
        rho,
        firm1_sets: [a1.complement(), a1],
        firm2_sets: [e1.complement(), e1],
    })
}

impl IntervalWorld {
    /// World from arbitrary label-1 sets; label-0 sets are their complements
    /// and `α`, `β`, `ρ`, `θ` are read off the measures.
    pub fn from_label_one_sets(firm1: IntervalSet, firm2: IntervalSet) -> Result<Self> {
        let (alpha, beta) = (firm1.measure(), firm2.measure());
        let rho = firm1.intersection_measure(&firm2);
        let denom = (alpha * beta * (1.0 - alpha) * (1.0 - beta)).sqrt();
        if denom <= 0.0 {
            return Err(Error::DegenerateMarginal(format!("α = {alpha}, β = {beta}")));
        }
        Ok(IntervalWorld {
            alpha,
            beta,
            eta: None,
            theta: (rho - alpha * beta) / denom,
            rho,
            firm1_sets: [firm1.complement(), firm1],
            firm2_sets: [firm2.complement(), firm2],
        })
    }

    /// Where firm 2's label-1 arc starts, `frac(η + α − ρ)`.
    pub fn firm2_start(&self) -> Option<f64> {
        self.eta.map(|eta| frac(eta + self.alpha - self.rho))
    }

    /// Signals the firms receive at position `zeta` when the label is `t`.
    pub fn sample_signals(&self, zeta: f64, t: Label) -> (Signal1, Signal2) {
        (
            Signal1::from_prediction(self.firm1_sets[t.index()].contains(zeta)),
            Signal2::from_prediction(self.firm2_sets[t.index()].contains(zeta)),
        )
    }

    /// Conditional cell probabilities implied by the sets, with `Pr[t] = 1/2`.
    pub fn joint(&self) -> Result<JointSignalDistribution> {
        JointSignalDistribution::from_fn(|k| {
            let i = k.t.index();
            let s1 = match k.x1 {
                Signal1::A => self.firm1_sets[i].clone(),
                Signal1::B => self.firm1_sets[i].complement(),
            };
            let s2 = match k.x2 {
                Signal2::A => self.firm2_sets[i].clone(),
                Signal2::B => self.firm2_sets[i].complement(),
            };
            0.5 * s1.intersection_measure(&s2)
        })
    }

    /// Text diagram of the arcs per firm and label.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(eta) = self.eta {
            out.push_str(&format!("η = {eta:.4}, "));
        }
        out.push_str(&format!(
            "θ = {:.4}, ρ = {:.4}, α = {:.4}, β = {:.4}\n",
            self.theta, self.rho, self.alpha, self.beta
        ));
        for t in [Label::One, Label::Zero] {
            out.push_str(&format!("  t={t}  firm 1 A: {}\n", self.firm1_sets[t.index()]));
            out.push_str(&format!("  t={t}  firm 2 a: {}\n", self.firm2_sets[t.index()]));
        }
        out
    }
}

impl fmt::Display for IntervalWorld {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Accuracies and correlation prior from which worlds `w(η, θ)` are drawn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldFamily {
    pub alpha: f64,
    pub beta: f64,
    pub theta_prior: ThetaPrior,
}

impl WorldFamily {
    pub fn new(alpha: f64, beta: f64, theta_prior: ThetaPrior) -> Result<Self> {
        for &(theta, _) in theta_prior.support() {
            joint_from_correlation(alpha, beta, theta)?;
        }
        Ok(WorldFamily {
            alpha,
            beta,
            theta_prior,
        })
    }

    fn rhos(&self) -> Vec<f64> {
        self.theta_prior
            .support()
            .iter()
            .map(|&(th, _)| overlap_mass(self.alpha, self.beta, th))
            .collect()
    }

    fn mixed_joint(&self) -> JointSignalDistribution {
        let parts: Vec<_> = self
            .theta_prior
            .support()
            .iter()
            .map(|&(th, w)| (w, joint_from_correlation(self.alpha, self.beta, th).expect("checked")))
            .collect();
        JointSignalDistribution::mixture(&parts).expect("valid mixture")
    }
}

/// How the offset `η` is drawn during validation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OffsetScheme {
    Uniform,
    /// Every world uses the same `η`; each `θ` then has its own fixed layout.
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub n: u64,
}

impl ChiSquareTest {
    /// Goodness of fit of `counts` to equal bins.
    pub fn uniform(counts: &[u64]) -> Self {
        let n: u64 = counts.iter().sum();
        let expected = n as f64 / counts.len() as f64;
        let statistic = if n == 0 {
            0.0
        } else {
            counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum()
        };
        let dof = counts.len() - 1;
        let p_value = if n == 0 {
            1.0
        } else {
            ChiSquared::new(dof as f64).expect("positive dof").sf(statistic)
        };
        ChiSquareTest {
            statistic,
            dof,
            p_value,
            n,
        }
    }

    pub fn passes(&self, significance: f64) -> bool {
        self.p_value > significance
    }
}

/// Offset uniformity for one support point of the prior.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaUniformity {
    pub theta: f64,
    pub firm1_start: ChiSquareTest,
    pub firm2_start: ChiSquareTest,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub n_samples: usize,
    pub seed: u64,
    pub empirical: JointSignalDistribution,
    pub analytic: JointSignalDistribution,
    pub max_deviation: f64,
    /// Firm 2's arc start over all draws.
    pub firm2_start: ChiSquareTest,
    pub per_theta: Vec<ThetaUniformity>,
    pub deviation_ok: bool,
    pub uniformity_ok: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.deviation_ok && self.uniformity_ok
    }
}

#[derive(Clone)]
struct Tally {
    cells: [u64; 8],
    firm2_all: Vec<u64>,
    firm1_by_theta: Vec<Vec<u64>>,
    firm2_by_theta: Vec<Vec<u64>>,
}

impl Tally {
    fn new(k: usize) -> Self {
        Tally {
            cells: [0; 8],
            firm2_all: vec![0; OFFSET_BINS],
            firm1_by_theta: vec![vec![0; OFFSET_BINS]; k],
            firm2_by_theta: vec![vec![0; OFFSET_BINS]; k],
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.cells.iter_mut().zip(other.cells) {
            *a += b;
        }
        add(&mut self.firm2_all, &other.firm2_all);
        for (a, b) in self.firm1_by_theta.iter_mut().zip(&other.firm1_by_theta) {
            add(a, b);
        }
        for (a, b) in self.firm2_by_theta.iter_mut().zip(&other.firm2_by_theta) {
            add(a, b);
        }
        self
    }
}

fn add(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

fn bin(x: f64) -> usize {
    ((x * OFFSET_BINS as f64) as usize).min(OFFSET_BINS - 1)
}

fn cell_slot(k: CellKey) -> usize {
    CellKey::all().iter().position(|&c| c == k).expect("canonical key")
}

/// Monte Carlo check of the construction with uniform offsets.
pub fn validate_family(family: &WorldFamily, n_samples: usize, seed: u64) -> Result<ValidationReport> {
    validate_family_with(family, n_samples, seed, OffsetScheme::Uniform)
}

/// Draws `(θ, η, t, ζ)` in deterministic shards, compares the sampled joint to
/// the analytic mixture and tests each firm's arc start for uniformity, overall
/// and per `θ`.
pub fn validate_family_with(
    family: &WorldFamily,
    n_samples: usize,
    seed: u64,
    offsets: OffsetScheme,
) -> Result<ValidationReport> {
    if n_samples < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "validation needs at least {MIN_SAMPLES} samples, got {n_samples}"
        )));
    }
    if let OffsetScheme::Fixed(eta) = offsets {
        if !(0.0..1.0).contains(&eta) {
            return Err(Error::InvalidParameter(format!("η must lie in [0, 1), got {eta}")));
        }
    }
    let support = family.theta_prior.support().to_vec();
    let rhos = family.rhos();
    let k = support.len();
    let (alpha, beta) = (family.alpha, family.beta);

    let tally = (0..SHARDS)
        .into_par_iter()
        .map(|shard| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard as u64);
            let n = n_samples / SHARDS + usize::from(shard < n_samples % SHARDS);
            let mut tally = Tally::new(k);
            for _ in 0..n {
                let u: f64 = rng.random();
                let mut acc = 0.0;
                let mut j = k - 1;
                for (idx, &(_, w)) in support.iter().enumerate() {
                    acc += w;
                    if u < acc {
                        j = idx;
                        break;
                    }
                }
                let eta = match offsets {
                    OffsetScheme::Uniform => rng.random::<f64>(),
                    OffsetScheme::Fixed(eta) => eta,
                };
                let t = Label::from_bool(rng.random_bool(0.5));
                let zeta: f64 = rng.random();
                let rho = rhos[j];
                let a1 = IntervalSet::arc(eta, alpha);
                let start2 = frac(eta + alpha - rho);
                let e1 = IntervalSet::arc(start2, beta);
                let (in1, in2) = (a1.contains(zeta), e1.contains(zeta));
                // label-0 sets are the complements
                let (x1, x2) = match t {
                    Label::One => (in1, in2),
                    Label::Zero => (!in1, !in2),
                };
                let key = CellKey {
                    x1: Signal1::from_prediction(x1),
                    x2: Signal2::from_prediction(x2),
                    t,
                };
                tally.cells[cell_slot(key)] += 1;
                tally.firm2_all[bin(start2)] += 1;
                tally.firm1_by_theta[j][bin(eta)] += 1;
                tally.firm2_by_theta[j][bin(start2)] += 1;
            }
            tally
        })
        .reduce(|| Tally::new(k), Tally::merge);

    let total = n_samples as f64;
    let empirical = JointSignalDistribution::from_fn(|c| tally.cells[cell_slot(c)] as f64 / total)?;
    let analytic = family.mixed_joint();
    let max_deviation = empirical.max_abs_diff(&analytic);
    let firm2_start = ChiSquareTest::uniform(&tally.firm2_all);
    let per_theta: Vec<ThetaUniformity> = support
        .iter()
        .enumerate()
        .map(|(j, &(theta, _))| ThetaUniformity {
            theta,
            firm1_start: ChiSquareTest::uniform(&tally.firm1_by_theta[j]),
            firm2_start: ChiSquareTest::uniform(&tally.firm2_by_theta[j]),
        })
        .collect();
    let uniformity_ok = firm2_start.passes(SIGNIFICANCE)
        && per_theta
            .iter()
            .all(|u| u.firm1_start.passes(SIGNIFICANCE) && u.firm2_start.passes(SIGNIFICANCE));
    Ok(ValidationReport {
        n_samples,
        seed,
        empirical,
        analytic,
        max_deviation,
        firm2_start,
        per_theta,
        deviation_ok: max_deviation < DEVIATION_BOUND,
        uniformity_ok,
    })
}

/// A finite list of worlds with probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteWorldFamily {
    pub worlds: Vec<(f64, IntervalWorld)>,
}

impl FiniteWorldFamily {
    /// Posterior over `θ` for each distinct own layout of `player`, as
    /// `(layout, [(θ, probability)])`. `θ` values within `1e-9` are merged.
    pub fn posteriors(&self, player: Player) -> Vec<(IntervalSet, Vec<(f64, f64)>)> {
        let mut out: Vec<(IntervalSet, Vec<(f64, f64)>)> = Vec::new();
        for (p, w) in &self.worlds {
            let layout = match player {
                Player::One => w.firm1_sets[1].clone(),
                Player::Two => w.firm2_sets[1].clone(),
            };
            let entry = match out.iter_mut().position(|(l, _)| *l == layout) {
                Some(i) => &mut out[i].1,
                None => {
                    out.push((layout, Vec::new()));
                    &mut out.last_mut().unwrap().1
                }
            };
            match entry.iter_mut().find(|(th, _)| (th - w.theta).abs() < 1e-9) {
                Some(slot) => slot.1 += p,
                None => entry.push((w.theta, *p)),
            }
        }
        for (_, post) in &mut out {
            let z: f64 = post.iter().map(|(_, p)| p).sum();
            for (_, p) in post.iter_mut() {
                *p /= z;
            }
        }
        out
    }

    /// Prior over `θ` across all worlds.
    pub fn theta_prior(&self) -> Vec<(f64, f64)> {
        let mut prior: Vec<(f64, f64)> = Vec::new();
        for (p, w) in &self.worlds {
            match prior.iter_mut().find(|(th, _)| (th - w.theta).abs() < 1e-9) {
                Some(slot) => slot.1 += p,
                None => prior.push((w.theta, *p)),
            }
        }
        prior
    }

    /// Whether every own layout of `player` leaves the prior over `θ` unchanged.
    pub fn preserves_prior(&self, player: Player, tol: f64) -> bool {
        let prior = self.theta_prior();
        self.posteriors(player).iter().all(|(_, post)| {
            prior.iter().all(|&(th, p)| {
                let q = post
                    .iter()
                    .find(|(t, _)| (t - th).abs() < 1e-9)
                    .map(|(_, q)| *q)
                    .unwrap_or(0.0);
                (q - p).abs() <= tol
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::theta_max;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn unwrapped_world() {
        let w = build_interval_world(0.7, 0.6, 0.0, 0.0).unwrap();
        assert_eq!(w.firm1_sets[1].pieces(), &[(0.0, 0.7)]);
        let e = w.firm2_sets[1].pieces();
        assert_eq!(e.len(), 1);
        assert_abs_diff_eq!(e[0].0, 0.28, epsilon = 1e-12);
        assert_abs_diff_eq!(e[0].1, 0.88, epsilon = 1e-12);
        assert_abs_diff_eq!(w.firm1_sets[1].intersection_measure(&w.firm2_sets[1]), 0.42, epsilon = 1e-12);
    }

    #[test]
    fn wrapped_world() {
        let w = build_interval_world(0.7, 0.6, 0.0, 0.9).unwrap();
        let p = w.firm1_sets[1].pieces();
        assert_eq!(p.len(), 2);
        assert_abs_diff_eq!(p[0].0, 0.9, epsilon = 1e-12);
        assert_eq!(p[0].1, 1.0);
        assert_eq!(p[1].0, 0.0);
        assert_abs_diff_eq!(p[1].1, 0.6, epsilon = 1e-12);
    }

    #[test]
    fn sampling_membership() {
        let w = build_interval_world(0.7, 0.6, 0.0, 0.0).unwrap();
        assert_eq!(w.sample_signals(0.1, Label::One), (Signal1::A, Signal2::B));
        assert_eq!(w.sample_signals(0.5, Label::One), (Signal1::A, Signal2::A));
        assert_eq!(w.sample_signals(0.95, Label::One), (Signal1::B, Signal2::B));
        assert_eq!(w.sample_signals(0.95, Label::Zero), (Signal1::A, Signal2::A));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(build_interval_world(0.7, 0.6, 0.95, 0.0).is_err());
        assert!(build_interval_world(0.7, 0.6, 0.0, 1.0).is_err());
        let f = WorldFamily::new(0.7, 0.6, ThetaPrior::point(0.0)).unwrap();
        assert!(validate_family(&f, 10, 1).is_err());
    }

    #[test]
    fn world_joint_matches_analytic() {
        for eta in [0.0, 0.3, 0.55, 0.9, 0.99] {
            for theta in [0.0, theta_max(0.7, 0.6) / 2.0, theta_max(0.7, 0.6)] {
                let w = build_interval_world(0.7, 0.6, theta, eta).unwrap();
                let analytic = joint_from_correlation(0.7, 0.6, theta).unwrap();
                assert!(w.joint().unwrap().max_abs_diff(&analytic) < 1e-12);
            }
        }
    }

    #[test]
    fn render_lists_every_arc() {
        let text = build_interval_world(0.7, 0.6, 0.0, 0.9).unwrap().render();
        assert_eq!(text.lines().count(), 5);
        assert!(text.contains("[0.9000, 1.0000) ∪ [0.0000, 0.6000)"));
    }

    #[test]
    fn point_prior_offset_is_uniform() {
        let f = WorldFamily::new(0.7, 0.6, ThetaPrior::point(0.0)).unwrap();
        let r = validate_family(&f, MIN_SAMPLES, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.per_theta.len(), 1);
    }

    #[test]
    fn fixed_offset_leaks_theta() {
        let prior = ThetaPrior::two_point(0.0, theta_max(0.7, 0.6), 0.5).unwrap();
        let f = WorldFamily::new(0.7, 0.6, prior).unwrap();
        let r = validate_family_with(&f, MIN_SAMPLES, 3, OffsetScheme::Fixed(0.0)).unwrap();
        assert!(r.deviation_ok);
        assert!(!r.uniformity_ok);
    }

    #[test]
    fn validation_is_deterministic() {
        let f = WorldFamily::new(0.8, 0.6, ThetaPrior::point(0.2)).unwrap();
        let a = validate_family(&f, MIN_SAMPLES, 9).unwrap();
        let b = validate_family(&f, MIN_SAMPLES, 9).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn measures_and_overlap(af in 0.0..1.0f64, bf in 0.0..1.0f64, tf in 0.0..=1.0f64, eta in 0.0..1.0f64) {
            let alpha = 0.5 + 0.49 * af;
            let beta = 0.5 + bf * (alpha - 0.5);
            let lo = crate::distributions::theta_min(alpha, beta);
            let theta = lo + tf * (theta_max(alpha, beta) - lo);
            let w = build_interval_world(alpha, beta, theta, eta).unwrap();
            prop_assert!((w.firm1_sets[1].measure() - alpha).abs() < 1e-12);
            prop_assert!((w.firm1_sets[0].measure() - (1.0 - alpha)).abs() < 1e-12);
            prop_assert!((w.firm2_sets[1].measure() - beta).abs() < 1e-12);
            prop_assert!((w.firm2_sets[0].measure() - (1.0 - beta)).abs() < 1e-12);
            prop_assert!((w.firm1_sets[1].intersection_measure(&w.firm2_sets[1]) - w.rho).abs() < 1e-12);
        }
    }
}
