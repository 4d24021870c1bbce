//! Acceptance battery: every structural claim about the model, checked at
//! concrete parameters or on seeded random instances.
//!
//! Each suite yields one [`CheckResult`] per claim. Suites with several
//! independent claims report them separately so a partial failure is visible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::contracts::{
    full_sharing_conditions, build_game, classify, known_corr_closed_form, known_correlation_model, one_sample_fs_firm2,
    pareto_dominates, ContractClassification, ModelSpec, ThresholdReading,
};
use crate::distributions::{
    correlation_of, joint_from_correlation, theta_max, theta_min, CorrelationModelSpec, ThetaPrior, TwoHypothesesSpec,
};
use crate::empirical::{self, generate_dataset, SyntheticDatasetSpec, TrainingConfig};
use crate::error::{Error, Result};
use crate::oracle::{naive_equilibria, random_game};
use crate::utility::{Contract, Player, UtilityFamily};
use crate::worlds::{validate_family, WorldFamily};

/// Absolute tolerance for closed-form utility comparisons.
pub const CLOSED_FORM_TOL: f64 = 1e-12;

/// Suite names in run order, with the acceptance criterion each one covers.
pub const SUITES: [(&str, u8); 12] = [
    ("correlation-roundtrip", 1),
    ("closed-form", 2),
    ("full-over-infer", 3),
    ("symmetric-cost", 4),
    ("symmetric-accuracy", 5),
    ("train-sharing-witness", 6),
    ("infer-sharing-witness", 7),
    ("one-sample-witness", 8),
    ("full-sharing-witness", 9),
    ("oracle", 10),
    ("worlds", 11),
    ("empirical", 12),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: String,
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl CheckResult {
    fn new(suite: &str, criterion: u8, name: &str, passed: bool, details: impl Into<String>) -> Self {
        CheckResult {
            suite: suite.into(),
            criterion,
            name: name.into(),
            passed,
            details: details.into(),
        }
    }

    /// `PASS [3] full-over-infer/...: details`
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {}/{}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.criterion,
            self.suite,
            self.name,
            self.details
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Run only these suites; empty runs all.
    pub only: Vec<String>,
    /// Threshold reading fed to the closed-form suite.
    pub reading: ThresholdReading,
    pub world_samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            only: Vec::new(),
            reading: ThresholdReading::AtLeastZero,
            world_samples: 1_000_000,
            seed: 2024,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// Whether every check of one criterion passed; `None` if none ran.
    pub fn criterion_passed(&self, criterion: u8) -> Option<bool> {
        let mut it = self.checks.iter().filter(|c| c.criterion == criterion).peekable();
        it.peek()?;
        Some(it.all(|c| c.passed))
    }
}

/// Runs the selected suites in order.
pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    for name in &opts.only {
        if !SUITES.iter().any(|(s, _)| s == name) {
            let known: Vec<&str> = SUITES.iter().map(|(s, _)| *s).collect();
            return Err(Error::InvalidParameter(format!(
                "unknown suite {name:?}; known suites: {}",
                known.join(", ")
            )));
        }
    }
    let mut checks = Vec::new();
    for (name, _) in SUITES {
        if opts.only.is_empty() || opts.only.iter().any(|o| o == name) {
            checks.extend(run_suite(name, opts)?);
        }
    }
    Ok(VerifyReport { checks })
}

/// Runs one suite by name.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    Ok(match name {
        "correlation-roundtrip" => vec![correlation_roundtrip()?],
        "closed-form" => vec![closed_form(opts.reading)?],
        "full-over-infer" => vec![full_over_infer(opts.seed)?],
        "symmetric-cost" => vec![symmetric_cost(opts.seed)?],
        "symmetric-accuracy" => vec![symmetric_accuracy(opts.seed)?],
        "train-sharing-witness" => vec![train_sharing_witness()?],
        "infer-sharing-witness" => infer_sharing_witness()?,
        "one-sample-witness" => one_sample_witness()?,
        "full-sharing-witness" => vec![full_sharing_witness()?],
        "oracle" => vec![oracle_equivalence()?],
        "worlds" => worlds(opts.world_samples, opts.seed)?,
        "empirical" => empirical_pipeline()?,
        _ => return Err(Error::InvalidParameter(format!("unknown suite {name:?}"))),
    })
}

/// `{0.5, 0.55, …, 0.95}`.
pub fn accuracy_grid() -> Vec<f64> {
    (10..20).map(|i| i as f64 / 20.0).collect()
}

/// `(α, β)` pairs of [`accuracy_grid`] with `β ≤ α`.
pub fn accuracy_pairs() -> Vec<(f64, f64)> {
    let g = accuracy_grid();
    g.iter()
        .flat_map(|&a| g.iter().filter(move |&&b| b <= a).map(move |&b| (a, b)))
        .collect()
}

/// Random correlation model: `α ∈ [0.5, 0.95]`, `β ∈ [0.5, α]`, a two-point
/// prior over feasible correlations, and significant-action utilities.
pub fn random_correlation_model<R: Rng + ?Sized>(rng: &mut R, r1: f64, c1: f64) -> Result<ModelSpec> {
    let alpha = rng.random_range(0.5..=0.95);
    let beta = rng.random_range(0.5..=alpha);
    random_correlation_model_at(rng, alpha, beta, r1, c1)
}

/// As [`random_correlation_model`] with fixed accuracies.
pub fn random_correlation_model_at<R: Rng + ?Sized>(
    rng: &mut R,
    alpha: f64,
    beta: f64,
    r1: f64,
    c1: f64,
) -> Result<ModelSpec> {
    let (lo, hi) = (theta_min(alpha, beta), theta_max(alpha, beta));
    let mut draw = || if hi > lo { rng.random_range(lo..=hi) } else { lo };
    let (ta, tb) = (draw(), draw());
    let w = rng.random_range(0.05..=0.95);
    let prior = if (ta - tb).abs() < 1e-12 {
        ThetaPrior::point(ta)
    } else {
        ThetaPrior::two_point(ta, tb, w)?
    };
    Ok(ModelSpec::Correlation(CorrelationModelSpec::new(
        alpha,
        beta,
        prior,
        UtilityFamily::significant_action(r1, c1)?,
    )?))
}

fn describe(model: &ModelSpec) -> String {
    match model {
        ModelSpec::Correlation(s) => {
            let p = s.utility.params();
            format!(
                "α={:.4} β={:.4} prior={:?} R1={:.4} c1={:.4}",
                s.alpha,
                s.beta,
                s.theta_prior.support(),
                p.r1,
                p.c1
            )
        }
        other => format!("{other:?}"),
    }
}

fn correlation_roundtrip() -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    let mut n = 0;
    for (a, b) in accuracy_pairs() {
        let tm = theta_max(a, b);
        for theta in [0.0, tm / 2.0, tm] {
            n += 1;
            let j = joint_from_correlation(a, b, theta)?;
            let nonneg = j.iter().all(|(_, p)| p >= 0.0);
            let sum: f64 = j.iter().map(|(_, p)| p).sum();
            let (t0, t1) = correlation_of(&j)?;
            let err = (t0 - theta).abs().max((t1 - theta).abs());
            worst = worst.max(err);
            if !nonneg || (sum - 1.0).abs() > CLOSED_FORM_TOL || err > CLOSED_FORM_TOL {
                failures.push(format!("(α={a}, β={b}, θ={theta}): sum {sum}, θ error {err:e}"));
            }
        }
    }
    Ok(CheckResult::new(
        "correlation-roundtrip",
        1,
        "joint-and-theta",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{n} joints, worst θ error {worst:.2e}")
        } else {
            failures.join("; ")
        },
    ))
}

fn closed_form(reading: ThresholdReading) -> Result<CheckResult> {
    let sym = UtilityFamily::significant_action(1.0, 1.0)?;
    let mut failures = Vec::new();
    let mut n = 0;
    for (a, b) in accuracy_pairs() {
        if (3.0 * b - a - 1.0).abs() < 1e-9 {
            continue;
        }
        let cf = known_corr_closed_form(a, b, reading)?;
        for theta in [0.0, theta_max(a, b)] {
            n += 1;
            let model = known_correlation_model(a, b, theta, sym)?;
            let ns = build_game(&model, Contract::NoSharing)?;
            let eqs = ns.enumerate_pure_equilibria()?;
            let here = format!("(α={a}, β={b}, θ={theta:.4})");
            let [eq] = eqs.as_slice() else {
                failures.push(format!("{here}: {} no-sharing equilibria", eqs.len()));
                continue;
            };
            if eq.s1 != cf.s1 || eq.s2 != cf.s2 {
                failures.push(format!("{here}: equilibrium ({}, {}) vs closed form ({}, {})", eq.s1, eq.s2, cf.s1, cf.s2));
                continue;
            }
            let u1 = ns.exante_utility(eq, Player::One)?;
            let u2 = ns.exante_utility(eq, Player::Two)?;
            if (u1 - cf.u1).abs() > CLOSED_FORM_TOL || (u2 - cf.u2).abs() > CLOSED_FORM_TOL {
                failures.push(format!("{here}: utilities ({u1}, {u2}) vs ({}, {})", cf.u1, cf.u2));
            }
            let fs = build_game(&model, Contract::FullSharing)?;
            let fs_eqs = fs.enumerate_pure_equilibria()?;
            let fs_ok = !fs_eqs.is_empty()
                && fs_eqs
                    .iter()
                    .all(|e| fs.exante_utility(e, Player::One).is_ok_and(|u| (u - cf.u1_fs).abs() <= CLOSED_FORM_TOL));
            if !fs_ok {
                failures.push(format!("{here}: full-sharing utility differs from {}", cf.u1_fs));
            }
        }
    }
    Ok(CheckResult::new(
        "closed-form",
        2,
        "no-sharing-equilibrium",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{n} games match exactly")
        } else {
            format!("{} mismatches, first: {}", failures.len(), failures[0])
        },
    ))
}

fn full_over_infer(seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for _ in 0..100 {
        let r1 = rng.random_range(0.5..=2.0);
        let c1 = rng.random_range(0.0..=3.0);
        let m = random_correlation_model(&mut rng, r1, c1)?;
        if !pareto_dominates(&m, Contract::FullSharing, Contract::InferSharing)? {
            violations.push(describe(&m));
        }
    }
    Ok(CheckResult::new(
        "full-over-infer",
        3,
        "fs-dominates-is",
        violations.is_empty(),
        if violations.is_empty() {
            "100 random instances, 0 violations".to_string()
        } else {
            format!("{} violations, first: {}", violations.len(), violations[0])
        },
    ))
}

fn symmetric_cost(seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0004);
    let mut failures = Vec::new();
    for _ in 0..20 {
        let r = rng.random_range(0.5..=2.0);
        let m = random_correlation_model(&mut rng, r, r)?;
        let c = classify(&m)?;
        if c.uniquely_irpo != Some(Contract::NoSharing) {
            failures.push(format!("{}: {:?}", describe(&m), c.uniquely_irpo));
        }
    }
    Ok(CheckResult::new(
        "symmetric-cost",
        4,
        "no-sharing-unique",
        failures.is_empty(),
        if failures.is_empty() {
            "20 instances with R1 = c1".to_string()
        } else {
            format!("{} failures, first: {}", failures.len(), failures[0])
        },
    ))
}

/// `fs ∈ IRPO` and every IRPO member is equivalent to `fs` (which for `ns`
/// means `fs = ns`).
fn full_sharing_class_is_irpo(c: &ContractClassification) -> bool {
    c.is_irpo(Contract::FullSharing) && c.irpo.iter().all(|&m| c.equivalent(m, Contract::FullSharing))
}

fn symmetric_accuracy(seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0005);
    let grid: Vec<f64> = accuracy_grid().into_iter().skip(1).collect();
    let mut failures = Vec::new();
    for i in 0..20 {
        let a = grid[i % grid.len()];
        let r1 = rng.random_range(0.5..=2.0);
        let c1 = rng.random_range(0.0..=3.0);
        let m = random_correlation_model_at(&mut rng, a, a, r1, c1)?;
        let c = classify(&m)?;
        if !full_sharing_class_is_irpo(&c) {
            failures.push(format!("{}: IRPO {:?}", describe(&m), c.irpo));
        }
    }
    Ok(CheckResult::new(
        "symmetric-accuracy",
        5,
        "full-sharing-irpo",
        failures.is_empty(),
        if failures.is_empty() {
            "20 instances with α = β".to_string()
        } else {
            format!("{} failures, first: {}", failures.len(), failures[0])
        },
    ))
}

/// Correlation model where train sharing is the unique IRPO contract.
pub fn train_sharing_witness_model() -> Result<ModelSpec> {
    let (a, b) = (0.7205, 0.5135);
    let prior = ThetaPrior::two_point(0.0, theta_max(a, b), 0.500005)?;
    Ok(ModelSpec::Correlation(CorrelationModelSpec::new(
        a,
        b,
        prior,
        UtilityFamily::significant_action(1.0, 0.7555)?,
    )?))
}

/// Two-hypotheses model with unlimited training data, aimed at infer sharing.
pub fn infer_sharing_witness_model() -> Result<ModelSpec> {
    Ok(ModelSpec::TwoHypInfinite(TwoHypothesesSpec::matching(0.7, 0.055, 0.0155, 0.29)?))
}

/// Two-hypotheses model with one training sample per firm.
pub fn one_sample_witness_spec() -> Result<TwoHypothesesSpec> {
    TwoHypothesesSpec::matching(0.5, 5.0 / 32.0, 1.0 / 8.0, 0.5)
}

fn train_sharing_witness() -> Result<CheckResult> {
    let c = classify(&train_sharing_witness_model()?)?;
    Ok(CheckResult::new(
        "train-sharing-witness",
        6,
        "train-sharing-unique",
        c.uniquely_irpo == Some(Contract::TrainSharing),
        format!("uniquely IRPO {:?}, IRPO {:?}", c.uniquely_irpo, c.irpo),
    ))
}

fn infer_sharing_witness() -> Result<Vec<CheckResult>> {
    let c = classify(&infer_sharing_witness_model()?)?;
    let s = "infer-sharing-witness";
    Ok(vec![
        CheckResult::new(
            s,
            7,
            "infer-sharing-unique",
            c.uniquely_irpo == Some(Contract::InferSharing),
            format!("uniquely IRPO {:?}, IRPO {:?}, IR {:?}", c.uniquely_irpo, c.irpo, c.ir),
        ),
        CheckResult::new(
            s,
            7,
            "ns-equals-ts",
            c.equivalent(Contract::NoSharing, Contract::TrainSharing),
            format!(
                "ns ⪰ ts {:?}, ts ⪰ ns {:?}",
                c.dominates(Contract::NoSharing, Contract::TrainSharing),
                c.dominates(Contract::TrainSharing, Contract::NoSharing)
            ),
        ),
        CheckResult::new(
            s,
            7,
            "fs-not-ir",
            !c.is_ir(Contract::FullSharing),
            format!("fs ⪰ ns {:?}", c.dominates(Contract::FullSharing, Contract::NoSharing)),
        ),
    ])
}

fn one_sample_witness() -> Result<Vec<CheckResult>> {
    let spec = one_sample_witness_spec()?;
    let c = classify(&ModelSpec::TwoHypOneSample(spec.clone()))?;
    let s = "one-sample-witness";
    let ns = &c.report(Contract::NoSharing).equilibria;
    let lower = !ns.is_empty() && ns.iter().all(|e| e.u1 < e.u2);
    let ns_u: Vec<(f64, f64)> = ns.iter().map(|e| (e.u1, e.u2)).collect();
    let target = one_sample_fs_firm2(&spec);
    let fs = &c.report(Contract::FullSharing).equilibria;
    let fs_ok = !fs.is_empty() && fs.iter().all(|e| (e.u2 - target).abs() <= CLOSED_FORM_TOL);
    let fs_u: Vec<f64> = fs.iter().map(|e| e.u2).collect();
    Ok(vec![
        CheckResult::new(
            s,
            8,
            "ns-irpo",
            c.is_irpo(Contract::NoSharing),
            format!("IRPO {:?}", c.irpo),
        ),
        CheckResult::new(
            s,
            8,
            "ns-differs-from-ts",
            !c.equivalent(Contract::NoSharing, Contract::TrainSharing),
            format!(
                "ns ⪰ ts {:?}, ts ⪰ ns {:?}",
                c.dominates(Contract::NoSharing, Contract::TrainSharing),
                c.dominates(Contract::TrainSharing, Contract::NoSharing)
            ),
        ),
        CheckResult::new(s, 8, "firm1-below-firm2", lower, format!("ns ex-ante (u1, u2) {ns_u:?}")),
        CheckResult::new(
            s,
            8,
            "fs-firm2-closed-form",
            fs_ok,
            format!("fs firm-2 ex-ante {fs_u:?} vs {target} (1913/4096 = {})", 1913.0 / 4096.0),
        ),
    ])
}

fn full_sharing_witness() -> Result<CheckResult> {
    let cond = full_sharing_conditions(0.9, 0.85, 2.5)?;
    Ok(CheckResult::new(
        "full-sharing-witness",
        9,
        "full-sharing-unique",
        cond.fs_uniquely_irpo && cond.all_hold() && cond.agrees(),
        format!(
            "classify {}, thresholds {}, ns equilibrium {}, ordering {}",
            cond.fs_uniquely_irpo, cond.fs_threshold_ok, cond.ns_eq_ok, cond.utility_ordering_ok
        ),
    ))
}

fn oracle_equivalence() -> Result<CheckResult> {
    let mut mismatches = Vec::new();
    let mut total_eqs = 0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_game(&mut rng, 4);
        let fast = g.enumerate_pure_equilibria()?;
        let slow = naive_equilibria(&g)?;
        total_eqs += slow.len();
        if fast != slow {
            mismatches.push(seed);
        }
    }
    Ok(CheckResult::new(
        "oracle",
        10,
        "decomposed-equals-naive",
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("100 games, {total_eqs} equilibria, identical sets")
        } else {
            format!("mismatching seeds {mismatches:?}")
        },
    ))
}

fn worlds(samples: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let (a, b) = (0.7, 0.6);
    let prior = ThetaPrior::new(vec![(theta_min(a, b) / 2.0, 0.3), (0.0, 0.3), (theta_max(a, b), 0.4)])?;
    let family = WorldFamily::new(a, b, prior)?;
    let r = validate_family(&family, samples, seed)?;
    let min_p = r
        .per_theta
        .iter()
        .flat_map(|t| [t.firm1_start.p_value, t.firm2_start.p_value])
        .fold(r.firm2_start.p_value, f64::min);
    Ok(vec![
        CheckResult::new(
            "worlds",
            11,
            "joint-deviation",
            r.deviation_ok,
            format!("{} samples, max deviation {:.2e}", r.n_samples, r.max_deviation),
        ),
        CheckResult::new(
            "worlds",
            11,
            "offset-uniformity",
            r.uniformity_ok,
            format!("smallest chi-square p-value {min_p:.4}"),
        ),
    ])
}

fn empirical_pipeline() -> Result<Vec<CheckResult>> {
    let ds = generate_dataset(&SyntheticDatasetSpec::with_seed(empirical::DEFAULT_SEED))?;
    let cfg = TrainingConfig::default();
    let firms = empirical::sweep::train_firms(&ds, &cfg)?;
    let sweep = empirical::sweep::cost_sweep_trained(&ds, &firms, &empirical::default_cost_grid())?;
    let s = "empirical";

    let zero = sweep.point(0.0).ok_or_else(|| Error::InvalidParameter("grid lacks c1 = 0".into()))?;
    let tie = zero.utilities.iter().all(|u| u == &zero.utilities[0]);

    let positive = || sweep.points.iter().filter(|p| p.c1 > 0.0);
    let fs_cells = positive().filter(|p| p.optimal == Contract::FullSharing).count();
    let ns_cells = positive().filter(|p| p.optimal == Contract::NoSharing).count();

    let gap = |p: &empirical::SweepPoint| {
        Player::BOTH
            .iter()
            .map(|&f| (p.utility(Contract::FullSharing, f) - p.utility(Contract::InferSharing, f)).abs())
            .fold(0.0, f64::max)
    };
    let close = sweep.points.iter().filter(|p| gap(p) <= 0.02).count();
    let frac = close as f64 / sweep.points.len() as f64;

    let ts = empirical::total_sharing(&ds, &[1.0], &cfg)?;
    let tp = ts.points[0];
    Ok(vec![
        CheckResult::new(s, 12, "zero-cost-tie", tie, format!("utilities at c1 = 0: {:?}", zero.utilities[0])),
        CheckResult::new(
            s,
            12,
            "regimes",
            fs_cells > 0 && ns_cells > 0,
            format!("fs optimal at {fs_cells} costs, ns at {ns_cells}"),
        ),
        CheckResult::new(
            s,
            12,
            "fs-is-gap",
            frac >= 0.9,
            format!("{close}/{} cells within 0.02", sweep.points.len()),
        ),
        CheckResult::new(
            s,
            12,
            "full-vs-total",
            (tp.full - tp.total).abs() <= 0.05,
            format!("c1 = 1: full {:.4}, total {:.4}", tp.full, tp.total),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(accuracy_grid().len(), 10);
        assert_eq!(accuracy_pairs().len(), 55);
    }

    #[test]
    fn unknown_suite_rejected() {
        let opts = VerifyOptions {
            only: vec!["nope".into()],
            ..VerifyOptions::default()
        };
        assert!(run(&opts).is_err());
    }

    #[test]
    fn flipped_threshold_fails() {
        let good = closed_form(ThresholdReading::AtLeastZero).unwrap();
        let bad = closed_form(ThresholdReading::AtLeastOne).unwrap();
        assert!(good.passed, "{}", good.details);
        assert!(!bad.passed);
    }

    #[test]
    fn random_models_are_feasible() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let m = random_correlation_model(&mut rng, 1.0, 1.0).unwrap();
            let ModelSpec::Correlation(s) = m else { unreachable!() };
            assert!(s.beta <= s.alpha && s.beta >= 0.5);
        }
    }
}
