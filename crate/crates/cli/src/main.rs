//! `predshare` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
//! 3 I/O failure.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde_json::json;

use predshare::contracts::{classify_with_tol, ContractClassification, ModelSpec, ThresholdReading};
use predshare::distributions::{CorrelationModelSpec, HypothesisLayout, ThetaPrior, TwoHypothesesSpec};
use predshare::empirical::metrics::{battery, BatteryRun};
use predshare::empirical::sweep::{cost_grid, cost_sweep_trained, total_sharing, train_firms, TrainingConfig};
use predshare::empirical::{generate_dataset, SyntheticDatasetSpec, DEFAULT_SEED, EPSILONS};
use predshare::utility::DEFAULT_TOLERANCE;
use predshare::verify::{self, VerifyOptions, SUITES};
use predshare::worlds::{validate_family_with, OffsetScheme, WorldFamily};
use predshare::{Contract, UtilityFamily};

/// Directory used for output files when `--out` is not given.
const OUT_DIR_ENV: &str = "PREDSHARE_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "predshare", about = "Prediction-sharing contracts between two competing firms", disable_version_flag = true)]
struct Cli {
    /// Print name and version as JSON and exit.
    #[arg(long, global = true)]
    version: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the four contracts of one model.
    Classify(ClassifyArgs),
    /// Run the acceptance battery.
    Verify(VerifyArgs),
    /// Cost sweep on one synthetic dataset.
    Sweep(SweepArgs),
    /// Robustness battery over pool sizes and seeds.
    Simulate(SimulateArgs),
    /// Monte Carlo validation of the interval-world construction.
    Worlds(WorldsArgs),
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Output file. Defaults to $PREDSHARE_OUT_DIR/<command>.<ext>, else stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModelKind {
    Corr,
    Twohyp,
    TwohypOneSample,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    SwapOnCause,
    SwapPositivesOnly,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long, value_enum, default_value_t = ModelKind::Corr)]
    model: ModelKind,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Support point of the correlation prior (repeatable).
    #[arg(long, allow_hyphen_values = true)]
    theta: Vec<f64>,
    /// Weight of the matching --theta (repeatable); uniform when omitted.
    #[arg(long)]
    theta_weight: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    r1: f64,
    #[arg(long, default_value_t = 1.0)]
    c1: f64,
    #[arg(long)]
    pi_i: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long, value_enum, default_value_t = Layout::SwapOnCause)]
    layout: Layout,
    /// Tolerance for dominance comparisons.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run only the named suite (repeatable).
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES.map(|(s, _)| s)))]
    only: Vec<String>,
    /// Firm-2 participation threshold used by the closed-form suite.
    #[arg(long, value_enum, default_value_t = Reading::AtLeastZero)]
    threshold_reading: Reading,
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
    #[arg(long, default_value_t = VerifyOptions::default().seed)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Reading {
    AtLeastZero,
    AtLeastOne,
}

#[derive(Args, Debug)]
struct DataArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    epochs: usize,
    #[arg(long, default_value_t = 0.5)]
    rate: f64,
}

impl DataArgs {
    fn training(&self) -> TrainingConfig {
        TrainingConfig {
            epochs: self.epochs,
            rate: self.rate,
        }
    }
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Fraction of features in the shared pool.
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    #[arg(long, default_value_t = 2.5)]
    c1_max: f64,
    #[arg(long, default_value_t = 0.05)]
    c1_step: f64,
    /// Also write the generated dataset as CSV.
    #[arg(long)]
    export_dataset: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Number of consecutive seeds starting at --seed.
    #[arg(long, default_value_t = 4)]
    seeds: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct WorldsArgs {
    #[arg(long, default_value_t = 0.7)]
    alpha: f64,
    #[arg(long, default_value_t = 0.6)]
    beta: f64,
    #[arg(long, allow_hyphen_values = true)]
    theta: Vec<f64>,
    #[arg(long)]
    theta_weight: Vec<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use this fixed offset for every world instead of a uniform one.
    #[arg(long)]
    fixed_offset: Option<f64>,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Verification(String),
    Parameter(String),
    Io(String),
}

impl From<predshare::Error> for Failure {
    fn from(e: predshare::Error) -> Self {
        Failure::Parameter(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if cli.version {
        println!("{}", json!({"name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION")}));
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand is required (see --help)");
        return ExitCode::from(2);
    };
    let result = match command {
        Command::Classify(a) => cmd_classify(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Worlds(a) => cmd_worlds(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Parameter(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("I/O error: {m}");
            ExitCode::from(3)
        }
    }
}

fn require(v: Option<f64>, flag: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure::Parameter(format!("--{flag} is required for this model")))
}

fn theta_prior(theta: &[f64], weights: &[f64]) -> Result<ThetaPrior, Failure> {
    if theta.is_empty() {
        if !weights.is_empty() {
            return Err(Failure::Parameter("--theta-weight given without --theta".into()));
        }
        return Ok(ThetaPrior::point(0.0));
    }
    let weights = if weights.is_empty() {
        vec![1.0 / theta.len() as f64; theta.len()]
    } else if weights.len() == theta.len() {
        weights.to_vec()
    } else {
        return Err(Failure::Parameter(format!(
            "{} --theta values but {} --theta-weight values",
            theta.len(),
            weights.len()
        )));
    };
    Ok(ThetaPrior::new(theta.iter().copied().zip(weights).collect())?)
}

fn build_model(a: &ClassifyArgs) -> Result<ModelSpec, Failure> {
    Ok(match a.model {
        ModelKind::Corr => ModelSpec::Correlation(CorrelationModelSpec::new(
            require(a.alpha, "alpha")?,
            require(a.beta, "beta")?,
            theta_prior(&a.theta, &a.theta_weight)?,
            UtilityFamily::significant_action(a.r1, a.c1)?,
        )?),
        ModelKind::Twohyp | ModelKind::TwohypOneSample => {
            let layout = match a.layout {
                Layout::SwapOnCause => HypothesisLayout::SwapOnCause,
                Layout::SwapPositivesOnly => HypothesisLayout::SwapPositivesOnly,
            };
            let spec = TwoHypothesesSpec::matching(
                require(a.pi_i, "pi-i")?,
                require(a.kappa, "kappa")?,
                require(a.lambda, "lambda")?,
                require(a.mu, "mu")?,
            )?
            .with_layout(layout);
            if a.model == ModelKind::Twohyp {
                ModelSpec::TwoHypInfinite(spec)
            } else {
                ModelSpec::TwoHypOneSample(spec)
            }
        }
    })
}

fn classification_csv(c: &ContractClassification) -> String {
    let mut out = String::from("contract,ir,pareto,irpo,uniquely_irpo,equilibria,u1,u2\n");
    for contract in Contract::ALL {
        let eqs = &c.report(contract).equilibria;
        let (u1, u2) = eqs.first().map_or((f64::NAN, f64::NAN), |e| (e.u1, e.u2));
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{u1},{u2}",
            contract.short(),
            u8::from(c.is_ir(contract)),
            u8::from(c.pareto.contains(&contract)),
            u8::from(c.is_irpo(contract)),
            u8::from(c.uniquely_irpo == Some(contract)),
            eqs.len()
        );
    }
    out
}

fn cmd_classify(a: &ClassifyArgs) -> CmdResult {
    let model = build_model(a)?;
    let c = classify_with_tol(&model, a.tol)?;
    for w in &c.warnings {
        log::warn!("{w}");
    }
    let body = match a.output.format {
        Format::Json => to_json(&json!({"model": model, "classification": c})),
        Format::Csv => classification_csv(&c),
    };
    emit(&a.output, "classify", &body)
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let opts = VerifyOptions {
        only: a.only.clone(),
        reading: match a.threshold_reading {
            Reading::AtLeastZero => ThresholdReading::AtLeastZero,
            Reading::AtLeastOne => ThresholdReading::AtLeastOne,
        },
        world_samples: a.samples,
        seed: a.seed,
    };
    let report = verify::run(&opts)?;
    for c in &report.checks {
        info!("{}", c.line());
        eprintln!("{}", c.line());
    }
    let body = match a.output.format {
        Format::Json => to_json(&json!({"seed": a.seed, "passed": report.passed(), "checks": report.checks})),
        Format::Csv => {
            let mut s = format!("# seed={}\ncriterion,suite,check,passed,details\n", a.seed);
            for c in &report.checks {
                let _ = writeln!(s, "{},{},{},{},\"{}\"", c.criterion, c.suite, c.name, u8::from(c.passed), c.details.replace('"', "'"));
            }
            s
        }
    };
    emit(&a.output, "verify", &body)?;
    if report.passed() {
        Ok(())
    } else {
        let names: Vec<String> = report.failures().iter().map(|c| format!("{}/{}", c.suite, c.name)).collect();
        Err(Failure::Verification(names.join(", ")))
    }
}

fn cmd_sweep(a: &SweepArgs) -> CmdResult {
    let grid = cost_grid(a.c1_max, a.c1_step)?;
    let ds = generate_dataset(&SyntheticDatasetSpec::with_seed(a.data.seed).with_epsilon(a.epsilon))?;
    if let Some(path) = &a.export_dataset {
        write_file(path, &ds.to_csv())?;
    }
    let cfg = a.data.training();
    let firms = train_firms(&ds, &cfg)?;
    let sweep = cost_sweep_trained(&ds, &firms, &grid)?;
    let body = match a.output.format {
        Format::Csv => sweep.to_csv(),
        Format::Json => {
            let total = total_sharing(&ds, &grid, &cfg)?;
            let points: Vec<_> = sweep
                .points
                .iter()
                .map(|p| {
                    json!({
                        "c1": p.c1,
                        "utilities": Contract::ALL.iter().map(|c| (c.short(), p.utilities[c.index()])).collect::<std::collections::BTreeMap<_, _>>(),
                        "ir": Contract::ALL.iter().filter(|c| p.ir[c.index()]).map(|c| c.short()).collect::<Vec<_>>(),
                        "optimal": p.optimal.short(),
                    })
                })
                .collect();
            to_json(&json!({
                "seed": sweep.seed,
                "epsilon": sweep.epsilon,
                "firm1_features": ds.firm1_features,
                "firm2_features": ds.firm2_features,
                "test_stats": firms.stats,
                "points": points,
                "total_sharing": total.points,
                "total_sharing_accuracy": total.accuracy,
            }))
        }
    };
    emit(&a.output, "sweep", &body)
}

fn battery_csv(seed: u64, runs: &[BatteryRun]) -> String {
    let mut s = format!("# seed={seed}\nepsilon,seed,mcc,ns,ts,is,fs\n");
    for r in runs {
        let f = r.frequencies;
        let _ = writeln!(s, "{},{},{},{},{},{},{}", r.epsilon, r.seed, r.mcc, f[0], f[1], f[2], f[3]);
    }
    s
}

fn cmd_simulate(a: &SimulateArgs) -> CmdResult {
    if a.seeds == 0 {
        return Err(Failure::Parameter("--seeds must be at least 1".into()));
    }
    let seeds: Vec<u64> = (0..a.seeds).map(|i| a.data.seed.wrapping_add(i)).collect();
    let runs = battery(&seeds, &a.data.training())?;
    let body = match a.output.format {
        Format::Csv => battery_csv(a.data.seed, &runs),
        Format::Json => {
            let mean = |eps: f64| {
                let sel: Vec<&BatteryRun> = runs.iter().filter(|r| r.epsilon == eps).collect();
                let n = sel.len() as f64;
                let mut f = [0.0; 4];
                for r in &sel {
                    for (acc, v) in f.iter_mut().zip(r.frequencies) {
                        *acc += v / n;
                    }
                }
                json!({"epsilon": eps, "mcc": sel.iter().map(|r| r.mcc).sum::<f64>() / n, "frequencies": f})
            };
            to_json(&json!({
                "seed": a.data.seed,
                "seeds": seeds,
                "contracts": Contract::ALL.map(|c| c.short()),
                "runs": runs,
                "by_epsilon": EPSILONS.iter().map(|&e| mean(e)).collect::<Vec<_>>(),
            }))
        }
    };
    emit(&a.output, "simulate", &body)
}

fn cmd_worlds(a: &WorldsArgs) -> CmdResult {
    let family = WorldFamily::new(a.alpha, a.beta, theta_prior(&a.theta, &a.theta_weight)?)?;
    let scheme = a.fixed_offset.map_or(OffsetScheme::Uniform, OffsetScheme::Fixed);
    let report = validate_family_with(&family, a.samples, a.seed, scheme)?;
    let body = match a.output.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = format!("# seed={} samples={}\ncell,empirical,analytic\n", a.seed, a.samples);
            for ((k, e), (_, p)) in report.empirical.iter().zip(report.analytic.iter()) {
                let _ = writeln!(s, "{k},{e},{p}");
            }
            s
        }
    };
    emit(&a.output, "worlds", &body)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "max deviation {:.2e}, uniformity {}",
            report.max_deviation, report.uniformity_ok
        )))
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

fn emit(out: &Output, command: &str, body: &str) -> CmdResult {
    let ext = match out.format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    let path = match (&out.out, std::env::var_os(OUT_DIR_ENV)) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(Path::new(&dir).join(format!("{command}.{ext}"))),
        (None, None) => None,
    };
    match path {
        Some(p) => write_file(&p, body),
        None => io::stdout()
            .lock()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}

fn write_file(path: &Path, body: &str) -> CmdResult {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    info!("wrote {}", path.display());
    Ok(())
}
