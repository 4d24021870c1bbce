//! Python bindings. Structured results cross the boundary as plain dicts and
//! lists built from their JSON form.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use predshare::contracts::{self, ContractClassification, ModelSpec, ThresholdReading};
use predshare::distributions::{CorrelationModelSpec, ThetaPrior, TwoHypothesesSpec};
use predshare::empirical::sweep::{cost_grid, cost_sweep_trained, total_sharing, train_firms, TrainingConfig};
use predshare::empirical::{self as emp, generate_dataset, SyntheticDatasetSpec, DEFAULT_SEED};
use predshare::utility::DEFAULT_TOLERANCE;
use predshare::verify::{self, VerifyOptions};
use predshare::worlds::{validate_family_with, OffsetScheme, WorldFamily};
use predshare::{Contract, UtilityFamily};

fn err(e: predshare::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

fn contract(name: &str) -> PyResult<Contract> {
    name.parse().map_err(err)
}

fn prior(theta: Vec<f64>, weights: Option<Vec<f64>>) -> PyResult<ThetaPrior> {
    if theta.is_empty() {
        return Ok(ThetaPrior::point(0.0));
    }
    let n = theta.len();
    let w = weights.unwrap_or_else(|| vec![1.0 / n as f64; n]);
    if w.len() != n {
        return Err(PyValueError::new_err(format!("{n} theta values but {} weights", w.len())));
    }
    ThetaPrior::new(theta.into_iter().zip(w).collect()).map_err(err)
}

/// A data-sharing model: correlation or two-hypotheses.
#[pyclass(module = "predshare_py", frozen)]
struct Model {
    spec: ModelSpec,
}

#[pymethods]
impl Model {
    /// Correlation model with accuracies `alpha >= beta` and a prior on θ.
    #[staticmethod]
    #[pyo3(signature = (alpha, beta, theta = vec![0.0], weights = None, r1 = 1.0, c1 = 1.0))]
    fn correlation(alpha: f64, beta: f64, theta: Vec<f64>, weights: Option<Vec<f64>>, r1: f64, c1: f64) -> PyResult<Self> {
        let utility = UtilityFamily::significant_action(r1, c1).map_err(err)?;
        let spec = CorrelationModelSpec::new(alpha, beta, prior(theta, weights)?, utility).map_err(err)?;
        Ok(Model {
            spec: ModelSpec::Correlation(spec),
        })
    }

    /// Two-hypotheses model with matched firm-2 parameters.
    #[staticmethod]
    #[pyo3(signature = (pi_i, kappa, lam, mu, one_sample = false))]
    fn two_hypotheses(pi_i: f64, kappa: f64, lam: f64, mu: f64, one_sample: bool) -> PyResult<Self> {
        let spec = TwoHypothesesSpec::matching(pi_i, kappa, lam, mu).map_err(err)?;
        Ok(Model {
            spec: if one_sample {
                ModelSpec::TwoHypOneSample(spec)
            } else {
                ModelSpec::TwoHypInfinite(spec)
            },
        })
    }

    #[pyo3(signature = (tol = DEFAULT_TOLERANCE))]
    fn classify(&self, tol: f64) -> PyResult<Classification> {
        Ok(Classification {
            inner: contracts::classify_with_tol(&self.spec, tol).map_err(err)?,
        })
    }

    /// Whether `a` weakly Pareto-dominates `b`.
    fn dominates(&self, a: &str, b: &str) -> PyResult<bool> {
        contracts::pareto_dominates(&self.spec, contract(a)?, contract(b)?).map_err(err)
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.spec)
    }

    fn __repr__(&self) -> String {
        format!("Model({})", serde_json::to_string(&self.spec).unwrap_or_default())
    }
}

/// Equilibria, dominance and IRPO set of the four contracts.
#[pyclass(module = "predshare_py", frozen)]
struct Classification {
    inner: ContractClassification,
}

fn names(cs: &[Contract]) -> Vec<&'static str> {
    cs.iter().map(|c| c.short()).collect()
}

#[pymethods]
impl Classification {
    #[getter]
    fn ir(&self) -> Vec<&'static str> {
        names(&self.inner.ir)
    }

    #[getter]
    fn pareto(&self) -> Vec<&'static str> {
        names(&self.inner.pareto)
    }

    #[getter]
    fn irpo(&self) -> Vec<&'static str> {
        names(&self.inner.irpo)
    }

    #[getter]
    fn uniquely_irpo(&self) -> Option<&'static str> {
        self.inner.uniquely_irpo.map(Contract::short)
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.inner.warnings.clone()
    }

    /// Ex-ante `(u1, u2)` for every pure equilibrium under `contract`.
    fn utilities(&self, contract_name: &str) -> PyResult<Vec<(f64, f64)>> {
        let c = contract(contract_name)?;
        Ok(self.inner.report(c).equilibria.iter().map(|e| (e.u1, e.u2)).collect())
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Classification(irpo={:?}, uniquely_irpo={:?})", self.irpo(), self.uniquely_irpo())
    }
}

/// No-sharing equilibrium of a known-θ correlation model with `R1 = c1 = 1`.
#[pyfunction]
fn closed_form<'py>(py: Python<'py>, alpha: f64, beta: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &contracts::known_corr_closed_form(alpha, beta, ThresholdReading::AtLeastZero).map_err(err)?)
}

/// Cost sweep on one synthetic dataset; returns the CSV table and the
/// optimal contract per cost.
#[pyfunction]
#[pyo3(signature = (seed = DEFAULT_SEED, epsilon = 1.0, c1_max = 2.5, c1_step = 0.05))]
fn cost_sweep<'py>(py: Python<'py>, seed: u64, epsilon: f64, c1_max: f64, c1_step: f64) -> PyResult<Bound<'py, PyAny>> {
    let (sweep, total) = py
        .detach(|| -> predshare::Result<_> {
            let grid = cost_grid(c1_max, c1_step)?;
            let ds = generate_dataset(&SyntheticDatasetSpec::with_seed(seed).with_epsilon(epsilon))?;
            let cfg = TrainingConfig::default();
            let firms = train_firms(&ds, &cfg)?;
            Ok((cost_sweep_trained(&ds, &firms, &grid)?, total_sharing(&ds, &grid, &cfg)?))
        })
        .map_err(err)?;
    let points: Vec<serde_json::Value> = sweep
        .points
        .iter()
        .map(|p| {
            serde_json::json!({
                "c1": p.c1,
                "utilities": Contract::ALL.iter().map(|c| (c.short(), p.utilities[c.index()])).collect::<std::collections::BTreeMap<_, _>>(),
                "ir": Contract::ALL.iter().filter(|c| p.ir[c.index()]).map(|c| c.short()).collect::<Vec<_>>(),
                "optimal": p.optimal.short(),
            })
        })
        .collect();
    let frequencies = emp::optimality_frequency(&sweep).ok();
    to_py(
        py,
        &serde_json::json!({
            "seed": seed,
            "epsilon": epsilon,
            "points": points,
            "total_sharing": total.points,
            "optimality_frequency": frequencies,
            "csv": sweep.to_csv(),
        }),
    )
}

/// Robustness battery over every pool size and the given seeds.
#[pyfunction]
fn battery<'py>(py: Python<'py>, seeds: Vec<u64>) -> PyResult<Bound<'py, PyAny>> {
    let runs = py.detach(|| emp::battery(&seeds, &TrainingConfig::default())).map_err(err)?;
    to_py(py, &runs)
}

/// Monte Carlo check that the interval worlds reproduce the analytic joint.
#[pyfunction]
#[pyo3(signature = (alpha, beta, theta = vec![0.0], weights = None, samples = 200_000, seed = 0))]
fn validate_worlds<'py>(
    py: Python<'py>,
    alpha: f64,
    beta: f64,
    theta: Vec<f64>,
    weights: Option<Vec<f64>>,
    samples: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let family = WorldFamily::new(alpha, beta, prior(theta, weights)?).map_err(err)?;
    let report = py
        .detach(|| validate_family_with(&family, samples, seed, OffsetScheme::Uniform))
        .map_err(err)?;
    let passed = report.passed();
    let out = to_py(py, &report)?;
    out.set_item("passed", passed)?;
    Ok(out)
}

/// Runs the acceptance checks, optionally restricted to named suites.
#[pyfunction]
#[pyo3(signature = (only = None))]
fn run_checks<'py>(py: Python<'py>, only: Option<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
    let opts = VerifyOptions {
        only: only.unwrap_or_default(),
        ..VerifyOptions::default()
    };
    let report = py.detach(|| verify::run(&opts)).map_err(err)?;
    to_py(py, &report.checks)
}

#[pymodule]
fn predshare_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_class::<Classification>()?;
    m.add_function(wrap_pyfunction!(closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(cost_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(battery, m)?)?;
    m.add_function(wrap_pyfunction!(validate_worlds, m)?)?;
    m.add_function(wrap_pyfunction!(run_checks, m)?)?;
    m.add("CONTRACTS", Contract::ALL.map(Contract::short).to_vec())?;
    Ok(())
}
