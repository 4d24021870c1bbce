//! Seeded synthetic data with two overlapping feature views.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::utility::Label;

/// Shared-pool fractions swept by the robustness battery.
pub const EPSILONS: [f64; 6] = [1.0, 0.85, 0.7, 0.55, 0.4, 0.25];

/// Ground truth: `t = 1[w·f + bias + noise·z > 0]` with `z ~ N(0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub noise: f64,
}

impl LabelModel {
    /// Weights decaying as `1/√(j+1)`, so a few features dominate but every
    /// feature carries some signal.
    pub fn decaying(d: usize, bias: f64, noise: f64) -> Self {
        LabelModel {
            weights: (0..d).map(|j| 1.0 / ((j + 1) as f64).sqrt()).collect(),
            bias,
            noise,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticDatasetSpec {
    pub n_train: usize,
    pub n_test: usize,
    pub n_valid: usize,
    pub d: usize,
    pub label_model: LabelModel,
    pub firm1_frac: f64,
    pub firm2_frac: f64,
    /// Fraction of all features in the pool both firms draw from.
    pub epsilon: f64,
    pub seed: u64,
}

impl SyntheticDatasetSpec {
    /// 10 000 rows split 60/20/20 over 40 features.
    pub fn with_seed(seed: u64) -> Self {
        let d = 40;
        SyntheticDatasetSpec {
            n_train: 6000,
            n_test: 2000,
            n_valid: 2000,
            d,
            label_model: LabelModel::decaying(d, 0.8, 1.0),
            firm1_frac: 0.25,
            firm2_frac: 0.10,
            epsilon: 1.0,
            seed,
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_train == 0 || self.n_test == 0 || self.n_valid == 0 || self.d == 0 {
            return Err(Error::InvalidParameter("split sizes and d must be at least 1".into()));
        }
        if self.label_model.weights.len() != self.d {
            return Err(Error::InvalidParameter(format!(
                "label model has {} weights for {} features",
                self.label_model.weights.len(),
                self.d
            )));
        }
        if !(self.label_model.noise >= 0.0) {
            return Err(Error::InvalidParameter("label noise must be nonnegative".into()));
        }
        let frac_ok = |f: f64| f > 0.0 && f <= self.epsilon;
        if !(self.epsilon <= 1.0 && frac_ok(self.firm1_frac) && frac_ok(self.firm2_frac)) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < firm fractions ({}, {}) <= ε ({}) <= 1",
                self.firm1_frac, self.firm2_frac, self.epsilon
            )));
        }
        if self.feature_count(self.firm2_frac) == 0 {
            return Err(Error::InvalidParameter("firm 2 would see no features".into()));
        }
        Ok(())
    }

    fn feature_count(&self, frac: f64) -> usize {
        (frac * self.d as f64).round() as usize
    }
}

/// Row-major feature matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Matrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter("ragged feature rows".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Columns `idx`, in that order.
    pub fn select(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for i in 0..self.rows {
            let r = self.row(i);
            data.extend(idx.iter().map(|&j| r[j]));
        }
        Matrix {
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Split {
    pub features: Matrix,
    pub labels: Vec<Label>,
}

impl Split {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn positive_rate(&self) -> f64 {
        self.labels.iter().filter(|&&t| t == Label::One).count() as f64 / self.len() as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticDataset {
    pub spec: SyntheticDatasetSpec,
    /// Indices of the shared pool.
    pub pool: Vec<usize>,
    pub firm1_features: Vec<usize>,
    pub firm2_features: Vec<usize>,
    pub train: Split,
    pub test: Split,
    pub valid: Split,
}

impl SyntheticDataset {
    /// Union of both firms' features, sorted.
    pub fn union_features(&self) -> Vec<usize> {
        let mut u: Vec<usize> = self.firm1_features.iter().chain(&self.firm2_features).copied().collect();
        u.sort_unstable();
        u.dedup();
        u
    }

    /// CSV dump of one split: `split,label,f0..f{d-1}` after a seed comment.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# seed={} epsilon={}\n", self.spec.seed, self.spec.epsilon);
        out.push_str("split,label");
        for j in 0..self.spec.d {
            let _ = write!(out, ",f{j}");
        }
        out.push('\n');
        for (name, split) in [("train", &self.train), ("test", &self.test), ("valid", &self.valid)] {
            for i in 0..split.len() {
                let _ = write!(out, "{name},{}", split.labels[i]);
                for v in split.features.row(i) {
                    let _ = write!(out, ",{v}");
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Draws the feature views and all three splits from `spec.seed`.
///
/// Views are drawn in two stages: a pool of `ε·d` features, then firm 1's
/// `firm1_frac·d` and firm 2's `firm2_frac·d` features from the pool,
/// independently of each other.
pub fn generate_dataset(spec: &SyntheticDatasetSpec) -> Result<SyntheticDataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let d = spec.d;
    let pool_size = spec.feature_count(spec.epsilon).max(1);
    let mut pool = sample(&mut rng, d, pool_size).into_vec();
    pool.sort_unstable();
    let mut pick = |n: usize| {
        let mut v: Vec<usize> = sample(&mut rng, pool.len(), n.min(pool.len()))
            .into_iter()
            .map(|k| pool[k])
            .collect();
        v.sort_unstable();
        v
    };
    let firm1_features = pick(spec.feature_count(spec.firm1_frac));
    let firm2_features = pick(spec.feature_count(spec.firm2_frac));

    let mut draw = |n: usize| {
        let mut data = Vec::with_capacity(n * d);
        let mut labels = Vec::with_capacity(n);
        for _ in 0..n {
            let row: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
            let z: f64 = StandardNormal.sample(&mut rng);
            let score: f64 = row.iter().zip(&spec.label_model.weights).map(|(f, w)| f * w).sum::<f64>()
                + spec.label_model.bias
                + spec.label_model.noise * z;
            labels.push(Label::from_bool(score > 0.0));
            data.extend(row);
        }
        Split {
            features: Matrix { rows: n, cols: d, data },
            labels,
        }
    };
    let train = draw(spec.n_train);
    let test = draw(spec.n_test);
    let valid = draw(spec.n_valid);
    Ok(SyntheticDataset {
        spec: spec.clone(),
        pool,
        firm1_features,
        firm2_features,
        train,
        test,
        valid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let spec = SyntheticDatasetSpec::with_seed(4);
        assert_eq!(generate_dataset(&spec).unwrap(), generate_dataset(&spec).unwrap());
    }

    #[test]
    fn view_sizes() {
        let ds = generate_dataset(&SyntheticDatasetSpec::with_seed(1)).unwrap();
        assert_eq!(ds.firm1_features.len(), 10);
        assert_eq!(ds.firm2_features.len(), 4);
        assert_eq!(ds.train.len(), 6000);
        let ds = generate_dataset(&SyntheticDatasetSpec::with_seed(1).with_epsilon(0.25)).unwrap();
        assert_eq!(ds.firm1_features, ds.pool);
        assert!(ds.firm2_features.iter().all(|f| ds.pool.contains(f)));
    }

    #[test]
    fn rejects_fraction_above_pool() {
        let mut spec = SyntheticDatasetSpec::with_seed(1).with_epsilon(0.2);
        assert!(generate_dataset(&spec).is_err());
        spec.epsilon = 1.0;
        spec.n_test = 0;
        assert!(generate_dataset(&spec).is_err());
    }

    #[test]
    fn csv_has_seed_header() {
        let mut spec = SyntheticDatasetSpec::with_seed(12);
        spec.n_train = 3;
        spec.n_test = 2;
        spec.n_valid = 1;
        let csv = generate_dataset(&spec).unwrap().to_csv();
        assert!(csv.starts_with("# seed=12"));
        assert_eq!(csv.lines().count(), 2 + 6);
    }
}
