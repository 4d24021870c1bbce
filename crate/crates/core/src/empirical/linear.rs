//! Logistic-loss linear classifiers trained by full-batch gradient descent.

use serde::{Deserialize, Serialize};

use super::dataset::Matrix;
use crate::error::{Error, Result};
use crate::utility::Label;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearClassifier {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub threshold: f64,
}

impl LinearClassifier {
    pub fn score(&self, row: &[f64]) -> f64 {
        row.iter().zip(&self.weights).map(|(x, w)| x * w).sum::<f64>() + self.bias
    }

    /// Predicts label 1 when the score exceeds the threshold.
    pub fn predict(&self, row: &[f64]) -> bool {
        self.score(row) > self.threshold
    }

    pub fn predict_all(&self, x: &Matrix) -> Vec<bool> {
        (0..x.rows).map(|i| self.predict(x.row(i))).collect()
    }

    pub fn accuracy(&self, x: &Matrix, labels: &[Label]) -> f64 {
        let hits = self
            .predict_all(x)
            .iter()
            .zip(labels)
            .filter(|(&p, &t)| p == (t == Label::One))
            .count();
        hits as f64 / labels.len() as f64
    }
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Mean logistic loss.
pub fn logistic_loss(clf: &LinearClassifier, x: &Matrix, labels: &[Label]) -> f64 {
    let mut total = 0.0;
    for (i, &t) in labels.iter().enumerate() {
        let z = clf.score(x.row(i));
        // log(1 + e^{-yz}) with y in {-1, 1}
        let yz = if t == Label::One { z } else { -z };
        total += if yz > 0.0 {
            (-yz).exp().ln_1p()
        } else {
            -yz + yz.exp().ln_1p()
        };
    }
    total / labels.len() as f64
}

pub fn train_linear(x: &Matrix, labels: &[Label], epochs: usize, rate: f64) -> Result<LinearClassifier> {
    train_linear_traced(x, labels, epochs, rate).map(|(clf, _)| clf)
}

/// Trains from zero weights and returns the loss before each epoch and after
/// the last one.
pub fn train_linear_traced(
    x: &Matrix,
    labels: &[Label],
    epochs: usize,
    rate: f64,
) -> Result<(LinearClassifier, Vec<f64>)> {
    if epochs == 0 {
        return Err(Error::InvalidParameter("training needs at least one epoch".into()));
    }
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::InvalidParameter(format!("learning rate must be positive, got {rate}")));
    }
    if x.rows != labels.len() || labels.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "{} feature rows for {} labels",
            x.rows,
            labels.len()
        )));
    }
    let n = labels.len() as f64;
    let mut clf = LinearClassifier {
        weights: vec![0.0; x.cols],
        bias: 0.0,
        threshold: 0.0,
    };
    let mut losses = Vec::with_capacity(epochs + 1);
    losses.push(logistic_loss(&clf, x, labels));
    for _ in 0..epochs {
        let mut gw = vec![0.0; x.cols];
        let mut gb = 0.0;
        for (i, &t) in labels.iter().enumerate() {
            let row = x.row(i);
            let err = sigmoid(clf.score(row)) - if t == Label::One { 1.0 } else { 0.0 };
            for (g, v) in gw.iter_mut().zip(row) {
                *g += err * v;
            }
            gb += err;
        }
        for (w, g) in clf.weights.iter_mut().zip(&gw) {
            *w -= rate * g / n;
        }
        clf.bias -= rate * gb / n;
        losses.push(logistic_loss(&clf, x, labels));
    }
    Ok((clf, losses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn separable_toy_set() {
        let x = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.5, 2.0], vec![-1.0, -2.0], vec![-2.0, -0.5]]).unwrap();
        let y = [Label::One, Label::One, Label::Zero, Label::Zero];
        let clf = train_linear(&x, &y, 50, 0.5).unwrap();
        assert_eq!(clf.accuracy(&x, &y), 1.0);
    }

    #[test]
    fn zero_epochs_rejected() {
        let x = Matrix::from_rows(&[vec![1.0]]).unwrap();
        assert!(train_linear(&x, &[Label::One], 0, 0.1).is_err());
        assert!(train_linear(&x, &[Label::One, Label::Zero], 1, 0.1).is_err());
    }

    #[test]
    fn loss_never_increases() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rows: Vec<Vec<f64>> = (0..500).map(|_| (0..5).map(|_| rng.random_range(-2.0..2.0)).collect()).collect();
        let y: Vec<Label> = rows.iter().map(|r| Label::from_bool(r[0] + 0.5 * r[1] + rng.random_range(-1.0..1.0) > 0.0)).collect();
        let x = Matrix::from_rows(&rows).unwrap();
        let (_, losses) = train_linear_traced(&x, &y, 100, 0.5).unwrap();
        assert!(losses.windows(2).all(|w| w[1] <= w[0] + 1e-6));
    }

    #[test]
    fn noise_labels_stay_near_chance() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut gen = |n: usize| {
            let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..5).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
            let y: Vec<Label> = (0..n).map(|_| Label::from_bool(rng.random_bool(0.5))).collect();
            (Matrix::from_rows(&rows).unwrap(), y)
        };
        let (x, y) = gen(5000);
        let (xv, yv) = gen(5000);
        let clf = train_linear(&x, &y, 50, 0.5).unwrap();
        assert!((clf.accuracy(&xv, &yv) - 0.5).abs() < 0.05);
    }
}
