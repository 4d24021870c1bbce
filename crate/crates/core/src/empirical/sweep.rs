//! Training both firms once and sweeping the action cost.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dataset::SyntheticDataset;
use super::linear::{train_linear, LinearClassifier};
use super::rules::{empirical_rules, DecisionRules, EmpiricalStats};
use crate::error::{Error, Result};
use crate::utility::{expost_utility, Action, Contract, Label, Player, UtilityParams};

/// Reward for a correct significant action.
pub const REWARD: f64 = 1.0;

/// Ties between IR contracts' welfare are broken below this gap.
pub const UTILITY_TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainingConfig {
    pub epochs: usize,
    pub rate: f64,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        TrainingConfig { epochs: 200, rate: 0.5 }
    }
}

/// `0, step, 2·step, …` up to and including `max` (within rounding).
pub fn cost_grid(max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && max >= 0.0 && max.is_finite()) {
        return Err(Error::InvalidParameter(format!("bad cost grid: max {max}, step {step}")));
    }
    let n = (max / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| (i as f64 * step * 1e9).round() / 1e9).collect())
}

/// The sweep grid `0, 0.05, …, 2.5`.
pub fn default_cost_grid() -> Vec<f64> {
    cost_grid(2.5, 0.05).expect("constant grid is valid")
}

/// Both firms' classifiers and their signals on the test and validation splits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedFirms {
    pub firm1: LinearClassifier,
    pub firm2: LinearClassifier,
    pub test_signals: [Vec<bool>; 2],
    pub valid_signals: [Vec<bool>; 2],
    pub stats: EmpiricalStats,
}

pub fn train_firms(ds: &SyntheticDataset, cfg: &TrainingConfig) -> Result<TrainedFirms> {
    let train = |cols: &[usize]| train_linear(&ds.train.features.select(cols), &ds.train.labels, cfg.epochs, cfg.rate);
    let firm1 = train(&ds.firm1_features)?;
    let firm2 = train(&ds.firm2_features)?;
    let signals = |split: &super::dataset::Split| {
        [
            firm1.predict_all(&split.features.select(&ds.firm1_features)),
            firm2.predict_all(&split.features.select(&ds.firm2_features)),
        ]
    };
    let test_signals = signals(&ds.test);
    let valid_signals = signals(&ds.valid);
    let stats = EmpiricalStats::from_predictions(&test_signals[0], &test_signals[1], &ds.test.labels)?;
    Ok(TrainedFirms {
        firm1,
        firm2,
        test_signals,
        valid_signals,
        stats,
    })
}

/// One cost of the sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub c1: f64,
    /// Validation utility `[contract][firm]`, contracts in `Contract::ALL` order.
    pub utilities: [[f64; 2]; 4],
    pub ir: [bool; 4],
    /// Highest-welfare IR contract; ties go to the more natural contract.
    pub optimal: Contract,
    pub rules: Vec<DecisionRules>,
}

impl SweepPoint {
    pub fn utility(&self, c: Contract, p: Player) -> f64 {
        self.utilities[c.index()][p.index()]
    }

    pub fn welfare(&self, c: Contract) -> f64 {
        self.utilities[c.index()].iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostSweep {
    pub seed: u64,
    pub epsilon: f64,
    pub points: Vec<SweepPoint>,
}

impl CostSweep {
    /// One row per (cost, contract, firm).
    pub fn to_csv(&self) -> String {
        let mut out = format!("# seed={} epsilon={}\ncost,contract,firm,utility,ir_flag,optimal_flag\n", self.seed, self.epsilon);
        for pt in &self.points {
            for c in Contract::ALL {
                for p in Player::BOTH {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        pt.c1,
                        c.short(),
                        p.index() + 1,
                        pt.utility(c, p),
                        u8::from(pt.ir[c.index()]),
                        u8::from(pt.optimal == c)
                    );
                }
            }
        }
        out
    }

    pub fn point(&self, c1: f64) -> Option<&SweepPoint> {
        self.points.iter().find(|p| (p.c1 - c1).abs() < 1e-9)
    }
}

pub fn sweep_point(firms: &TrainedFirms, labels: &[Label], c1: f64) -> Result<SweepPoint> {
    let utility = UtilityParams::significant_action(REWARD, c1)?;
    let mut utilities = [[0.0; 2]; 4];
    let mut rules = Vec::with_capacity(4);
    for c in Contract::ALL {
        let r = empirical_rules(c, &firms.stats, &utility)?;
        let (u1, u2) = r.evaluate(&firms.valid_signals[0], &firms.valid_signals[1], labels, &utility);
        utilities[c.index()] = [u1, u2];
        rules.push(r);
    }
    let ns = utilities[Contract::NoSharing.index()];
    let ir = utilities.map(|u| u[0] >= ns[0] - UTILITY_TIE_TOL && u[1] >= ns[1] - UTILITY_TIE_TOL);
    let mut optimal = Contract::NoSharing;
    let mut by_rank = Contract::ALL;
    by_rank.sort_by_key(|c| c.naturalness_rank());
    for c in by_rank {
        let w = utilities[c.index()][0] + utilities[c.index()][1];
        let best = utilities[optimal.index()][0] + utilities[optimal.index()][1];
        if ir[c.index()] && w > best + UTILITY_TIE_TOL {
            optimal = c;
        }
    }
    Ok(SweepPoint {
        c1,
        utilities,
        ir,
        optimal,
        rules,
    })
}

/// Trains once and evaluates all contracts at every cost, in parallel over costs.
pub fn cost_sweep(ds: &SyntheticDataset, grid: &[f64], cfg: &TrainingConfig) -> Result<CostSweep> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty cost grid".into()));
    }
    let firms = train_firms(ds, cfg)?;
    cost_sweep_trained(ds, &firms, grid)
}

pub fn cost_sweep_trained(ds: &SyntheticDataset, firms: &TrainedFirms, grid: &[f64]) -> Result<CostSweep> {
    let points = grid
        .par_iter()
        .map(|&c1| sweep_point(firms, &ds.valid.labels, c1))
        .collect::<Result<Vec<_>>>()?;
    Ok(CostSweep {
        seed: ds.spec.seed,
        epsilon: ds.spec.epsilon,
        points,
    })
}

/// Total sharing beside full sharing at one cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TotalSharingPoint {
    pub c1: f64,
    /// Per-firm validation utility when one model sees both views.
    pub total: f64,
    /// Mean of the two firms' full-sharing utilities.
    pub full: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TotalSharing {
    pub seed: u64,
    pub model: LinearClassifier,
    pub accuracy: f64,
    pub points: Vec<TotalSharingPoint>,
}

/// One classifier on the union of both views. Both firms act on
/// `Pr[1 | z] − c1·Pr[0 | z] ≥ 0`, with `Pr[· | z]` from smoothed test counts,
/// and split every outcome.
pub fn total_sharing(ds: &SyntheticDataset, grid: &[f64], cfg: &TrainingConfig) -> Result<TotalSharing> {
    let union = ds.union_features();
    let model = train_linear(&ds.train.features.select(&union), &ds.train.labels, cfg.epochs, cfg.rate)?;
    let test = model.predict_all(&ds.test.features.select(&union));
    let valid = model.predict_all(&ds.valid.features.select(&union));
    // counts[z][t]
    let mut counts = [[1.0f64; 2]; 2];
    for (&z, &t) in test.iter().zip(&ds.test.labels) {
        counts[usize::from(z)][t.index()] += 1.0;
    }
    let firms = train_firms(ds, cfg)?;
    let accuracy = valid
        .iter()
        .zip(&ds.valid.labels)
        .filter(|(&z, &t)| z == (t == Label::One))
        .count() as f64
        / valid.len() as f64;
    let points = grid
        .par_iter()
        .map(|&c1| {
            let utility = UtilityParams::significant_action(REWARD, c1)?;
            let act = [0usize, 1].map(|z| {
                let n = counts[z][0] + counts[z][1];
                Action::from_bool(counts[z][1] / n - c1 * counts[z][0] / n >= 0.0)
            });
            let total = valid
                .iter()
                .zip(&ds.valid.labels)
                .map(|(&z, &t)| {
                    let a = act[usize::from(z)];
                    expost_utility(&utility, a, t, a)
                })
                .sum::<f64>()
                / valid.len() as f64;
            let fs = sweep_point(&firms, &ds.valid.labels, c1)?;
            let full = fs.utilities[Contract::FullSharing.index()].iter().sum::<f64>() / 2.0;
            Ok(TotalSharingPoint { c1, total, full })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TotalSharing {
        seed: ds.spec.seed,
        model,
        accuracy,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::empirical::dataset::{generate_dataset, SyntheticDatasetSpec};

    fn small(seed: u64) -> SyntheticDataset {
        let mut spec = SyntheticDatasetSpec::with_seed(seed);
        spec.n_train = 1500;
        spec.n_test = 800;
        spec.n_valid = 800;
        generate_dataset(&spec).unwrap()
    }

    #[test]
    fn grid_has_51_points() {
        let g = default_cost_grid();
        assert_eq!(g.len(), 51);
        assert_eq!(g[1], 0.05);
        assert_eq!(*g.last().unwrap(), 2.5);
    }

    #[test]
    fn zero_cost_ties_every_contract() {
        let ds = small(2);
        let sweep = cost_sweep(&ds, &[0.0], &TrainingConfig::default()).unwrap();
        let u = sweep.points[0].utilities;
        assert!(u.iter().all(|x| x == &u[0]));
        assert_eq!(sweep.points[0].optimal, Contract::NoSharing);
    }

    #[test]
    fn utilities_bounded_by_cost_and_reward() {
        let ds = small(3);
        let grid = cost_grid(2.5, 0.25).unwrap();
        let sweep = cost_sweep(&ds, &grid, &TrainingConfig::default()).unwrap();
        for pt in &sweep.points {
            for u in pt.utilities.iter().flatten() {
                assert!(*u >= -pt.c1 - 1e-12 && *u <= REWARD + 1e-12);
            }
            assert!(pt.ir[Contract::NoSharing.index()]);
        }
    }

    #[test]
    fn csv_rows() {
        let ds = small(4);
        let sweep = cost_sweep(&ds, &[0.0, 1.0], &TrainingConfig::default()).unwrap();
        let csv = sweep.to_csv();
        assert!(csv.starts_with("# seed=4"));
        assert_eq!(csv.lines().count(), 2 + 2 * 8);
    }

    #[test]
    fn identical_views_total_matches_full() {
        let mut ds = small(5);
        ds.firm2_features = ds.firm1_features.clone();
        let ts = total_sharing(&ds, &[0.5, 1.0, 1.5], &TrainingConfig::default()).unwrap();
        for p in ts.points {
            assert!((p.total - p.full).abs() < 0.02, "{p:?}");
        }
    }

    #[test]
    fn disjoint_views_union_is_more_accurate() {
        let mut ds = small(6);
        ds.firm1_features = (0..10).collect();
        ds.firm2_features = (10..20).collect();
        let cfg = TrainingConfig::default();
        let ts = total_sharing(&ds, &[1.0], &cfg).unwrap();
        let firms = train_firms(&ds, &cfg).unwrap();
        let v1 = ds.valid.features.select(&ds.firm1_features);
        let v2 = ds.valid.features.select(&ds.firm2_features);
        assert!(ts.accuracy >= firms.firm1.accuracy(&v1, &ds.valid.labels));
        assert!(ts.accuracy >= firms.firm2.accuracy(&v2, &ds.valid.labels));
    }
}
