//! Signal agreement and how often each contract comes out on top.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dataset::{generate_dataset, SyntheticDatasetSpec, EPSILONS};
use super::sweep::{cost_grid, cost_sweep, CostSweep, SweepPoint, TrainingConfig};
use crate::error::{Error, Result};
use crate::utility::Contract;

/// Matthews correlation of two binary vectors; 0 when either is constant.
pub fn matthews_correlation(a: &[bool], b: &[bool]) -> Result<f64> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::InvalidParameter(format!("prediction lengths {} and {}", a.len(), b.len())));
    }
    let mut m = [[0.0f64; 2]; 2];
    for (&x, &y) in a.iter().zip(b) {
        m[usize::from(x)][usize::from(y)] += 1.0;
    }
    let (tp, tn, fp, fn_) = (m[1][1], m[0][0], m[0][1], m[1][0]);
    let denom = (tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_);
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok((tp * tn - fp * fn_) / denom.sqrt())
}

/// Costs scored by [`optimality_frequency`]: 0.5, 0.55, …, 1.5.
pub fn frequency_grid() -> Vec<f64> {
    cost_grid(1.5, 0.05).expect("constant grid is valid").into_iter().filter(|&c| c >= 0.5 - 1e-9).collect()
}

fn same_utilities(pt: &SweepPoint, a: Contract, b: Contract) -> bool {
    pt.utilities[a.index()] == pt.utilities[b.index()]
}

/// IR contracts not strictly Pareto dominated by any contract at this cost.
pub fn irpo_set(pt: &SweepPoint) -> Vec<Contract> {
    let u = &pt.utilities;
    let dominated = |c: Contract| {
        Contract::ALL.iter().any(|&d| {
            let (x, y) = (u[d.index()], u[c.index()]);
            x[0] >= y[0] && x[1] >= y[1] && (x[0] > y[0] || x[1] > y[1])
        })
    };
    Contract::ALL.into_iter().filter(|&c| pt.ir[c.index()] && !dominated(c)).collect()
}

/// IRPO contracts at one cost after collapsing exact ties toward the more
/// natural contract: anything tied with ns goes to ns, and ts or is tied with
/// fs goes to fs.
pub fn credited_contracts(pt: &SweepPoint) -> Vec<Contract> {
    let set = irpo_set(pt);
    set.iter()
        .copied()
        .filter(|&c| {
            if c != Contract::NoSharing && set.contains(&Contract::NoSharing) && same_utilities(pt, c, Contract::NoSharing) {
                return false;
            }
            let partial = matches!(c, Contract::TrainSharing | Contract::InferSharing);
            !(partial && set.contains(&Contract::FullSharing) && same_utilities(pt, c, Contract::FullSharing))
        })
        .collect()
}

/// Share of the costs in [`frequency_grid`] credited to each contract, with
/// credit split equally at a cost among the surviving IRPO contracts.
pub fn optimality_frequency(sweep: &CostSweep) -> Result<[f64; 4]> {
    let grid = frequency_grid();
    let mut freq = [0.0; 4];
    for &c1 in &grid {
        let pt = sweep
            .point(c1)
            .ok_or_else(|| Error::InvalidParameter(format!("sweep does not cover cost {c1}")))?;
        let winners = credited_contracts(pt);
        if winners.is_empty() {
            return Err(Error::InvalidGame(format!("no IRPO contract at cost {c1}")));
        }
        for c in &winners {
            freq[c.index()] += 1.0 / winners.len() as f64;
        }
    }
    Ok(freq.map(|f| f / grid.len() as f64))
}

/// One dataset of the robustness battery.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatteryRun {
    pub epsilon: f64,
    pub seed: u64,
    /// Matthews correlation of the two firms' validation signals.
    pub mcc: f64,
    /// Indexed like `Contract::ALL`.
    pub frequencies: [f64; 4],
}

/// Every ε in [`EPSILONS`] crossed with `seeds`, in parallel.
pub fn battery(seeds: &[u64], cfg: &TrainingConfig) -> Result<Vec<BatteryRun>> {
    let jobs: Vec<(f64, u64)> = EPSILONS.iter().flat_map(|&e| seeds.iter().map(move |&s| (e, s))).collect();
    jobs.par_iter()
        .map(|&(epsilon, seed)| {
            let ds = generate_dataset(&SyntheticDatasetSpec::with_seed(seed).with_epsilon(epsilon))?;
            let sweep = cost_sweep(&ds, &frequency_grid(), cfg)?;
            let firms = super::sweep::train_firms(&ds, cfg)?;
            Ok(BatteryRun {
                epsilon,
                seed,
                mcc: matthews_correlation(&firms.valid_signals[0], &firms.valid_signals[1])?,
                frequencies: optimality_frequency(&sweep)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn point(c1: f64, utilities: [[f64; 2]; 4]) -> SweepPoint {
        let ns = utilities[0];
        SweepPoint {
            c1,
            utilities,
            ir: utilities.map(|u| u[0] >= ns[0] && u[1] >= ns[1]),
            optimal: Contract::NoSharing,
            rules: Vec::new(),
        }
    }

    fn sweep_of(f: impl Fn(f64) -> [[f64; 2]; 4]) -> CostSweep {
        CostSweep {
            seed: 0,
            epsilon: 1.0,
            points: frequency_grid().into_iter().map(|c| point(c, f(c))).collect(),
        }
    }

    #[test]
    fn mcc_extremes() {
        let a = [true, false, true, true, false];
        let b: Vec<bool> = a.iter().map(|x| !x).collect();
        assert!((matthews_correlation(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        assert!((matthews_correlation(&a, &b).unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(matthews_correlation(&a, &[true; 5]).unwrap(), 0.0);
        assert!(matthews_correlation(&[], &[]).is_err());
    }

    #[test]
    fn mcc_independent_near_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let a: Vec<bool> = (0..10_000).map(|_| rng.random_bool(0.5)).collect();
        let b: Vec<bool> = (0..10_000).map(|_| rng.random_bool(0.5)).collect();
        assert!(matthews_correlation(&a, &b).unwrap().abs() < 0.05);
    }

    #[test]
    fn grid_is_21_points() {
        let g = frequency_grid();
        assert_eq!(g.len(), 21);
        assert_eq!(g[0], 0.5);
        assert_eq!(g[20], 1.5);
    }

    #[test]
    fn single_winner_gets_everything() {
        let s = sweep_of(|_| [[0.1, 0.1], [0.15, 0.1], [0.1, 0.12], [0.2, 0.2]]);
        assert_eq!(optimality_frequency(&s).unwrap(), [0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn untied_pair_splits_evenly() {
        let s = sweep_of(|_| [[0.1, 0.1], [0.3, 0.15], [0.1, 0.1], [0.2, 0.2]]);
        assert_eq!(optimality_frequency(&s).unwrap(), [0.0, 0.5, 0.0, 0.5]);
    }

    #[test]
    fn ties_go_to_natural_contracts() {
        let s = sweep_of(|_| [[0.1, 0.1]; 4]);
        assert_eq!(optimality_frequency(&s).unwrap(), [1.0, 0.0, 0.0, 0.0]);
        let s = sweep_of(|_| [[0.1, 0.1], [0.2, 0.2], [0.2, 0.2], [0.2, 0.2]]);
        assert_eq!(optimality_frequency(&s).unwrap(), [0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn missing_cost_rejected() {
        let mut s = sweep_of(|_| [[0.1, 0.1]; 4]);
        s.points.pop();
        assert!(optimality_frequency(&s).is_err());
    }

    #[test]
    fn frequencies_sum_to_one_on_mixed_sweep() {
        let s = sweep_of(|c| {
            if c < 1.0 {
                [[0.1, 0.1], [0.3, 0.15], [0.1, 0.1], [0.2, 0.2]]
            } else {
                [[0.1, 0.1], [0.1, 0.1], [0.1, 0.1], [0.1, 0.1]]
            }
        });
        let f = optimality_frequency(&s).unwrap();
        assert!((f.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(f.iter().all(|&x| x >= 0.0));
    }
}
