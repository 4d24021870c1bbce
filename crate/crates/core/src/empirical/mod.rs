//! Synthetic stand-in for the loan-data experiment: two firms train linear
//! classifiers on overlapping feature views, learn contract decision rules
//! from test-split signal counts, and are scored on a validation split.

pub mod dataset;
pub mod linear;
pub mod metrics;
pub mod rules;
pub mod sweep;

pub use dataset::{generate_dataset, LabelModel, Matrix, Split, SyntheticDataset, SyntheticDatasetSpec, EPSILONS};
pub use linear::{train_linear, LinearClassifier};
pub use metrics::{battery, matthews_correlation, optimality_frequency, BatteryRun};
pub use rules::{empirical_rules, DecisionRules, EmpiricalStats, Selection};
pub use sweep::{cost_sweep, default_cost_grid, total_sharing, CostSweep, SweepPoint, TotalSharing, TrainingConfig};

/// Seed of the shipped default dataset.
pub const DEFAULT_SEED: u64 = 7;
