//! Two-firm prediction-sharing games.
//!
//! Two firms each hold a binary classifier and choose, per instance, between a
//! safe and a risky action; correct exclusive actions are rewarded and shared
//! actions split the payoff. This crate builds the Bayesian games induced by
//! the four sharing contracts (no, train, infer and full sharing), enumerates
//! their pure equilibria, and classifies contracts by individual rationality
//! and Pareto optimality.

pub mod contracts;
pub mod distributions;
pub mod empirical;
pub mod error;
pub mod game;
pub mod oracle;
pub mod utility;
pub mod verify;
pub mod worlds;

pub use error::{Error, Result};
pub use utility::{Action, Contract, Label, Player, UtilityFamily, UtilityParams};
