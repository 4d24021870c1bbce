use thiserror::Error;

use crate::utility::Contract;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible correlation θ = {theta} for α = {alpha}, β = {beta}: cell {cell} = {value:e}")]
    InfeasibleCorrelation {
        alpha: f64,
        beta: f64,
        theta: f64,
        cell: String,
        value: f64,
    },

    #[error("correlation undefined: degenerate marginal ({0})")]
    DegenerateMarginal(String),

    #[error("conditional utility undefined: {0} has zero probability mass")]
    ZeroMass(String),

    #[error("sample {0} has zero probability under both hypotheses")]
    ZeroProbabilitySample(String),

    #[error("enumeration capacity exceeded: {0}")]
    Capacity(String),

    #[error("no pure equilibrium under {0}; dominance undefined")]
    NoPureEquilibrium(Contract),

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
