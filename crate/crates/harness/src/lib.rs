//! Independent reference implementations and input generators for the
//! test suites. The oracles re-derive results with their own arithmetic and
//! touch `expoly` only through its public types.

pub mod mpoly;
pub mod oracle;
pub mod random;
pub mod span;
pub mod upoly;

pub use oracle::{best_tuple, factor_mpoly, oracle_factor_bounded, oracle_power_search, ORACLE_MAX_DEGREE};
pub use random::{differential_instance, invariance_instance, random_epoly, RandomSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// A size bound was hit; the instance is out of the oracle's range.
    Cap(String),
    /// The input violates a precondition.
    Input(String),
}

impl std::fmt::Display for OracleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleError::Cap(m) => write!(f, "oracle cap exceeded: {m}"),
            OracleError::Input(m) => write!(f, "oracle input rejected: {m}"),
        }
    }
}

impl std::error::Error for OracleError {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/testing.md")]
mod book {}
