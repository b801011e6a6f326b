//! Multi-objective evolutionary optimization with stochastic population
//! update and an unbounded archive.
//!
//! The library implements two classic evolutionary multi-objective
//! algorithms, SMS-EMOA (steady-state, hypervolume-driven) and NSGA-II
//! (generational, crowding-driven), each in four population-management
//! variants: the original deterministic survival selection, a stochastic
//! population update that applies survival selection only to a uniform
//! subsample, and either of those combined with an unbounded archive of all
//! non-dominated solutions ever evaluated.
//!
//! Around the algorithms sit:
//!
//! * [`problems`]: the OneJumpZeroJump bi-objective bitstring benchmark with
//!   its closed-form Pareto front, and a multi-objective TSP over shared-city
//!   cost matrices (TSPLIB subset or native JSON), with exhaustive front
//!   enumeration for small instances.
//! * [`ranking`]: non-dominated sorting, crowding distance, and exact
//!   bi-objective hypervolume plus per-point contributions (with or without
//!   a reference point).
//! * [`analysis`]: quality indicators (IGD, front coverage), the Wilcoxon
//!   rank-sum test (exact and normal-approximation), and runtime-bound
//!   calculators for the stochastic update.
//! * [`oracle`]: deliberately naive, independent re-implementations
//!   (rasterized hypervolume, quadratic sorting, enumerated rank-sum tails)
//!   used to cross-check the fast code paths.
//! * [`harness`]: seeded, replicated experiments producing byte-stable
//!   `rows.csv` / `summary.json` artifacts.
//!
//! Every random decision flows through [`core::RngStream`], a ChaCha8-based
//! generator addressed by `(seed, stream)`; identical inputs replay
//! identical runs on every platform.

pub mod analysis;
pub mod core;
pub mod harness;
pub mod moea;
pub mod oracle;
pub mod problems;
pub mod ranking;
pub mod variation;

/// Library-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("objective vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("objective vectors disagree on optimization directions")]
    DirectionMismatch,
    #[error("objective values must be finite")]
    NonFiniteObjective,
    #[error("an objective vector needs at least two components, got {0}")]
    TooFewObjectives(usize),
    #[error("expected a {expected} genome")]
    GenomeKind { expected: &'static str },
    #[error("sequence is not a permutation of 0..{len}")]
    InvalidPermutation { len: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("enumeration refused: {0}")]
    EnumerationTooLarge(String),
    #[error("oracle budget exceeded: {0}")]
    OracleBudgetExceeded(String),
    #[error("unsupported TSPLIB feature: {0}")]
    UnsupportedTsplib(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
