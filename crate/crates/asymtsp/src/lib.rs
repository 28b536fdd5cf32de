//! Solver suite for metric asymmetric TSP built around two parameterized
//! approximation algorithms: a Christofides generalization driven by a vertex
//! cover of the asymmetric-edge graph, and a tree-doubling generalization
//! driven by the one-way edges of a minimum spanning arborescence. Both come
//! with additive lossy kernelizations, beta-relaxed variants that trade
//! approximation quality for smaller kernels, adversarial tightness-instance
//! generators, and a TSPLIB batch harness.
//!
//! Cost arithmetic is exact everywhere: instances are generic over a signed
//! exact scalar ([`weight::Weight`]), instantiated as `i64` for TSPLIB data
//! and `Ratio<i64>` when rational costs are needed. Ratios and thresholds are
//! exact rationals ([`weight::Frac`]) rendered as decimals only in reports.

// index loops over adjacency structures read better than iterator chains here
#![allow(clippy::needless_range_loop)]

pub mod christofides;
pub mod christofides_kernel;
pub mod exact;
pub mod generators;
pub mod harness;
pub mod instance;
pub mod metric;
pub mod oracles;
pub mod spanning;
pub mod tree_doubling;
pub mod tsplib;
pub mod weight;

pub use instance::{AsymmetryReport, Instance, Tour, Trail};
pub use weight::{Beta, Frac, Weight};

/// Instance over plain exact integers (TSPLIB data, generated families).
pub type IntInstance = Instance<i64>;
/// Instance over exact rationals.
pub type RatInstance = Instance<num_rational::Ratio<i64>>;

/// Errors shared across the suite. The CLI maps these onto exit codes:
/// parse errors exit 2, capacity errors 3, validation errors 4.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("instance of size {size} exceeds the exact-solver limit {limit}")]
    Capacity { size: usize, limit: usize },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("instance is not metric (triangle {0} -> {1} -> {2} is shorter than the direct edge); take the metric closure first")]
    NotMetric(usize, usize, usize),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(msg: impl Into<String>) -> Error {
        Error::Validation(msg.into())
    }

    /// Exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Capacity { .. } => 3,
            Error::Validation(_) | Error::NotMetric(..) => 4,
            Error::Io(_) => 1,
        }
    }
}
