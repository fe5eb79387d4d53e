//! Benchmark objectives, their search domains and seeded start points.

mod functions;
mod registry;
mod rng;

use thiserror::Error;

use crate::domain::DomainError;

pub use functions::*;
pub use registry::{
    evaluate_benchmark, find, lookup, registry, Argmin, Benchmark, BenchmarkSpec, Dimension,
    Domain, Suite,
};
pub use rng::{random_start, random_unit_start, StartGenerator};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("unknown benchmark function `{0}`")]
    UnknownFunction(String),
    #[error("unknown suite `{0}` (expected standard, highdim or boundary)")]
    UnknownSuite(String),
    #[error("`{name}` is not defined in dimension {requested}")]
    UnsupportedDimension { name: &'static str, requested: usize },
    #[error("`{name}` has no domain in the {suite} suite")]
    UnsupportedSuite { name: &'static str, suite: Suite },
    #[error(transparent)]
    Domain(#[from] DomainError),
}
