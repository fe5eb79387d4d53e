//! Matrix completion with a SCAD penalty on the singular values.
//!
//! The unknown entries of a partially observed matrix are the free variables
//! of a black-box problem: minimize the summed SCAD penalty of the singular
//! values of the completed matrix, with every entry in `[0, 255]`. The
//! objective is nonconvex and only available through evaluation, which is
//! what the pattern search is for.

mod masked;
pub mod pgm;
mod scad;
mod svd;

use thiserror::Error;

use crate::domain::DomainError;
use crate::optimizer::OptimizeError;

pub use masked::{
    complete, complete_with, completion_objective, Completion, CompletionObjective, MaskedMatrix,
    PIXEL_MAX,
};
pub use scad::{scad_penalty, ScadParams};
pub use svd::{singular_values, Matrix};

#[derive(Debug, Error)]
pub enum CompletionError {
    #[error("invalid SCAD parameters: {0}")]
    InvalidScad(String),
    #[error("SCAD penalty needs a nonnegative argument, got {0}")]
    NegativeArgument(f64),
    #[error("matrix {rows}x{cols} cannot hold {len} entries")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("mask has {actual} entries, matrix has {expected}")]
    MaskShape { expected: usize, actual: usize },
    #[error("no entry is observed")]
    NothingObserved,
    #[error("expected {expected} missing values, got {actual}")]
    MissingLength { expected: usize, actual: usize },
    #[error("value {0} lies outside [0, 255]")]
    OutOfRange(f64),
    #[error("non-finite matrix entry {0}")]
    NonFinite(f64),
    #[error(transparent)]
    Optimize(#[from] OptimizeError),
}

impl From<DomainError> for CompletionError {
    fn from(e: DomainError) -> Self {
        CompletionError::Optimize(e.into())
    }
}
