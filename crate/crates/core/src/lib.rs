//! Derivative-free minimization of black-box functions on hyper-rectangles
//! by recursive modified pattern search.
//!
//! The search itself lives in [`optimizer`]. [`bench`] provides the usual
//! global-optimization test functions with their domains, [`completion`]
//! applies the optimizer to SCAD-penalized matrix completion and [`cli`]
//! drives batch experiments.

pub mod bench;
pub mod cli;
pub mod completion;
pub mod domain;
pub mod objective;
pub mod optimizer;
pub mod params;
pub mod pool;

pub use domain::{round_point, Bounds, DomainError, UnitPoint};
pub use objective::{BoxObjective, Objective, UnitFn};
pub use optimizer::{
    optimize, optimize_convex, run_stage1, IterationReport, OptimizeError, OptimizeResult, Rmps,
    RunOutcome, Termination, TrajectoryPoint,
};
pub use params::{ParamError, TuningParams};
pub use pool::ProbeEvaluator;
