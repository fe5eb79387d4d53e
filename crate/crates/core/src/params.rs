use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("invalid tuning parameter `{name}`: {reason}")]
pub struct ParamError {
    pub name: &'static str,
    pub reason: String,
}

/// Tuning knobs of the pattern search.
///
/// The defaults are the values that work across low, moderate and high
/// dimensional benchmarks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TuningParams {
    /// Global step size at the start of every run, in unit-cube units.
    pub s_initial: f64,
    /// Step decay rate of the first run.
    pub rho1: f64,
    /// Step decay rate of every restart.
    pub rho2: f64,
    /// A run stops once the global step size drops to this value or below.
    /// Local step sizes are always kept strictly above it.
    pub phi: f64,
    /// Iteration cap inside one run.
    pub max_iter: usize,
    /// Cap on the number of runs.
    pub max_runs: usize,
    /// Squared displacement below which an iteration counts as a stall.
    pub tol_fun: f64,
    /// Decimal places used to compare the solutions of consecutive runs.
    pub round_factor: u32,
}

impl Default for TuningParams {
    fn default() -> Self {
        Self {
            s_initial: 1.0,
            rho1: 2.0,
            rho2: 1.05,
            phi: 1e-6,
            max_iter: 50_000,
            max_runs: 1000,
            tol_fun: 1e-15,
            round_factor: 6,
        }
    }
}

impl TuningParams {
    /// Decay rate used by the convexity fast path.
    pub const CONVEX_RHO: f64 = 4.0;

    pub fn validate(&self) -> Result<(), ParamError> {
        let fail = |name, reason: &str| {
            Err(ParamError {
                name,
                reason: reason.to_owned(),
            })
        };
        if !(self.rho1.is_finite() && self.rho1 > 1.0) {
            return fail("rho1", "must be a finite value greater than 1");
        }
        if !(self.rho2.is_finite() && self.rho2 > 1.0) {
            return fail("rho2", "must be a finite value greater than 1");
        }
        if !(self.s_initial.is_finite() && self.s_initial > 0.0) {
            return fail("s_initial", "must be positive and finite");
        }
        if !(self.phi > 0.0 && self.phi < self.s_initial) {
            return fail("phi", "must satisfy 0 < phi < s_initial");
        }
        if !(self.tol_fun.is_finite() && self.tol_fun > 0.0) {
            return fail("tol_fun", "must be positive and finite");
        }
        if self.max_iter == 0 {
            return fail("max_iter", "must be at least 1");
        }
        if self.max_runs == 0 {
            return fail("max_runs", "must be at least 1");
        }
        Ok(())
    }
}
