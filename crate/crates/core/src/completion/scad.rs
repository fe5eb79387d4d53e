use serde::{Deserialize, Serialize};

use super::CompletionError;

/// Parameters of the smoothly clipped absolute deviation penalty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScadParams {
    pub lambda: f64,
    pub a: f64,
}

impl ScadParams {
    pub const DEFAULT_A: f64 = 3.7;

    pub fn new(lambda: f64, a: f64) -> Result<Self, CompletionError> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(CompletionError::InvalidScad(format!(
                "lambda must be positive and finite, got {lambda}"
            )));
        }
        if !(a.is_finite() && a > 2.0) {
            return Err(CompletionError::InvalidScad(format!(
                "a must be finite and greater than 2, got {a}"
            )));
        }
        Ok(Self { lambda, a })
    }

    pub fn with_lambda(lambda: f64) -> Result<Self, CompletionError> {
        Self::new(lambda, Self::DEFAULT_A)
    }

    /// Penalty at `theta >= 0`: linear up to `lambda`, quadratic up to
    /// `a * lambda`, constant afterwards.
    pub fn penalty(&self, theta: f64) -> f64 {
        if theta <= self.lambda {
            self.linear(theta)
        } else if theta <= self.a * self.lambda {
            self.quadratic(theta)
        } else {
            self.plateau()
        }
    }

    fn linear(&self, theta: f64) -> f64 {
        self.lambda * theta
    }

    fn quadratic(&self, theta: f64) -> f64 {
        let (l, a) = (self.lambda, self.a);
        (2.0 * a * l * theta - theta * theta - l * l) / (2.0 * (a - 1.0))
    }

    fn plateau(&self) -> f64 {
        self.lambda * self.lambda * (self.a + 1.0) / 2.0
    }
}

/// SCAD penalty of a nonnegative argument.
pub fn scad_penalty(theta: f64, p: &ScadParams) -> Result<f64, CompletionError> {
    if theta.is_nan() || theta < 0.0 {
        return Err(CompletionError::NegativeArgument(theta));
    }
    Ok(p.penalty(theta))
}
