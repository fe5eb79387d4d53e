use crate::domain::UnitPoint;
use crate::objective::Objective;
use crate::optimizer::{OptimizeResult, Rmps};
use crate::params::TuningParams;

use super::scad::ScadParams;
use super::svd::{jacobi_singular_values, Matrix};
use super::CompletionError;

/// Grey levels, and therefore completed entries, live in `[0, PIXEL_MAX]`.
pub const PIXEL_MAX: f64 = 255.0;

/// A matrix with a subset of observed entries.
#[derive(Debug, Clone, PartialEq)]
pub struct MaskedMatrix {
    values: Matrix,
    /// Row-major, `true` where the entry is observed.
    mask: Vec<bool>,
    missing: Vec<usize>,
}

impl MaskedMatrix {
    /// Entries of `values` at unobserved positions are ignored.
    pub fn new(values: Matrix, mask: Vec<bool>) -> Result<Self, CompletionError> {
        if mask.len() != values.data().len() {
            return Err(CompletionError::MaskShape {
                expected: values.data().len(),
                actual: mask.len(),
            });
        }
        if !mask.iter().any(|&m| m) {
            return Err(CompletionError::NothingObserved);
        }
        for (v, _) in values.data().iter().zip(&mask).filter(|(_, &m)| m) {
            if !v.is_finite() {
                return Err(CompletionError::NonFinite(*v));
            }
        }
        let missing = mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| !m)
            .map(|(i, _)| i)
            .collect();
        Ok(Self {
            values,
            mask,
            missing,
        })
    }

    pub fn rows(&self) -> usize {
        self.values.rows()
    }

    pub fn cols(&self) -> usize {
        self.values.cols()
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Row-major positions of the unobserved entries.
    pub fn missing_indices(&self) -> &[usize] {
        &self.missing
    }

    pub fn missing_count(&self) -> usize {
        self.missing.len()
    }

    pub fn observed_mean(&self) -> f64 {
        let (sum, n) = self
            .values
            .data()
            .iter()
            .zip(&self.mask)
            .filter(|(_, &m)| m)
            .fold((0.0, 0usize), |(s, n), (v, _)| (s + v, n + 1));
        sum / n as f64
    }

    /// Observed entries verbatim, `missing_vals` in the unobserved slots in
    /// row-major order.
    pub fn assemble(&self, missing_vals: &[f64]) -> Result<Matrix, CompletionError> {
        if missing_vals.len() != self.missing.len() {
            return Err(CompletionError::MissingLength {
                expected: self.missing.len(),
                actual: missing_vals.len(),
            });
        }
        let mut m = self.values.clone();
        fill(m.data_mut(), &self.missing, missing_vals);
        Ok(m)
    }
}

fn fill(data: &mut [f64], missing: &[usize], vals: &[f64]) {
    for (&i, &v) in missing.iter().zip(vals) {
        data[i] = v;
    }
}

fn scad_of_singular_values(rows: usize, cols: usize, data: &[f64], p: &ScadParams) -> f64 {
    jacobi_singular_values(rows, cols, data)
        .into_iter()
        .map(|s| p.penalty(s))
        .sum()
}

/// Sum of SCAD penalties of the singular values of the completed matrix.
pub fn completion_objective(
    missing_vals: &[f64],
    masked: &MaskedMatrix,
    p: &ScadParams,
) -> Result<f64, CompletionError> {
    if let Some(&v) = missing_vals
        .iter()
        .find(|v| !(0.0..=PIXEL_MAX).contains(*v))
    {
        return Err(CompletionError::OutOfRange(v));
    }
    let x = masked.assemble(missing_vals)?;
    Ok(scad_of_singular_values(x.rows(), x.cols(), x.data(), p))
}

/// [`completion_objective`] over the unit cube, one coordinate per missing
/// entry scaled onto `[0, PIXEL_MAX]`.
pub struct CompletionObjective<'a> {
    masked: &'a MaskedMatrix,
    scad: ScadParams,
}

impl<'a> CompletionObjective<'a> {
    pub fn new(masked: &'a MaskedMatrix, scad: ScadParams) -> Self {
        Self { masked, scad }
    }
}

impl Objective for CompletionObjective<'_> {
    fn dim(&self) -> usize {
        self.masked.missing_count()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let mut data = self.masked.values.data().to_vec();
        for (&i, &u) in self.masked.missing.iter().zip(x) {
            data[i] = u * PIXEL_MAX;
        }
        scad_of_singular_values(self.masked.rows(), self.masked.cols(), &data, &self.scad)
    }

    fn to_original(&self, x: &[f64]) -> Vec<f64> {
        x.iter().map(|u| u * PIXEL_MAX).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Completion {
    pub matrix: Matrix,
    pub start_objective: f64,
    pub final_objective: f64,
    /// `None` when nothing was missing.
    pub result: Option<OptimizeResult>,
}

impl Completion {
    pub fn evals(&self) -> usize {
        self.result.as_ref().map_or(0, |r| r.total_evals)
    }
}

/// Fills the missing entries by minimizing the SCAD objective over
/// `[0, PIXEL_MAX]^m`, starting with the observed mean in every slot.
pub fn complete(
    masked: &MaskedMatrix,
    scad: ScadParams,
    params: &TuningParams,
    workers: usize,
) -> Result<Completion, CompletionError> {
    let mut rmps = Rmps::new(*params)?.with_workers(workers)?;
    complete_with(masked, scad, &mut rmps)
}

/// [`complete`] with a caller-configured optimizer.
pub fn complete_with(
    masked: &MaskedMatrix,
    scad: ScadParams,
    rmps: &mut Rmps<'_>,
) -> Result<Completion, CompletionError> {
    let start_vals = vec![masked.observed_mean().clamp(0.0, PIXEL_MAX); masked.missing_count()];
    let start_matrix = masked.assemble(&start_vals)?;
    let start_objective =
        scad_of_singular_values(masked.rows(), masked.cols(), start_matrix.data(), &scad);
    if masked.missing_count() == 0 {
        return Ok(Completion {
            matrix: start_matrix,
            start_objective,
            final_objective: start_objective,
            result: None,
        });
    }
    let obj = CompletionObjective::new(masked, scad);
    let x0 = UnitPoint::new(start_vals.iter().map(|v| v / PIXEL_MAX).collect())?;
    let result = rmps.minimize(&obj, &x0)?;
    let matrix = masked.assemble(&result.solution)?;
    Ok(Completion {
        matrix,
        start_objective,
        final_objective: result.value,
        result: Some(result),
    })
}
