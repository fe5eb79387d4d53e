//! The black-box contract seen by the optimizer.

use crate::domain::Bounds;

/// A deterministic function on the unit cube `[0, 1]^n`.
///
/// Implementations must be safe to call from several threads at once; probe
/// evaluations inside one iteration may run concurrently.
pub trait Objective: Sync {
    fn dim(&self) -> usize;

    /// Value at a point of the unit cube.
    fn eval(&self, x: &[f64]) -> f64;

    /// Maps a unit-cube point back to the caller's coordinates. Identity
    /// unless the objective wraps a non-unit domain.
    fn to_original(&self, x: &[f64]) -> Vec<f64> {
        x.to_vec()
    }
}

impl<O: Objective + ?Sized> Objective for &O {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, x: &[f64]) -> f64 {
        (**self).eval(x)
    }
    fn to_original(&self, x: &[f64]) -> Vec<f64> {
        (**self).to_original(x)
    }
}

/// Wraps a closure defined directly on the unit cube.
pub struct UnitFn<F> {
    dim: usize,
    f: F,
}

impl<F> UnitFn<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F> Objective for UnitFn<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

/// A function of the original coordinates on a hyper-rectangle, exposed to
/// the optimizer through the affine map onto the unit cube.
pub struct BoxObjective<F> {
    bounds: Bounds,
    f: F,
}

impl<F> BoxObjective<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    pub fn new(bounds: Bounds, f: F) -> Self {
        Self { bounds, f }
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }
}

impl<F> Objective for BoxObjective<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn dim(&self) -> usize {
        self.bounds.dim()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        (self.f)(&self.bounds.map_from_unit(x))
    }

    fn to_original(&self, x: &[f64]) -> Vec<f64> {
        self.bounds.map_from_unit(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_objective_maps_coordinates() {
        let b = Bounds::cube(-5.0, 5.0, 2).unwrap();
        let obj = BoxObjective::new(b, |z: &[f64]| z[0] * 10.0 + z[1]);
        assert_eq!(obj.dim(), 2);
        assert_eq!(obj.eval(&[0.5, 1.0]), 5.0);
        assert_eq!(obj.to_original(&[0.0, 0.5]), vec![-5.0, 0.0]);
    }
}
