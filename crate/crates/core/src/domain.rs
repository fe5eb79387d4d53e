//! Hyper-rectangular search domains and the affine map onto the unit cube.
//!
//! The optimizer only ever sees points in `[0, 1]^n`. A [`Bounds`] value
//! translates between the user's coordinates and that normalized space.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DomainError {
    #[error("bounds must have at least one coordinate")]
    Empty,
    #[error("lower has {lower} coordinates but upper has {upper}")]
    LengthMismatch { lower: usize, upper: usize },
    #[error("interval {index} is invalid: [{lower}, {upper}]")]
    InvalidInterval { index: usize, lower: f64, upper: f64 },
    #[error("expected a point of dimension {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("coordinate {index} = {value} lies outside [{lower}, {upper}]")]
    OutsideBounds {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },
}

/// A product of closed, bounded intervals `[lower_i, upper_i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, DomainError> {
        if lower.len() != upper.len() {
            return Err(DomainError::LengthMismatch {
                lower: lower.len(),
                upper: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(DomainError::Empty);
        }
        for (index, (&a, &b)) in lower.iter().zip(&upper).enumerate() {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(DomainError::InvalidInterval {
                    index,
                    lower: a,
                    upper: b,
                });
            }
        }
        Ok(Self { lower, upper })
    }

    /// The cube `[lower, upper]^dim`.
    pub fn cube(lower: f64, upper: f64, dim: usize) -> Result<Self, DomainError> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn unit(dim: usize) -> Result<Self, DomainError> {
        Self::cube(0.0, 1.0, dim)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, z: &[f64]) -> bool {
        z.len() == self.dim()
            && z
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&a, &b))| a <= v && v <= b)
    }

    fn check_dim(&self, len: usize) -> Result<(), DomainError> {
        if len != self.dim() {
            return Err(DomainError::DimensionMismatch {
                expected: self.dim(),
                actual: len,
            });
        }
        Ok(())
    }

    /// Maps a point of the box onto the unit cube, `(z_i - a_i) / (b_i - a_i)`.
    ///
    /// Results are clamped into `[0, 1]` so that rounding at the endpoints
    /// never produces a coordinate the optimizer would consider infeasible.
    pub fn to_unit(&self, z: &[f64]) -> Result<UnitPoint, DomainError> {
        self.check_dim(z.len())?;
        let mut coords = Vec::with_capacity(z.len());
        for (index, &v) in z.iter().enumerate() {
            let (a, b) = (self.lower[index], self.upper[index]);
            if !(a <= v && v <= b) {
                return Err(DomainError::OutsideBounds {
                    index,
                    value: v,
                    lower: a,
                    upper: b,
                });
            }
            coords.push(((v - a) / (b - a)).clamp(0.0, 1.0));
        }
        Ok(UnitPoint(coords))
    }

    /// Inverse of [`Bounds::to_unit`], `a_i + u_i (b_i - a_i)`.
    pub fn from_unit(&self, u: &UnitPoint) -> Result<Vec<f64>, DomainError> {
        self.check_dim(u.dim())?;
        Ok(self.map_from_unit(u.coords()))
    }

    /// Unchecked variant used on hot paths where the length is already known.
    pub(crate) fn map_from_unit(&self, u: &[f64]) -> Vec<f64> {
        let mut z = Vec::with_capacity(u.len());
        self.map_from_unit_into(u, &mut z);
        z
    }

    pub(crate) fn map_from_unit_into(&self, u: &[f64], out: &mut Vec<f64>) {
        out.clear();
        out.extend(
            u.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .map(|(&t, (&a, &b))| a + t * (b - a)),
        );
    }
}

/// A point of the unit cube `[0, 1]^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitPoint(Vec<f64>);

impl UnitPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self, DomainError> {
        if coords.is_empty() {
            return Err(DomainError::Empty);
        }
        if let Some((index, &value)) = coords
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(DomainError::OutsideBounds {
                index,
                value,
                lower: 0.0,
                upper: 1.0,
            });
        }
        Ok(Self(coords))
    }

    /// Caller guarantees every coordinate is in `[0, 1]`.
    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!(coords.iter().all(|v| (0.0..=1.0).contains(v)));
        Self(coords)
    }

    /// The centre of the cube.
    pub fn center(dim: usize) -> Self {
        Self(vec![0.5; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl AsRef<[f64]> for UnitPoint {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Rounds `value` to `digits` decimal places, ties away from zero.
pub fn round_to_digits(value: f64, digits: u32) -> f64 {
    // Beyond ~17 significant digits every f64 is already "rounded".
    if digits > 300 {
        return value;
    }
    let scale = 10f64.powi(digits as i32);
    let scaled = value * scale;
    if !scaled.is_finite() {
        return value;
    }
    scaled.round() / scale
}

/// Rounds each coordinate of `u` to `digits` decimal places.
pub fn round_point(u: &UnitPoint, digits: u32) -> UnitPoint {
    UnitPoint(
        u.0.iter()
            .map(|&v| round_to_digits(v, digits).clamp(0.0, 1.0))
            .collect(),
    )
}
