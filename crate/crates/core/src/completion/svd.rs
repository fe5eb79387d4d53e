//! Dense row-major matrices and their singular values.

use super::CompletionError;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, CompletionError> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(CompletionError::Shape {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self, CompletionError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data: Vec<f64> = rows.iter().flat_map(|row| row.iter().copied()).collect();
        Self::new(r, c, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }
}

/// Singular values of `m`, nonincreasing.
pub fn singular_values(m: &Matrix) -> Result<Vec<f64>, CompletionError> {
    if let Some(v) = m.data.iter().find(|v| !v.is_finite()) {
        return Err(CompletionError::NonFinite(*v));
    }
    Ok(jacobi_singular_values(m.rows, m.cols, &m.data))
}

/// One-sided (Hestenes) Jacobi on the columns of a `rows x cols` row-major
/// matrix. Caller guarantees finite entries.
pub(crate) fn jacobi_singular_values(rows: usize, cols: usize, row_major: &[f64]) -> Vec<f64> {
    // Orthogonalize the shorter side: a row-major matrix read column-major
    // is its transpose, which has the same singular values.
    let (len, count, mut work) = if rows >= cols {
        let mut w = vec![0.0; rows * cols];
        for r in 0..rows {
            for c in 0..cols {
                w[c * rows + r] = row_major[r * cols + c];
            }
        }
        (rows, cols, w)
    } else {
        (cols, rows, row_major.to_vec())
    };

    let tol = f64::EPSILON * len as f64;
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..count {
            for q in (p + 1)..count {
                let (head, tail) = work.split_at_mut(q * len);
                let a = &mut head[p * len..(p + 1) * len];
                let b = &mut tail[..len];
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = 0.0;
                for (x, y) in a.iter().zip(b.iter()) {
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if gamma == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for (x, y) in a.iter_mut().zip(b.iter_mut()) {
                    let (xv, yv) = (*x, *y);
                    *x = c * xv - s * yv;
                    *y = s * xv + c * yv;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sigma: Vec<f64> = work
        .chunks_exact(len)
        .map(|col| col.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    sigma.sort_by(|x, y| y.total_cmp(x));
    sigma
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_diagonal() {
        let id = Matrix::from_rows(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]).unwrap();
        assert_eq!(singular_values(&id).unwrap(), vec![1.0, 1.0, 1.0]);
        let d = Matrix::from_rows(&[&[3.0, 0.0], &[0.0, -4.0]]).unwrap();
        assert_eq!(singular_values(&d).unwrap(), vec![4.0, 3.0]);
    }

    #[test]
    fn rectangular_both_orientations() {
        // [[1,1],[1,1],[0,0]] has singular values (2, 0)
        let tall = Matrix::from_rows(&[&[1.0, 1.0], &[1.0, 1.0], &[0.0, 0.0]]).unwrap();
        let s = singular_values(&tall).unwrap();
        assert!((s[0] - 2.0).abs() < 1e-14 && s[1].abs() < 1e-14);
        let wide = Matrix::from_rows(&[&[1.0, 1.0, 0.0], &[1.0, 1.0, 0.0]]).unwrap();
        let s = singular_values(&wide).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s[0] - 2.0).abs() < 1e-14 && s[1].abs() < 1e-14);
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(singular_values(&Matrix::zeros(3, 4)).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn rejects_non_finite_and_bad_shape() {
        let m = Matrix::from_rows(&[&[1.0, f64::NAN]]).unwrap();
        assert!(matches!(singular_values(&m), Err(CompletionError::NonFinite(_))));
        assert!(Matrix::new(2, 2, vec![1.0; 3]).is_err());
        assert!(Matrix::new(0, 2, vec![]).is_err());
    }
}
