//! Helpers shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

use std::cell::RefCell;
use std::sync::atomic::{AtomicUsize, Ordering};

use nalgebra::DMatrix;
use rmps::bench::StartGenerator;
use rmps::completion::{Matrix, MaskedMatrix};
use rmps::{Objective, OptimizeError, OptimizeResult, Rmps, TuningParams, UnitPoint};

/// Objective wrapper that counts evaluations and flags every point outside
/// the unit cube.
pub struct Audited<O> {
    inner: O,
    evals: AtomicUsize,
    infeasible: AtomicUsize,
}

impl<O: Objective> Audited<O> {
    pub fn new(inner: O) -> Self {
        Self {
            inner,
            evals: AtomicUsize::new(0),
            infeasible: AtomicUsize::new(0),
        }
    }

    pub fn evals(&self) -> usize {
        self.evals.load(Ordering::Relaxed)
    }

    pub fn infeasible(&self) -> usize {
        self.infeasible.load(Ordering::Relaxed)
    }
}

impl<O: Objective> Objective for Audited<O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.evals.fetch_add(1, Ordering::Relaxed);
        if x.len() != self.inner.dim() || x.iter().any(|v| !(0.0..=1.0).contains(v)) {
            self.infeasible.fetch_add(1, Ordering::Relaxed);
        }
        self.inner.eval(x)
    }

    fn to_original(&self, x: &[f64]) -> Vec<f64> {
        self.inner.to_original(x)
    }
}

/// Violations of the per-iteration and per-result invariants of one
/// minimization. All counters are zero for a conforming run.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Violations {
    pub iterations: usize,
    /// Iterations that evaluated more than `2n` probes.
    pub too_many_evals: usize,
    /// Iterations whose incumbent value rose within a run.
    pub ascent: usize,
    /// Objective calls outside `[0, 1]^n`.
    pub infeasible: usize,
    /// Trajectory rows whose best value rose.
    pub trajectory_ascent: usize,
    /// Reported evaluation count differs from the actual number of calls.
    pub eval_count_mismatch: usize,
    /// Reported value differs from the objective at the reported solution.
    pub value_mismatch: usize,
}

impl Violations {
    pub fn is_clean(&self) -> bool {
        Violations {
            iterations: self.iterations,
            ..Violations::default()
        } == *self
    }

    pub fn merge(&mut self, o: &Violations) {
        self.iterations += o.iterations;
        self.too_many_evals += o.too_many_evals;
        self.ascent += o.ascent;
        self.infeasible += o.infeasible;
        self.trajectory_ascent += o.trajectory_ascent;
        self.eval_count_mismatch += o.eval_count_mismatch;
        self.value_mismatch += o.value_mismatch;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Default,
    Convex,
}

/// Minimizes `obj` with every invariant instrumented.
pub fn audited_minimize<O: Objective>(
    obj: O,
    x0: &UnitPoint,
    params: &TuningParams,
    mode: Mode,
    workers: usize,
) -> Result<(OptimizeResult, Violations), OptimizeError> {
    let audited = Audited::new(obj);
    let state = RefCell::new((Violations::default(), 0usize, f64::INFINITY));
    let result = {
        let mut rmps = Rmps::new(*params)?
            .with_workers(workers)?
            .with_observer(|r| {
                let mut st = state.borrow_mut();
                let (v, run, last) = &mut *st;
                v.iterations += 1;
                if r.evals > 2 * r.dim {
                    v.too_many_evals += 1;
                }
                if r.run != *run {
                    *run = r.run;
                    *last = r.value;
                } else {
                    if r.value > *last {
                        v.ascent += 1;
                    }
                    *last = r.value;
                }
            });
        match mode {
            Mode::Default => rmps.minimize(&audited, x0)?,
            Mode::Convex => rmps.minimize_convex(&audited, x0)?,
        }
    };
    let mut v = state.into_inner().0;
    v.infeasible = audited.infeasible();
    v.trajectory_ascent = result
        .trajectory
        .windows(2)
        .filter(|w| w[1].best_value > w[0].best_value)
        .count();
    if audited.evals() != result.total_evals {
        v.eval_count_mismatch = 1;
    }
    if audited.inner.eval(result.unit_solution.coords()) != result.value {
        v.value_mismatch = 1;
    }
    Ok((result, v))
}

/// Trajectory without the wall-clock column, with values as raw bits.
pub fn trajectory_key(r: &OptimizeResult) -> Vec<(usize, usize, usize, u64)> {
    r.trajectory
        .iter()
        .map(|t| (t.run, t.iteration, t.cumulative_evals, t.best_value.to_bits()))
        .collect()
}

/// Smallest integer `f` with `s / rho^f < gap` for an overshooting step
/// (`s >= gap`), found by walking `f` upward from zero with `rho^f` built
/// from repeated multiplication.
pub fn smallest_exponent(gap: f64, s: f64, rho: f64) -> i32 {
    assert!(s >= gap, "step {s} does not overshoot gap {gap}");
    let mut f = 0;
    let mut p = 1.0;
    while s / p >= gap {
        p *= rho;
        f += 1;
    }
    f
}

/// Reference answer for the boundary-shrink rule.
pub fn shrink_oracle(gap: f64, s: f64, rho: f64, phi: f64) -> Option<i32> {
    if gap <= phi {
        return None;
    }
    let f = smallest_exponent(gap, s, rho);
    let mut p = 1.0;
    for _ in 0..f {
        p *= rho;
    }
    (s / p > phi).then_some(f)
}

/// Singular values as square roots of the eigenvalues of `M^T M`, sorted
/// nonincreasing.
pub fn eigen_singular_values(m: &Matrix) -> Vec<f64> {
    let a = DMatrix::from_row_slice(m.rows(), m.cols(), m.data());
    let gram = if m.rows() >= m.cols() {
        a.transpose() * &a
    } else {
        &a * a.transpose()
    };
    let mut s: Vec<f64> = gram
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

pub fn random_matrix(g: &mut StartGenerator, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| 2.0 * g.next_unit() - 1.0).collect();
    Matrix::new(rows, cols, data).unwrap()
}

/// A rank-`rank` `n x n` matrix with entries in `[0, 255]` and a mask hiding
/// `missing` entries chosen uniformly without replacement.
pub struct SyntheticCompletion {
    pub truth: Matrix,
    pub masked: MaskedMatrix,
}

impl SyntheticCompletion {
    pub fn new(seed: u64, n: usize, rank: usize, missing: usize) -> Self {
        let mut g = StartGenerator::new(seed);
        let u: Vec<f64> = (0..n * rank).map(|_| g.next_unit()).collect();
        let v: Vec<f64> = (0..n * rank).map(|_| g.next_unit()).collect();
        // each entry is a sum of `rank` products of numbers in [0, 1)
        let scale = 255.0 / rank as f64;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = scale * (0..rank).map(|k| u[i * rank + k] * v[j * rank + k]).sum::<f64>();
            }
        }
        let mut order: Vec<usize> = (0..n * n).collect();
        for i in (1..order.len()).rev() {
            let j = ((g.next_unit() * (i + 1) as f64) as usize).min(i);
            order.swap(i, j);
        }
        let mut mask = vec![true; n * n];
        for &i in &order[..missing] {
            mask[i] = false;
        }
        let truth = Matrix::new(n, n, data).unwrap();
        let masked = MaskedMatrix::new(truth.clone(), mask).unwrap();
        Self { truth, masked }
    }

    /// Root mean squared error of `m` against the truth on the missing
    /// entries.
    pub fn rmse(&self, m: &Matrix) -> f64 {
        let idx = self.masked.missing_indices();
        let sum: f64 = idx
            .iter()
            .map(|&i| (m.data()[i] - self.truth.data()[i]).powi(2))
            .sum();
        (sum / idx.len() as f64).sqrt()
    }

    pub fn mean_fill(&self) -> Matrix {
        let mean = self.masked.observed_mean();
        self.masked
            .assemble(&vec![mean; self.masked.missing_count()])
            .unwrap()
    }
}

/// Positive-definite quadratic `(u - c)^T A (u - c)` with `A = B^T B / n + I / 10`,
/// `B` uniform in `[-1, 1]` and the minimizer `c` uniform in `(0.2, 0.8)^n`.
pub struct Quadratic {
    pub n: usize,
    pub a: Vec<f64>,
    pub c: Vec<f64>,
}

impl Quadratic {
    pub fn random(g: &mut StartGenerator, n: usize) -> Self {
        let b: Vec<f64> = (0..n * n).map(|_| 2.0 * g.next_unit() - 1.0).collect();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|k| b[k * n + i] * b[k * n + j]).sum();
                a[i * n + j] = dot / n as f64 + if i == j { 0.1 } else { 0.0 };
            }
        }
        let c = (0..n).map(|_| 0.2 + 0.6 * g.next_unit()).collect();
        Self { n, a, c }
    }

    pub fn eval(&self, u: &[f64]) -> f64 {
        let d: Vec<f64> = u.iter().zip(&self.c).map(|(x, c)| x - c).collect();
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                s += d[i] * self.a[i * self.n + j] * d[j];
            }
        }
        s
    }
}
