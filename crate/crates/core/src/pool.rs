//! Evaluation of the probes of one iteration, optionally on a worker pool.
//!
//! Results always come back in the order the probes were submitted, so the
//! move chosen afterwards does not depend on scheduling.

use rayon::prelude::*;
use thiserror::Error;

use crate::objective::Objective;

#[derive(Debug, Error)]
pub enum PoolError {
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error("failed to start worker pool: {0}")]
    Build(#[from] rayon::ThreadPoolBuildError),
}

/// A single-coordinate perturbation of a base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoordinateMove {
    pub index: usize,
    pub value: f64,
}

pub struct ProbeEvaluator {
    workers: usize,
    pool: Option<rayon::ThreadPool>,
}

impl ProbeEvaluator {
    pub fn new(workers: usize) -> Result<Self, PoolError> {
        if workers == 0 {
            return Err(PoolError::NoWorkers);
        }
        let pool = if workers == 1 {
            None
        } else {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .thread_name(|i| format!("rmps-probe-{i}"))
                    .build()?,
            )
        };
        Ok(Self { workers, pool })
    }

    pub fn sequential() -> Self {
        Self {
            workers: 1,
            pool: None,
        }
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Evaluates `obj` at `base` with each move applied in turn.
    pub fn evaluate<O>(&self, obj: &O, base: &[f64], moves: &[CoordinateMove]) -> Vec<f64>
    where
        O: Objective + ?Sized,
    {
        match &self.pool {
            None => {
                let mut scratch = base.to_vec();
                moves
                    .iter()
                    .map(|m| eval_move(obj, base, &mut scratch, m))
                    .collect()
            }
            Some(pool) => pool.install(|| {
                moves
                    .par_iter()
                    .map_init(|| base.to_vec(), |scratch, m| eval_move(obj, base, scratch, m))
                    .collect()
            }),
        }
    }
}

impl Default for ProbeEvaluator {
    fn default() -> Self {
        Self::sequential()
    }
}

impl std::fmt::Debug for ProbeEvaluator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProbeEvaluator")
            .field("workers", &self.workers)
            .finish()
    }
}

fn eval_move<O: Objective + ?Sized>(
    obj: &O,
    base: &[f64],
    scratch: &mut [f64],
    m: &CoordinateMove,
) -> f64 {
    scratch[m.index] = m.value;
    let v = obj.eval(scratch);
    scratch[m.index] = base[m.index];
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::UnitFn;

    #[test]
    fn zero_workers_rejected() {
        assert!(matches!(ProbeEvaluator::new(0), Err(PoolError::NoWorkers)));
    }

    #[test]
    fn order_is_preserved_across_worker_counts() {
        let obj = UnitFn::new(3, |x: &[f64]| x[0] + 10.0 * x[1] + 100.0 * x[2]);
        let base = [0.1, 0.2, 0.3];
        let moves: Vec<_> = (0..300)
            .map(|k| CoordinateMove {
                index: k % 3,
                value: (k as f64) / 300.0,
            })
            .collect();
        let seq = ProbeEvaluator::sequential().evaluate(&obj, &base, &moves);
        for w in [2, 4, 8] {
            let par = ProbeEvaluator::new(w).unwrap().evaluate(&obj, &base, &moves);
            assert_eq!(seq, par);
        }
        // each evaluation sees the base with exactly one coordinate changed
        assert_eq!(seq[0], obj.eval(&[0.0, 0.2, 0.3]));
        assert_eq!(seq[4], obj.eval(&[0.1, 4.0 / 300.0, 0.3]));
    }
}
