//! Recursive modified pattern search.
//!
//! A *run* moves one coordinate at a time: every iteration probes each
//! coordinate in both directions with the current global step (shrunk per
//! probe to stay inside the unit cube), moves to the best strictly improving
//! probe, and divides the global step by the decay rate whenever the iterate
//! barely moved. A run ends once the global step reaches the threshold.
//!
//! [`Rmps::minimize`] chains runs: the first with `rho1`, each restart from
//! the previous solution with the slower `rho2`, until two consecutive runs
//! agree after rounding. [`Rmps::minimize_convex`] performs a single run
//! with a decay rate of 4, which suffices for convex objectives.

mod probe;

use std::time::Instant;

use log::debug;
use thiserror::Error;

use crate::domain::{round_point, DomainError, UnitPoint};
use crate::objective::Objective;
use crate::params::{ParamError, TuningParams};
use crate::pool::{CoordinateMove, PoolError, ProbeEvaluator};

pub use probe::{build_probes, select_move, shrink_exponent, Direction, Probe};

#[derive(Debug, Error)]
pub enum OptimizeError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Pool(#[from] PoolError),
    #[error("objective returned {value} at {point:?}")]
    NonFinite { point: Vec<f64>, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The global step size fell to the threshold.
    StepThreshold,
    /// The iteration cap was hit first.
    MaxIter,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::StepThreshold => "step_threshold",
            Termination::MaxIter => "max_iter",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub solution: UnitPoint,
    pub value: f64,
    pub iterations: usize,
    /// Objective evaluations spent in this run.
    pub evals: usize,
    pub terminated_by: Termination,
    /// Global step size when the run stopped.
    pub final_step: f64,
}

/// One row of the convergence history.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    /// 1-based run index.
    pub run: usize,
    /// Iteration within the run; 0 marks the start of the run.
    pub iteration: usize,
    pub cumulative_evals: usize,
    /// Best objective value seen so far.
    pub best_value: f64,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub iterations: usize,
    pub evals: usize,
    pub value: f64,
    pub terminated_by: Termination,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeResult {
    /// Solution in the objective's original coordinates.
    pub solution: Vec<f64>,
    pub unit_solution: UnitPoint,
    pub value: f64,
    pub runs: usize,
    pub total_evals: usize,
    pub trajectory: Vec<TrajectoryPoint>,
    pub run_stats: Vec<RunStats>,
}

/// What happened in a single iteration, handed to an observer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationReport {
    pub run: usize,
    pub iteration: usize,
    pub dim: usize,
    /// Global step used by this iteration.
    pub global_step: f64,
    /// Global step for the next iteration.
    pub next_step: f64,
    /// Objective evaluations made by this iteration.
    pub evals: usize,
    /// Smallest and largest local step among evaluated probes.
    pub local_step_range: Option<(f64, f64)>,
    pub moved: bool,
    /// Incumbent value after the iteration.
    pub value: f64,
}

type Observer<'o> = Box<dyn FnMut(&IterationReport) + 'o>;

/// Configured optimizer: tuning parameters, probe-evaluation workers and an
/// optional per-iteration observer.
pub struct Rmps<'o> {
    params: TuningParams,
    evaluator: ProbeEvaluator,
    observer: Option<Observer<'o>>,
}

struct Session {
    start: Instant,
    evals: usize,
    best: f64,
    trajectory: Vec<TrajectoryPoint>,
}

impl Session {
    fn new() -> Self {
        Self {
            start: Instant::now(),
            evals: 0,
            best: f64::INFINITY,
            trajectory: Vec::new(),
        }
    }

    fn record(&mut self, run: usize, iteration: usize, value: f64) {
        self.best = self.best.min(value);
        self.trajectory.push(TrajectoryPoint {
            run,
            iteration,
            cumulative_evals: self.evals,
            best_value: self.best,
            elapsed_seconds: self.start.elapsed().as_secs_f64(),
        });
    }
}

impl<'o> Rmps<'o> {
    pub fn new(params: TuningParams) -> Result<Self, OptimizeError> {
        params.validate()?;
        Ok(Self {
            params,
            evaluator: ProbeEvaluator::sequential(),
            observer: None,
        })
    }

    /// Evaluates the probes of each iteration on `workers` threads.
    /// Results do not depend on the worker count.
    pub fn with_workers(mut self, workers: usize) -> Result<Self, OptimizeError> {
        self.evaluator = ProbeEvaluator::new(workers)?;
        Ok(self)
    }

    pub fn with_observer(mut self, observer: impl FnMut(&IterationReport) + 'o) -> Self {
        self.observer = Some(Box::new(observer));
        self
    }

    pub fn params(&self) -> &TuningParams {
        &self.params
    }

    pub fn workers(&self) -> usize {
        self.evaluator.workers()
    }

    /// A single run from `x0` with decay rate `rho`. When `x0_value` is
    /// given it is taken as the objective value at `x0` instead of
    /// evaluating it.
    pub fn run<O: Objective + ?Sized>(
        &mut self,
        obj: &O,
        x0: &UnitPoint,
        rho: f64,
        x0_value: Option<f64>,
    ) -> Result<RunOutcome, OptimizeError> {
        if !(rho.is_finite() && rho > 1.0) {
            return Err(ParamError {
                name: "rho",
                reason: "must be a finite value greater than 1".into(),
            }
            .into());
        }
        let mut session = Session::new();
        self.run_in(obj, x0, rho, x0_value, 1, &mut session)
    }

    /// Runs with restarts until two consecutive runs agree after rounding
    /// to `round_factor` digits, or `max_runs` runs have been made.
    pub fn minimize<O: Objective + ?Sized>(
        &mut self,
        obj: &O,
        x0: &UnitPoint,
    ) -> Result<OptimizeResult, OptimizeError> {
        let p = self.params;
        let mut session = Session::new();
        let mut run_stats = Vec::new();

        let mut last = self.run_in(obj, x0, p.rho1, None, 1, &mut session)?;
        run_stats.push(stats(&last));
        let mut rounded = round_point(&last.solution, p.round_factor);
        while run_stats.len() < p.max_runs {
            let run_index = run_stats.len() + 1;
            let next = self.run_in(
                obj,
                &last.solution,
                p.rho2,
                Some(last.value),
                run_index,
                &mut session,
            )?;
            run_stats.push(stats(&next));
            let next_rounded = round_point(&next.solution, p.round_factor);
            last = next;
            if next_rounded == rounded {
                break;
            }
            rounded = next_rounded;
        }
        debug!(
            "minimize finished after {} runs, {} evals, value {:e}",
            run_stats.len(),
            session.evals,
            last.value
        );
        Ok(finish(obj, last, run_stats, session))
    }

    /// Single run with decay rate 4 and no restarts. Only appropriate when
    /// the objective is known to be convex.
    pub fn minimize_convex<O: Objective + ?Sized>(
        &mut self,
        obj: &O,
        x0: &UnitPoint,
    ) -> Result<OptimizeResult, OptimizeError> {
        let mut session = Session::new();
        let out = self.run_in(obj, x0, TuningParams::CONVEX_RHO, None, 1, &mut session)?;
        let run_stats = vec![stats(&out)];
        Ok(finish(obj, out, run_stats, session))
    }

    fn run_in<O: Objective + ?Sized>(
        &mut self,
        obj: &O,
        x0: &UnitPoint,
        rho: f64,
        x0_value: Option<f64>,
        run_index: usize,
        session: &mut Session,
    ) -> Result<RunOutcome, OptimizeError> {
        let n = obj.dim();
        if x0.dim() != n {
            return Err(DomainError::DimensionMismatch {
                expected: n,
                actual: x0.dim(),
            }
            .into());
        }
        let p = self.params;
        let evals_at_start = session.evals;

        let mut x = x0.coords().to_vec();
        let mut y = match x0_value {
            Some(v) => v,
            None => {
                session.evals += 1;
                checked(obj.eval(&x), &x)?
            }
        };
        session.record(run_index, 0, y);

        let mut prev = (x.clone(), y);
        let mut s = p.s_initial;
        let mut iterations = 0;
        let mut moves: Vec<CoordinateMove> = Vec::with_capacity(2 * n);
        let mut active: Vec<usize> = Vec::with_capacity(2 * n);

        let (solution, value, terminated_by) = loop {
            if iterations >= p.max_iter {
                break (prev.0, prev.1, Termination::MaxIter);
            }
            let mut probes = build_probes(&x, y, s, rho, p.phi);
            moves.clear();
            active.clear();
            for (k, pr) in probes.iter().enumerate() {
                if pr.is_active() {
                    moves.push(pr.as_move());
                    active.push(k);
                }
            }
            let values = self.evaluator.evaluate(obj, &x, &moves);
            session.evals += values.len();
            for (&k, &v) in active.iter().zip(&values) {
                if !v.is_finite() {
                    let mut point = x.clone();
                    point[probes[k].index] = probes[k].coord;
                    return Err(OptimizeError::NonFinite { point, value: v });
                }
                probes[k].value = v;
            }
            iterations += 1;

            let winner = select_move(&probes, y).copied();
            prev.0.copy_from_slice(&x);
            prev.1 = y;
            if let Some(w) = winner {
                x[w.index] = w.coord;
                y = w.value;
            }
            let displacement: f64 = x
                .iter()
                .zip(&prev.0)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let step_used = s;
            if displacement < p.tol_fun {
                s /= rho;
            }

            if let Some(observer) = self.observer.as_mut() {
                let local_step_range = active.iter().map(|&k| probes[k].local_step).fold(
                    None,
                    |acc: Option<(f64, f64)>, v| match acc {
                        None => Some((v, v)),
                        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
                    },
                );
                observer(&IterationReport {
                    run: run_index,
                    iteration: iterations,
                    dim: n,
                    global_step: step_used,
                    next_step: s,
                    evals: values.len(),
                    local_step_range,
                    moved: winner.is_some(),
                    value: y,
                });
            }
            if winner.is_some() {
                session.record(run_index, iterations, y);
            }
            if s <= p.phi {
                break (x, y, Termination::StepThreshold);
            }
        };

        if session
            .trajectory
            .last()
            .is_none_or(|t| t.run != run_index || t.iteration != iterations)
        {
            session.record(run_index, iterations, value);
        }
        Ok(RunOutcome {
            solution: UnitPoint::from_vec_unchecked(solution),
            value,
            iterations,
            evals: session.evals - evals_at_start,
            terminated_by,
            final_step: s,
        })
    }
}

fn checked(v: f64, x: &[f64]) -> Result<f64, OptimizeError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(OptimizeError::NonFinite {
            point: x.to_vec(),
            value: v,
        })
    }
}

fn stats(r: &RunOutcome) -> RunStats {
    RunStats {
        iterations: r.iterations,
        evals: r.evals,
        value: r.value,
        terminated_by: r.terminated_by,
    }
}

fn finish<O: Objective + ?Sized>(
    obj: &O,
    last: RunOutcome,
    run_stats: Vec<RunStats>,
    session: Session,
) -> OptimizeResult {
    OptimizeResult {
        solution: obj.to_original(last.solution.coords()),
        unit_solution: last.solution,
        value: last.value,
        runs: run_stats.len(),
        total_evals: session.evals,
        trajectory: session.trajectory,
        run_stats,
    }
}

/// One run with sequential probe evaluation.
pub fn run_stage1<O: Objective + ?Sized>(
    obj: &O,
    x0: &UnitPoint,
    params: &TuningParams,
    rho: f64,
    x0_value: Option<f64>,
) -> Result<RunOutcome, OptimizeError> {
    Rmps::new(*params)?.run(obj, x0, rho, x0_value)
}

/// Restarted search with sequential probe evaluation.
pub fn optimize<O: Objective + ?Sized>(
    obj: &O,
    x0: &UnitPoint,
    params: &TuningParams,
) -> Result<OptimizeResult, OptimizeError> {
    Rmps::new(*params)?.minimize(obj, x0)
}

/// Convex fast path with sequential probe evaluation.
pub fn optimize_convex<O: Objective + ?Sized>(
    obj: &O,
    x0: &UnitPoint,
    params: &TuningParams,
) -> Result<OptimizeResult, OptimizeError> {
    Rmps::new(*params)?.minimize_convex(obj, x0)
}
