use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use anyhow::{Context, Result};
use log::info;

use super::config::{CompletionConfig, ExperimentConfig};
use super::report::{ensure_dir, point_field, sci, trajectory_csv, write_file};
use crate::bench::{self, registry, Benchmark, Dimension, Domain, Suite};
use crate::completion::{self, pgm, ScadParams};
use crate::optimizer::{OptimizeResult, Rmps};

/// Outcome of one seed.
#[derive(Debug, Clone)]
pub struct SeedRow {
    pub seed: u64,
    pub start: Vec<f64>,
    pub final_value: f64,
    pub evals: usize,
    pub runs: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub rows: Vec<SeedRow>,
    pub min_final: f64,
    pub max_final: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Default,
    Convex,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Default => "default",
            Mode::Convex => "convex",
        }
    }
}

fn solve(cfg: &ExperimentConfig, seed: u64, mode: Mode) -> Result<(SeedRow, OptimizeResult)> {
    let spec = bench::lookup(&cfg.function, cfg.dim, cfg.suite)?;
    let start = bench::random_start(&spec.bounds, seed);
    let x0 = spec.bounds.to_unit(&start)?;
    let mut rmps = Rmps::new(cfg.params)?.with_workers(cfg.workers)?;
    let obj = spec.objective();
    let clock = Instant::now();
    let result = match mode {
        Mode::Default => rmps.minimize(&obj, &x0)?,
        Mode::Convex => rmps.minimize_convex(&obj, &x0)?,
    };
    let row = SeedRow {
        seed,
        start,
        final_value: result.value,
        evals: result.total_evals,
        runs: result.runs,
        seconds: clock.elapsed().as_secs_f64(),
    };
    info!(
        "{} d={} seed {seed} ({}): f = {:e} after {} evals",
        cfg.function,
        cfg.dim,
        mode.as_str(),
        row.final_value,
        row.evals
    );
    Ok((row, result))
}

fn extrema(rows: &[SeedRow]) -> (f64, f64) {
    rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
        (lo.min(r.final_value), hi.max(r.final_value))
    })
}

/// Multi-start benchmark: one default-mode minimization per seed.
///
/// Writes `trajectory_seed<seed>.csv` per seed, `summary.csv` with one row
/// per seed and `extrema.csv` with the smallest and largest final values.
pub fn run_bench(cfg: &ExperimentConfig, stdout: &mut dyn Write) -> Result<BenchReport> {
    cfg.validate()?;
    ensure_dir(&cfg.out)?;
    let mut summary = String::from("seed,start,final_value,evals,runs,seconds\n");
    let mut rows = Vec::with_capacity(cfg.seeds.len());
    for &seed in &cfg.seeds {
        let (row, result) = solve(cfg, seed, Mode::Default)?;
        write_file(
            &cfg.out.join(format!("trajectory_seed{seed}.csv")),
            &trajectory_csv(&result.trajectory),
        )?;
        let _ = writeln!(
            summary,
            "{},{},{},{},{},{}",
            row.seed,
            point_field(&row.start),
            sci(row.final_value),
            row.evals,
            row.runs,
            sci(row.seconds)
        );
        rows.push(row);
    }
    write_file(&cfg.out.join("summary.csv"), &summary)?;
    let (min_final, max_final) = extrema(&rows);
    write_file(
        &cfg.out.join("extrema.csv"),
        &format!(
            "statistic,final_value\nmin,{}\nmax,{}\n",
            sci(min_final),
            sci(max_final)
        ),
    )?;

    writeln!(stdout, "{:>8}  {:>23}  {:>10}  {:>5}", "seed", "final", "evals", "runs")?;
    for r in &rows {
        writeln!(
            stdout,
            "{:>8}  {:>23.16e}  {:>10}  {:>5}",
            r.seed, r.final_value, r.evals, r.runs
        )?;
    }
    writeln!(stdout, "min {min_final:.16e}")?;
    writeln!(stdout, "max {max_final:.16e}")?;
    Ok(BenchReport {
        rows,
        min_final,
        max_final,
    })
}

/// Per seed, the default and the convex mode from the same start.
#[derive(Debug, Clone)]
pub struct ConvexRow {
    pub default: SeedRow,
    pub convex: SeedRow,
}

/// Writes `trajectory_seed<seed>_<mode>.csv` for both modes and a
/// `summary.csv` with one row per seed and mode.
pub fn run_convex(cfg: &ExperimentConfig, stdout: &mut dyn Write) -> Result<Vec<ConvexRow>> {
    cfg.validate()?;
    ensure_dir(&cfg.out)?;
    let mut summary = String::from("seed,mode,start,final_value,evals,runs,seconds\n");
    let mut out = Vec::with_capacity(cfg.seeds.len());
    for &seed in &cfg.seeds {
        let mut pair = Vec::with_capacity(2);
        for mode in [Mode::Default, Mode::Convex] {
            let (row, result) = solve(cfg, seed, mode)?;
            write_file(
                &cfg.out
                    .join(format!("trajectory_seed{seed}_{}.csv", mode.as_str())),
                &trajectory_csv(&result.trajectory),
            )?;
            let _ = writeln!(
                summary,
                "{},{},{},{},{},{},{}",
                row.seed,
                mode.as_str(),
                point_field(&row.start),
                sci(row.final_value),
                row.evals,
                row.runs,
                sci(row.seconds)
            );
            pair.push(row);
        }
        let convex = pair.pop().expect("two modes");
        let default = pair.pop().expect("two modes");
        out.push(ConvexRow { default, convex });
    }
    write_file(&cfg.out.join("summary.csv"), &summary)?;

    writeln!(
        stdout,
        "{:>8}  {:>23}  {:>10}  {:>23}  {:>10}",
        "seed", "final", "evals", "final (convex)", "evals (convex)"
    )?;
    for r in &out {
        writeln!(
            stdout,
            "{:>8}  {:>23.16e}  {:>10}  {:>23.16e}  {:>10}",
            r.default.seed, r.default.final_value, r.default.evals, r.convex.final_value, r.convex.evals
        )?;
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct CompletionRow {
    pub lambda: f64,
    pub start_objective: f64,
    pub final_objective: f64,
    pub evals: usize,
    pub seconds: f64,
}

/// Completes the masked image once per lambda.
///
/// Writes `completed_lambda<lambda>.pgm`, the objective trace
/// `trace_lambda<lambda>.csv` and `completion.csv` with one row per lambda.
pub fn run_complete(cfg: &CompletionConfig, stdout: &mut dyn Write) -> Result<Vec<CompletionRow>> {
    cfg.validate()?;
    let masked = pgm::read_masked(&cfg.image, &cfg.mask)?;
    ensure_dir(&cfg.out)?;
    let mut table = String::from("lambda,final_objective,evals,seconds\n");
    let mut rows = Vec::with_capacity(cfg.lambdas.len());
    for &lambda in &cfg.lambdas {
        let scad = ScadParams::new(lambda, cfg.a)?;
        let clock = Instant::now();
        let done = completion::complete(&masked, scad, &cfg.params, cfg.workers)
            .with_context(|| format!("completion with lambda {lambda} failed"))?;
        let seconds = clock.elapsed().as_secs_f64();
        pgm::write_pgm(
            &done.matrix,
            &cfg.out.join(format!("completed_lambda{lambda}.pgm")),
        )?;
        let trace = done
            .result
            .as_ref()
            .map(|r| trajectory_csv(&r.trajectory))
            .unwrap_or_else(|| trajectory_csv(&[]));
        write_file(&cfg.out.join(format!("trace_lambda{lambda}.csv")), &trace)?;
        let row = CompletionRow {
            lambda,
            start_objective: done.start_objective,
            final_objective: done.final_objective,
            evals: done.evals(),
            seconds,
        };
        let _ = writeln!(
            table,
            "{},{},{},{}",
            sci(lambda),
            sci(row.final_objective),
            row.evals,
            sci(row.seconds)
        );
        writeln!(
            stdout,
            "lambda {lambda}: objective {:.6e} -> {:.6e}, {} evals, {:.2} s",
            row.start_objective, row.final_objective, row.evals, row.seconds
        )?;
        rows.push(row);
    }
    write_file(&cfg.out.join("completion.csv"), &table)?;
    Ok(rows)
}

fn describe_domain(domain: Option<Domain>) -> String {
    match domain {
        None => "-".to_owned(),
        Some(Domain::Cube(a, b)) => format!("[{a}, {b}]^d"),
        Some(Domain::Rect(r)) => r
            .iter()
            .map(|(a, b)| format!("[{a}, {b}]"))
            .collect::<Vec<_>>()
            .join("x"),
    }
}

fn describe(b: &Benchmark) -> String {
    let dim = match b.dimension {
        Dimension::Fixed(d) => d.to_string(),
        Dimension::Scalable => "any".to_owned(),
    };
    let d = b.default_dim();
    let min = bench::lookup(b.name, d, Suite::Standard)
        .ok()
        .and_then(|s| s.known_min)
        .map_or_else(|| "-".to_owned(), |m| format!("{m:.10e} (d={d})"));
    format!(
        "{:<24} {:>4}  {:<28} {:<22} {:<22} {}",
        b.name,
        dim,
        describe_domain(Some(b.standard)),
        describe_domain(b.highdim),
        describe_domain(b.boundary),
        min
    )
}

/// Prints every registered function with its domains and known minimum.
pub fn run_list(stdout: &mut dyn Write) -> Result<()> {
    writeln!(
        stdout,
        "{:<24} {:>4}  {:<28} {:<22} {:<22} minimum",
        "name", "dim", "standard", "highdim", "boundary"
    )?;
    for b in registry() {
        writeln!(stdout, "{}", describe(b))?;
    }
    Ok(())
}
