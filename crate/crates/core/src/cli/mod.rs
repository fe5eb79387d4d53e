//! Batch front end behind the `rmps` binary.
//!
//! Every subcommand can read a JSON config via `--config`; flags given on
//! the command line take precedence over the file.

mod commands;
mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

pub use commands::{
    run_bench, run_complete, run_convex, run_list, BenchReport, CompletionRow, ConvexRow, Mode,
    SeedRow,
};
pub use config::{
    parse_lambda_list, parse_seed_range, CompletionConfig, ConfigFile, ExperimentConfig, SeedSpec,
};
pub use report::{sci, trajectory_csv, TRAJECTORY_HEADER};

use crate::bench::{self, Dimension, Suite};
use crate::completion::ScadParams;
use crate::params::TuningParams;

#[derive(Debug, Parser)]
#[command(name = "rmps", version, about = "Recursive modified pattern search experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multi-start minimization of a benchmark function.
    Bench(ExperimentArgs),
    /// Default mode against the convex fast path from the same starts.
    Convex(ExperimentArgs),
    /// Fill the missing pixels of a grayscale image.
    Complete(CompleteArgs),
    /// List the registered benchmark functions.
    List,
}

/// Overrides for individual tuning parameters.
#[derive(Debug, Clone, Default, Args)]
pub struct TuningArgs {
    /// Initial global step size in unit-cube units [default: 1]
    #[arg(long)]
    pub s_initial: Option<f64>,
    /// Step decay rate of the first run [default: 2]
    #[arg(long)]
    pub rho1: Option<f64>,
    /// Step decay rate of the restarts [default: 1.05]
    #[arg(long)]
    pub rho2: Option<f64>,
    /// Step size threshold ending a run [default: 1e-6]
    #[arg(long)]
    pub phi: Option<f64>,
    /// Iteration cap per run [default: 50000]
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Cap on the number of runs [default: 1000]
    #[arg(long)]
    pub max_runs: Option<usize>,
    /// Squared displacement counted as a stall [default: 1e-15]
    #[arg(long)]
    pub tol_fun: Option<f64>,
    /// Decimal places compared between consecutive runs [default: 6]
    #[arg(long)]
    pub round_factor: Option<u32>,
}

impl TuningArgs {
    pub fn apply(&self, p: &mut TuningParams) {
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { p.$f = v; } )* };
        }
        set!(s_initial, rho1, rho2, phi, max_iter, max_runs, tol_fun, round_factor);
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct ExperimentArgs {
    /// Benchmark function name (see `rmps list`).
    #[arg(long = "fn")]
    pub function: Option<String>,
    /// Dimension; optional for fixed-dimension functions.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Domain family: standard, highdim or boundary [default: standard]
    #[arg(long)]
    pub suite: Option<Suite>,
    /// Consecutive seeds as `<base>:<count>`.
    #[arg(long)]
    pub seeds: Option<String>,
    /// Threads evaluating probes [default: 1]
    #[arg(long)]
    pub workers: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON experiment file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub tuning: TuningArgs,
}

impl ExperimentArgs {
    pub fn resolve(&self) -> Result<ExperimentConfig> {
        let file = load(&self.config)?;
        self.resolve_with(file)
    }

    pub fn resolve_with(&self, file: ConfigFile) -> Result<ExperimentConfig> {
        let function = self
            .function
            .clone()
            .or(file.function)
            .context("no function given (use --fn)")?;
        let dim = match self.dim.or(file.dim) {
            Some(d) => d,
            None => match bench::find(&function)?.dimension {
                Dimension::Fixed(d) => d,
                Dimension::Scalable => {
                    anyhow::bail!("`{function}` is scalable; give a dimension with --dim")
                }
            },
        };
        let seeds = match (&self.seeds, file.seeds) {
            (Some(s), _) => parse_seed_range(s)?,
            (None, Some(s)) => s.resolve()?,
            (None, None) => anyhow::bail!("no seeds given (use --seeds <base>:<count>)"),
        };
        let mut params = file.params.unwrap_or_default();
        self.tuning.apply(&mut params);
        Ok(ExperimentConfig {
            function,
            dim,
            suite: self.suite.or(file.suite).unwrap_or_default(),
            seeds,
            params,
            workers: self.workers.or(file.workers).unwrap_or(1),
            out: self
                .out
                .clone()
                .or(file.out)
                .context("no output directory given (use --out)")?,
        })
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CompleteArgs {
    /// Grayscale PGM with the observed pixels.
    #[arg(long)]
    pub image: Option<PathBuf>,
    /// PGM of the same size: 255 where observed, 0 where missing.
    #[arg(long)]
    pub mask: Option<PathBuf>,
    /// Comma-separated SCAD lambdas, one completion each.
    #[arg(long)]
    pub lambda: Option<String>,
    /// SCAD shape parameter, greater than 2 [default: 3.7]
    #[arg(long)]
    pub a: Option<f64>,
    /// Threads evaluating probes [default: 1]
    #[arg(long)]
    pub workers: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub tuning: TuningArgs,
}

impl CompleteArgs {
    pub fn resolve(&self) -> Result<CompletionConfig> {
        let file = load(&self.config)?;
        let lambdas = match (&self.lambda, file.lambda) {
            (Some(s), _) => parse_lambda_list(s)?,
            (None, Some(l)) => l,
            (None, None) => anyhow::bail!("no lambda given (use --lambda)"),
        };
        let mut params = file.params.unwrap_or_default();
        self.tuning.apply(&mut params);
        Ok(CompletionConfig {
            image: self
                .image
                .clone()
                .or(file.image)
                .context("no image given (use --image)")?,
            mask: self
                .mask
                .clone()
                .or(file.mask)
                .context("no mask given (use --mask)")?,
            lambdas,
            a: self.a.or(file.a).unwrap_or(ScadParams::DEFAULT_A),
            params,
            workers: self.workers.or(file.workers).unwrap_or(1),
            out: self
                .out
                .clone()
                .or(file.out)
                .context("no output directory given (use --out)")?,
        })
    }
}

fn load(path: &Option<PathBuf>) -> Result<ConfigFile> {
    path.as_deref()
        .map_or_else(|| Ok(ConfigFile::default()), ConfigFile::load)
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Bench(a) => run_bench(&a.resolve()?, stdout).map(drop),
        Command::Convex(a) => run_convex(&a.resolve()?, stdout).map(drop),
        Command::Complete(a) => run_complete(&a.resolve()?, stdout).map(drop),
        Command::List => run_list(stdout),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("rmps").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_override_config() {
        let cli = parse(&["bench", "--fn", "griewank", "--seeds", "3:2", "--phi", "1e-4"]);
        let Command::Bench(args) = cli.command else {
            panic!("expected bench");
        };
        let file: ConfigFile = serde_json::from_str(
            r#"{"fn":"sphere","dim":7,"out":"x","workers":3,"params":{"phi":1e-3,"rho2":1.1}}"#,
        )
        .unwrap();
        let cfg = args.resolve_with(file).unwrap();
        assert_eq!(cfg.function, "griewank");
        assert_eq!(cfg.dim, 7);
        assert_eq!(cfg.seeds, vec![3, 4]);
        assert_eq!(cfg.workers, 3);
        assert_eq!(cfg.params.phi, 1e-4);
        assert_eq!(cfg.params.rho2, 1.1);
        assert_eq!(cfg.suite, Suite::Standard);
    }

    #[test]
    fn fixed_dimension_functions_need_no_dim() {
        let cli = parse(&["convex", "--fn", "branin", "--seeds", "0:1", "--out", "o"]);
        let Command::Convex(args) = cli.command else {
            panic!("expected convex");
        };
        assert_eq!(args.resolve().unwrap().dim, 2);
        let cli = parse(&["bench", "--fn", "sphere", "--seeds", "0:1", "--out", "o"]);
        let Command::Bench(args) = cli.command else {
            panic!("expected bench");
        };
        assert!(args.resolve().is_err());
    }

    #[test]
    fn zero_seeds_is_a_configuration_error() {
        let cli = parse(&["bench", "--fn", "sphere", "--dim", "2", "--seeds", "0:0", "--out", "o"]);
        let Command::Bench(args) = cli.command else {
            panic!("expected bench");
        };
        assert!(args.resolve().is_err());
    }

    #[test]
    fn bad_suite_is_rejected_by_the_parser() {
        assert!(Cli::try_parse_from(["rmps", "bench", "--suite", "tiny"]).is_err());
    }
}
