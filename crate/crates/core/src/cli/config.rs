use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use crate::bench::{self, Suite};
use crate::completion::ScadParams;
use crate::params::TuningParams;

/// Seeds as written in a config file: either `"base:count"` or an explicit
/// list.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum SeedSpec {
    Range(String),
    List(Vec<u64>),
}

impl SeedSpec {
    pub fn resolve(&self) -> Result<Vec<u64>> {
        let seeds = match self {
            SeedSpec::Range(s) => parse_seed_range(s)?,
            SeedSpec::List(v) => v.clone(),
        };
        if seeds.is_empty() {
            bail!("at least one seed is required");
        }
        Ok(seeds)
    }
}

/// Parses `base:count` into the consecutive seeds `base, base + 1, ...`.
pub fn parse_seed_range(s: &str) -> Result<Vec<u64>> {
    let (base, count) = s
        .split_once(':')
        .with_context(|| format!("seeds `{s}` must have the form <base>:<count>"))?;
    let base: u64 = base
        .trim()
        .parse()
        .with_context(|| format!("bad seed base `{base}`"))?;
    let count: u64 = count
        .trim()
        .parse()
        .with_context(|| format!("bad seed count `{count}`"))?;
    if count == 0 {
        bail!("seed count must be at least 1");
    }
    if base.checked_add(count - 1).is_none() {
        bail!("seed range {base}:{count} overflows 64 bits");
    }
    Ok((0..count).map(|i| base + i).collect())
}

/// Contents of a `--config` JSON file. Every field is optional; command-line
/// flags override whatever is set here.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(rename = "fn")]
    pub function: Option<String>,
    pub dim: Option<usize>,
    pub suite: Option<Suite>,
    pub seeds: Option<SeedSpec>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    /// Partial tuning parameters; missing keys take their defaults.
    pub params: Option<TuningParams>,
    pub image: Option<PathBuf>,
    pub mask: Option<PathBuf>,
    pub lambda: Option<Vec<f64>>,
    pub a: Option<f64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
    }
}

/// A fully resolved benchmark experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub function: String,
    pub dim: usize,
    pub suite: Suite,
    pub seeds: Vec<u64>,
    pub params: TuningParams,
    pub workers: usize,
    pub out: PathBuf,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            bail!("at least one seed is required");
        }
        check_workers(self.workers)?;
        self.params.validate()?;
        bench::lookup(&self.function, self.dim, self.suite)?;
        Ok(())
    }
}

/// A fully resolved completion experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct CompletionConfig {
    pub image: PathBuf,
    pub mask: PathBuf,
    pub lambdas: Vec<f64>,
    pub a: f64,
    pub params: TuningParams,
    pub workers: usize,
    pub out: PathBuf,
}

impl CompletionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.lambdas.is_empty() {
            bail!("at least one lambda is required");
        }
        for &lambda in &self.lambdas {
            ScadParams::new(lambda, self.a)?;
        }
        check_workers(self.workers)?;
        self.params.validate()?;
        Ok(())
    }
}

fn check_workers(workers: usize) -> Result<()> {
    if workers == 0 {
        bail!("workers must be at least 1");
    }
    Ok(())
}

/// Parses a comma-separated list such as `1,10,100`.
pub fn parse_lambda_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .with_context(|| format!("bad lambda `{}`", t.trim()))
        })
        .collect()
}
