//! CSV rendering. Floats are written in scientific notation with 17
//! significant digits so that files round-trip to the same doubles.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use crate::optimizer::TrajectoryPoint;

pub fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

/// Coordinates joined with `;` so that they fit in one CSV field.
pub fn point_field(z: &[f64]) -> String {
    z.iter().map(|&v| sci(v)).collect::<Vec<_>>().join(";")
}

pub const TRAJECTORY_HEADER: &str = "run,iteration,cumulative_evals,elapsed_seconds,best_value";

pub fn trajectory_csv(points: &[TrajectoryPoint]) -> String {
    let mut s = String::with_capacity(64 * (points.len() + 1));
    s.push_str(TRAJECTORY_HEADER);
    s.push('\n');
    for p in points {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            p.run,
            p.iteration,
            p.cumulative_evals,
            sci(p.elapsed_seconds),
            sci(p.best_value)
        );
    }
    s
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

/// Creates `dir` and its parents.
pub fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_round_trips() {
        for v in [0.0, 1.0, -2.5e-300, 1.0 / 3.0, 4.36e-11, f64::MAX] {
            let s = sci(v);
            assert!(s.contains('e'));
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
        assert_eq!(sci(1.5), "1.5000000000000000e0");
    }

    #[test]
    fn trajectory_rows() {
        let pts = [TrajectoryPoint {
            run: 1,
            iteration: 0,
            cumulative_evals: 1,
            best_value: 2.0,
            elapsed_seconds: 0.0,
        }];
        let csv = trajectory_csv(&pts);
        assert_eq!(
            csv,
            format!("{TRAJECTORY_HEADER}\n1,0,1,0.0000000000000000e0,2.0000000000000000e0\n")
        );
    }
}
