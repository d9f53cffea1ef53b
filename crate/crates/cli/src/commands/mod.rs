mod curve;
mod evaluate;
mod reversal;
mod simulate;
mod wealth;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

pub use curve::run as curve;
pub use evaluate::{evaluate_document, run as evaluate};
pub use reversal::run as reversal;
pub use simulate::run as simulate;
pub use wealth::run as wealth_threshold;

use crate::error::{CliError, CliResult};

/// Standard output, or a freshly created file.
fn sink(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn csv_writer(out: Box<dyn Write>) -> csv::Writer<Box<dyn Write>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn require(name: &str, v: Option<f64>) -> CliResult<f64> {
    v.ok_or_else(|| CliError::Input(format!("--{} is required here", name.replace('_', "-"))))
}

fn check_points(points: usize) -> CliResult<()> {
    if points < 2 {
        return Err(CliError::Input(format!("--points must be at least 2 (got {points})")));
    }
    Ok(())
}

/// `points` values from `lo` to `hi` inclusive, evenly or log-evenly spaced.
/// The end points are returned exactly.
fn grid(lo: f64, hi: f64, points: usize, log: bool) -> CliResult<Vec<f64>> {
    check_points(points)?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() || (log && !(lo > 0.0)) {
        return Err(CliError::Input(format!("bad sweep range [{lo}, {hi}]")));
    }
    let n = points - 1;
    Ok((0..=n)
        .map(|i| {
            if i == n {
                hi
            } else if log {
                (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / n as f64).exp()
            } else {
                lo + (hi - lo) * i as f64 / n as f64
            }
        })
        .collect())
}

/// Where the sweep CSV and the report go: with `--out` the report stays on
/// standard output; without it standard output carries only the CSV.
fn emit_report(report: &str, sweep_to_stdout: bool) {
    if sweep_to_stdout {
        eprint!("{report}");
    } else {
        print!("{report}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_end_points() {
        let g = grid(500.0, 5500.0, 11, false).unwrap();
        assert_eq!(g[0], 500.0);
        assert_eq!(g[1], 1000.0);
        assert_eq!(g[10], 5500.0);
        let g = grid(0.1, 10.0, 3, true).unwrap();
        assert!((g[1] - 1.0).abs() < 1e-15);
        assert_eq!(g[2], 10.0);
    }

    #[test]
    fn grid_rejects_bad_ranges() {
        assert!(grid(1.0, 1.0, 5, false).is_err());
        assert!(grid(0.0, 1.0, 5, true).is_err());
        assert!(grid(0.0, 1.0, 1, false).is_err());
    }
}
