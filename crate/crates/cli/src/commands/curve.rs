use ripp_core::{discount_closed, indifference_ratio_numeric, Case, IndifferenceInputs, RootConfig};

use super::{csv_writer, require, sink};
use crate::cli::{CurveArgs, CurveForm};
use crate::error::{CliError, CliResult};
use crate::report::machine;

const ALL_FORMS_RATE: f64 = 0.4;
const ALL_FORMS_HORIZON: f64 = 0.65;

pub fn run(args: &CurveArgs) -> CliResult<()> {
    let delays = delay_grid(args.d_min, args.d_max, args.step)?;
    let cfg = args.solver.apply(RootConfig::default())?;
    let mut w = csv_writer(sink(args.out.as_deref())?);
    let mut failures = 0;

    match args.form {
        CurveForm::B | CurveForm::C | CurveForm::DHybrid => {
            let (case, horizon, rate) = match args.form {
                CurveForm::B => (Case::B, f64::NAN, require("rate", args.rate)?),
                CurveForm::C => (Case::C, require("horizon", args.horizon)?, 0.0),
                _ => (Case::D, require("horizon", args.horizon)?, require("rate", args.rate)?),
            };
            w.write_record(["D", "delta"])?;
            for d in delays {
                let delta = discount_closed(case, d, horizon, rate)?.value;
                w.write_record([machine(d), machine(delta)])?;
            }
        }
        CurveForm::DNumeric => {
            let horizon = require("horizon", args.horizon)?;
            let rate = require("rate", args.rate)?;
            let wealth0 = require("wealth0", args.wealth0)?;
            let dx_b = require("dx_b", args.dx_b)?;
            w.write_record(["D", "delta", "dx_a_star", "error"])?;
            for d in delays {
                // With no delay the two payments coincide and only equal
                // amounts are indifferent.
                let solved = if d == 0.0 {
                    Ok(1.0)
                } else {
                    indifference_ratio_numeric(
                        &IndifferenceInputs {
                            horizon,
                            delay: d,
                            wealth0,
                            dx_b,
                        },
                        rate,
                        &cfg,
                    )
                    .map(|f| f.value)
                };
                match solved {
                    Ok(delta) => w.write_record([machine(d), machine(delta), machine(delta * dx_b), String::new()])?,
                    Err(e) => {
                        failures += 1;
                        w.write_record([machine(d), String::new(), String::new(), e.to_string()])?;
                    }
                }
            }
        }
        CurveForm::All => {
            let horizon = args.horizon.unwrap_or(ALL_FORMS_HORIZON);
            let rate = args.rate.unwrap_or(ALL_FORMS_RATE);
            w.write_record(["D", "hybrid", "hyperbolic", "exponential"])?;
            for d in delays {
                let hybrid = discount_closed(Case::D, d, horizon, rate)?.value;
                let hyperbolic = discount_closed(Case::C, d, horizon, rate)?.value;
                let exponential = discount_closed(Case::B, d, horizon, rate)?.value;
                w.write_record([machine(d), machine(hybrid), machine(hyperbolic), machine(exponential)])?;
            }
        }
    }
    w.flush()?;
    if failures > 0 {
        return Err(CliError::RowFailures(failures));
    }
    Ok(())
}

/// `d_min, d_min + step, ...` up to `d_max`, tolerating rounding in the
/// number of steps.
fn delay_grid(d_min: f64, d_max: f64, step: f64) -> CliResult<Vec<f64>> {
    if !(step > 0.0) || !(d_min >= 0.0) || !(d_max >= d_min) || !d_max.is_finite() {
        return Err(CliError::Input(format!(
            "bad delay range: from {d_min} to {d_max} by {step}"
        )));
    }
    let n = ((d_max - d_min) / step + 1e-9).floor();
    if n > 1e7 {
        return Err(CliError::Input(format!("delay range has too many rows ({n})")));
    }
    Ok((0..=n as usize).map(|i| d_min + i as f64 * step).collect())
}
