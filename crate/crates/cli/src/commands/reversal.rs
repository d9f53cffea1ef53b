use ripp_core::{
    prefer, reversal_horizon_closed, reversal_horizon_numeric, Case, Dynamics, Problem, ReversalInputs, RootConfig,
    Specification, Threshold, TimeFrame, DEFAULT_TOLERANCE,
};

use super::{csv_writer, emit_report, grid, sink};
use crate::cli::{AdaptiveCase, Mode, ReversalArgs};
use crate::error::{CliError, CliResult};
use crate::report::{machine, to_json, Method, ReversalEstimate, ReversalReport};

pub fn run(args: &ReversalArgs) -> CliResult<()> {
    let case = match args.case {
        AdaptiveCase::C => Case::C,
        AdaptiveCase::D => Case::D,
    };
    let mode = args.mode.unwrap_or(match (case, args.wealth0) {
        (Case::D, Some(_)) => Mode::Both,
        _ => Mode::Closed,
    });
    if case == Case::C && mode != Mode::Closed {
        return Err(CliError::Input(
            "case C has an exact closed form; use --mode closed".into(),
        ));
    }
    let cfg = args.solver.apply(RootConfig::default())?;

    let mut estimates = Vec::new();
    if matches!(mode, Mode::Closed | Mode::Both) {
        let t = reversal_horizon_closed(case, args.delay, args.dx_a, args.dx_b, args.rate)?;
        estimates.push(estimate(Method::Closed, t, args.t_a));
    }
    if matches!(mode, Mode::Numeric | Mode::Both) {
        let wealth0 = args
            .wealth0
            .ok_or_else(|| CliError::Input("--wealth0 is required for numeric results".into()))?;
        let inputs = ReversalInputs {
            delay: args.delay,
            dx_a: args.dx_a,
            dx_b: args.dx_b,
            wealth0,
        };
        let t = reversal_horizon_numeric(&inputs, args.rate, &cfg)?;
        estimates.push(estimate(Method::Numeric, t, args.t_a));
    }
    let relative_difference = match estimates.as_slice() {
        [closed, numeric] => match (closed.threshold.value(), numeric.threshold.value()) {
            (Some(c), Some(n)) => Some((c - n).abs() / n),
            _ => None,
        },
        _ => None,
    };
    let report = ReversalReport {
        case,
        delay: args.delay,
        dx_a: args.dx_a,
        dx_b: args.dx_b,
        rate: args.rate,
        wealth0: args.wealth0,
        t_a: args.t_a,
        estimates,
        relative_difference,
    };

    let text = if args.json {
        to_json(&report) + "\n"
    } else {
        report.render()
    };
    let sweep_to_stdout = args.sweep && args.out.is_none();
    emit_report(&text, sweep_to_stdout);
    if args.sweep {
        write_sweep(args, case, &report)?;
    }
    Ok(())
}

fn estimate(method: Method, threshold: Threshold, t_a: f64) -> ReversalEstimate {
    let t0_pr = threshold.value().map(|h| t_a - h);
    ReversalEstimate {
        method,
        threshold,
        t0_pr,
    }
}

fn write_sweep(args: &ReversalArgs, case: Case, report: &ReversalReport) -> CliResult<()> {
    let (dynamics, wealth0) = match case {
        Case::C => (Dynamics::Additive { k: args.rate }, args.wealth0.unwrap_or(0.0)),
        _ => (
            Dynamics::Multiplicative { r: args.rate },
            args.wealth0
                .ok_or_else(|| CliError::Input("--wealth0 is required for a case-D sweep".into()))?,
        ),
    };
    let spec = Specification::new(dynamics, TimeFrame::Adaptive);
    let centre = report
        .estimates
        .iter()
        .find_map(|e| e.threshold.value())
        .unwrap_or(args.delay);
    let h_min = args.h_min.unwrap_or(centre / 20.0);
    let h_max = args.h_max.unwrap_or(centre * 20.0);

    let mut w = csv_writer(sink(args.out.as_deref())?);
    w.write_record(["H", "g_a", "g_b", "gap", "preference"])?;
    for h in grid(h_min, h_max, args.points, true)? {
        let problem = Problem::from_horizon(h, args.delay, args.dx_a, args.dx_b, wealth0)?;
        let decision = prefer(&spec, &problem, DEFAULT_TOLERANCE)?;
        let (g_a, g_b) = (decision.g_a.value, decision.g_b.value);
        w.write_record([
            machine(h),
            machine(g_a),
            machine(g_b),
            machine(g_a - g_b),
            decision.preference.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
