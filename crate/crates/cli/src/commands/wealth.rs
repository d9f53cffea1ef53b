use ripp_core::{
    prefer, wealth_effect_bound, wealth_threshold, Dynamics, Problem, RootConfig, Specification, TimeFrame,
    DEFAULT_TOLERANCE,
};

use super::{csv_writer, emit_report, grid, sink};
use crate::cli::WealthArgs;
use crate::error::CliResult;
use crate::report::{machine, to_json, WealthReport};

pub fn run(args: &WealthArgs) -> CliResult<()> {
    let cfg = args.solver.apply(RootConfig::default())?;
    // The threshold search does not use the stored wealth.
    let problem = Problem::from_horizon(args.horizon, args.delay, args.dx_a, args.dx_b, 1.0)?;
    let report = WealthReport {
        horizon: args.horizon,
        delay: args.delay,
        dx_a: args.dx_a,
        dx_b: args.dx_b,
        rate: args.rate,
        dx_b_bound: wealth_effect_bound(args.dx_a, args.horizon, args.delay, args.rate),
        threshold: wealth_threshold(&problem, args.rate, &cfg)?,
    };

    let text = if args.json {
        to_json(&report) + "\n"
    } else {
        report.render()
    };
    emit_report(&text, args.sweep && args.out.is_none());
    if args.sweep {
        let spec = Specification::new(Dynamics::Multiplicative { r: args.rate }, TimeFrame::Adaptive);
        let mut w = csv_writer(sink(args.out.as_deref())?);
        w.write_record(["x0", "gap"])?;
        for x0 in grid(args.x_min, args.x_max, args.points, args.log)? {
            let decision = prefer(&spec, &problem.with_wealth(x0)?, DEFAULT_TOLERANCE)?;
            w.write_record([machine(x0), machine(decision.g_a.value - decision.g_b.value)])?;
        }
        w.flush()?;
    }
    Ok(())
}
