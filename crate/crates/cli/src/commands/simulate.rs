use std::io::Write;
use std::thread;

use ripp_core::sim::{realized_growth, simulate, Policy, RippStream, Trajectory, UniformRange};
use ripp_core::{Alternative, Specification};

use super::sink;
use crate::cli::SimulateArgs;
use crate::error::{CliError, CliResult};
use crate::report::{to_json, PolicyOutcome, SimulationReport};

pub fn run(args: &SimulateArgs) -> CliResult<()> {
    let dynamics = crate::doc::DynamicsDoc {
        kind: args.dynamics,
        rate: args.rate,
    }
    .to_dynamics();
    let spec = Specification::new(dynamics, args.frame.into());
    let stream = RippStream {
        seed: args.seed,
        count: args.count,
        horizon: UniformRange::new(args.horizon_min, args.horizon_max),
        delay: UniformRange::new(args.delay_min, args.delay_max),
        earlier_amount: UniformRange::new(args.dx_min, args.dx_max),
        premium: UniformRange::new(args.premium_min, args.premium_max),
    };
    stream.validate()?;
    let policy: Policy = args
        .policy
        .parse()
        .map_err(|e: ripp_core::Error| CliError::Input(e.to_string()))?;

    let mut policies = vec![policy];
    if args.compare {
        policies.extend(Policy::all(args.exp_rate).into_iter().filter(|p| *p != policy));
    }
    // Policies are independent given the stream, so they run in parallel;
    // results are collected in input order.
    let runs: Vec<ripp_core::Result<Trajectory>> = thread::scope(|s| {
        let handles: Vec<_> = policies
            .iter()
            .map(|&p| s.spawn(move || simulate(&spec, &stream, p, args.wealth0)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation thread panicked"))
            .collect()
    });

    let mut outcomes = Vec::new();
    let mut trajectories = Vec::new();
    for (p, run) in policies.iter().zip(runs) {
        let tr = run?;
        let g = realized_growth(&tr, &spec.dynamics)?;
        outcomes.push(PolicyOutcome {
            policy: p.to_string(),
            final_time: tr.final_time(),
            final_wealth: tr.final_wealth(),
            realized_growth: g.value,
            units: g.units,
            earlier_choices: tr.choices().iter().filter(|c| **c == Alternative::Earlier).count(),
        });
        trajectories.push(tr);
    }
    let report = SimulationReport {
        case: spec.case(),
        seed: args.seed,
        count: args.count,
        wealth0: args.wealth0,
        outcomes,
    };
    let text = if args.json {
        to_json(&report) + "\n"
    } else {
        report.render()
    };

    let csv_to_stdout = args.out.is_none() && !args.compare;
    if args.out.is_some() || csv_to_stdout {
        let mut out = sink(args.out.as_deref())?;
        trajectories[0].write_csv(&mut out)?;
        out.flush()?;
    }
    if csv_to_stdout {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    Ok(())
}
