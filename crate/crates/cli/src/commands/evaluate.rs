use ripp_core::solvers::ReversalInputs;
use ripp_core::{
    critical_decision_time, discount_closed, prefer, reversal_horizon_closed, reversal_horizon_numeric,
    wealth_threshold, Case, Dynamics, RootConfig, Threshold, DEFAULT_TOLERANCE,
};

use crate::cli::EvaluateArgs;
use crate::doc::{DynamicsDoc, ProblemDocument};
use crate::error::{CliError, CliResult};
use crate::report::{to_json, EvaluateReport};

pub fn run(args: &EvaluateArgs) -> CliResult<()> {
    let mut doc = match &args.doc {
        Some(path) => ProblemDocument::load(path)?,
        None => from_flags(args)?,
    };
    apply_overrides(&mut doc, args);
    let cfg = args.solver.apply(doc.solver_config()?)?;
    let report = evaluate_document(&doc, &cfg)?;
    if args.json {
        println!("{}", to_json(&report));
    } else {
        print!("{}", report.render());
    }
    Ok(())
}

fn from_flags(args: &EvaluateArgs) -> CliResult<ProblemDocument> {
    let mut missing = Vec::new();
    let mut need = |name: &str, v: Option<f64>| {
        if v.is_none() {
            missing.push(format!("--{name}"));
        }
        v.unwrap_or(f64::NAN)
    };
    let t_a = need("t-a", args.t_a);
    let t_b = need("t-b", args.t_b);
    let dx_a = need("dx-a", args.dx_a);
    let dx_b = need("dx-b", args.dx_b);
    if args.dynamics.is_none() {
        missing.push("--dynamics".into());
    }
    if args.frame.is_none() {
        missing.push("--frame".into());
    }
    let (Some(kind), Some(frame), true) = (args.dynamics, args.frame, missing.is_empty()) else {
        return Err(CliError::Input(format!(
            "missing {} (or pass a problem document)",
            missing.join(", ")
        )));
    };
    Ok(ProblemDocument {
        t0: 0.0,
        t_a,
        t_b,
        dx_a,
        dx_b,
        wealth0: 0.0,
        dynamics: DynamicsDoc { kind, rate: 0.0 },
        time_frame: frame.into(),
        tolerance: None,
        solver: None,
    })
}

fn apply_overrides(doc: &mut ProblemDocument, args: &EvaluateArgs) {
    let fields = [
        (&mut doc.t0, args.t0),
        (&mut doc.t_a, args.t_a),
        (&mut doc.t_b, args.t_b),
        (&mut doc.dx_a, args.dx_a),
        (&mut doc.dx_b, args.dx_b),
        (&mut doc.wealth0, args.wealth0),
        (&mut doc.dynamics.rate, args.rate),
    ];
    for (slot, v) in fields {
        if let Some(v) = v {
            *slot = v;
        }
    }
    if let Some(kind) = args.dynamics {
        doc.dynamics.kind = kind;
    }
    if let Some(frame) = args.frame {
        doc.time_frame = frame.into();
    }
    if args.tol.is_some() {
        doc.tolerance = args.tol;
    }
}

/// Evaluates a problem document into a report. Thresholds are included
/// where they exist for the document's case.
pub fn evaluate_document(doc: &ProblemDocument, cfg: &RootConfig) -> CliResult<EvaluateReport> {
    let problem = doc.problem()?;
    let spec = doc.specification();
    let tolerance = doc.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let decision = prefer(&spec, &problem, tolerance)?;
    let case = spec.case();
    let (h, d) = (problem.horizon(), problem.delay());
    let rate = spec.dynamics.rate();

    let (discount, note) = match case {
        Case::A => (None, Some("no discounting in this specification".to_string())),
        _ => (Some(discount_closed(case, d, h, rate)?), None),
    };

    let thresholds = match (case, spec.dynamics) {
        (Case::C, _) => {
            let horizon = reversal_horizon_closed(case, d, problem.dx_a(), problem.dx_b(), rate)?;
            vec![horizon, critical_decision_time(&problem)]
        }
        (Case::D, Dynamics::Multiplicative { r }) => {
            let inputs = ReversalInputs {
                delay: d,
                dx_a: problem.dx_a(),
                dx_b: problem.dx_b(),
                wealth0: problem.wealth0(),
            };
            let horizon = reversal_horizon_numeric(&inputs, r, cfg)?;
            let decision_time = match horizon {
                Threshold::Horizon { h_pr } => Threshold::DecisionTime {
                    t0_pr: problem.t_a() - h_pr,
                },
                ref other => other.clone(),
            };
            vec![horizon, decision_time, wealth_threshold(&problem, r, cfg)?]
        }
        _ => vec![Threshold::none(
            "preference does not depend on the horizon or on wealth in this specification",
        )],
    };

    Ok(EvaluateReport {
        case,
        g_a: decision.g_a,
        g_b: decision.g_b,
        gap: decision.g_a.gap(&decision.g_b)?,
        preference: decision.preference,
        tolerance: decision.tolerance_used,
        discount,
        thresholds,
        note,
    })
}
