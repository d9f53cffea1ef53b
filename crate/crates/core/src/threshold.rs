//! Preference-reversal thresholds with closed forms, and the existence
//! conditions for the case-D thresholds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Case, Problem};

/// A parameter value at which the decision maker is indifferent, or the
/// reason no such value exists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Threshold {
    Horizon { h_pr: f64 },
    DecisionTime { t0_pr: f64 },
    Wealth { x_pr: f64 },
    None { reason: String },
}

impl Threshold {
    pub fn value(&self) -> Option<f64> {
        match *self {
            Threshold::Horizon { h_pr } => Some(h_pr),
            Threshold::DecisionTime { t0_pr } => Some(t0_pr),
            Threshold::Wealth { x_pr } => Some(x_pr),
            Threshold::None { .. } => None,
        }
    }

    pub fn none(reason: impl Into<String>) -> Self {
        Threshold::None { reason: reason.into() }
    }
}

/// Reason text used when the later payment is too small for a case-D
/// horizon reversal.
pub(crate) const EARLIER_ALWAYS: &str = "earlier payment is always preferred: requires dx_b > dx_a * exp(r * D)";

/// Horizon at which the preference reverses.
///
/// Case C is exact: `H = D·dx_a / (dx_b - dx_a)`. Case D uses the
/// small-payment approximation `H = D·dx_a·e^{rD} / (dx_b - dx_a·e^{rD})`.
/// Cases A and B have no horizon dependence and yield `Threshold::None`.
pub fn reversal_horizon_closed(case: Case, delay: f64, dx_a: f64, dx_b: f64, r: f64) -> Result<Threshold> {
    if !(delay > 0.0) || !delay.is_finite() {
        return Err(Error::InvalidArgument(format!("delay must be positive (got {delay})")));
    }
    if !(dx_a > 0.0 && dx_b > 0.0) || !dx_a.is_finite() || !dx_b.is_finite() {
        return Err(Error::InvalidArgument("payments must be positive and finite".into()));
    }
    match case {
        Case::A => Ok(Threshold::none(
            "no discounting in case A: the later payment is always preferred",
        )),
        Case::B => Ok(Threshold::none("case B preference does not depend on the horizon")),
        Case::C => {
            if dx_b > dx_a {
                Ok(Threshold::Horizon {
                    h_pr: delay * dx_a / (dx_b - dx_a),
                })
            } else {
                Ok(Threshold::none("requires dx_b > dx_a"))
            }
        }
        Case::D => {
            if !r.is_finite() {
                return Err(Error::InvalidArgument(format!("rate must be finite (got {r})")));
            }
            let grown = dx_a * (r * delay).exp();
            if dx_b > grown {
                Ok(Threshold::Horizon {
                    h_pr: delay * grown / (dx_b - grown),
                })
            } else {
                Ok(Threshold::none(EARLIER_ALWAYS))
            }
        }
    }
}

/// Case-C decision time at which the decision maker is indifferent,
/// `(dx_b·t_a - dx_a·t_b) / (dx_b - dx_a)`. Equals `t_a - H_pr`.
pub fn critical_decision_time(problem: &Problem) -> Threshold {
    let (dx_a, dx_b) = (problem.dx_a(), problem.dx_b());
    let t0_pr = (dx_b * problem.t_a() - dx_a * problem.t_b()) / (dx_b - dx_a);
    Threshold::DecisionTime { t0_pr }
}

/// Whether case-D preferences switch to the later payment as wealth grows:
/// `dx_b > dx_a·e^{rD}·(H + D)/H`.
pub fn wealth_effect_condition(problem: &Problem, r: f64) -> bool {
    let (h, d) = (problem.horizon(), problem.delay());
    problem.dx_b() > wealth_effect_bound(problem.dx_a(), h, d, r)
}

/// Smallest later payment that admits a wealth threshold (exclusive).
pub fn wealth_effect_bound(dx_a: f64, horizon: f64, delay: f64, r: f64) -> f64 {
    dx_a * (r * delay).exp() * ((horizon + delay) / horizon)
}
