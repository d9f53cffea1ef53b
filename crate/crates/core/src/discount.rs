//! Closed-form discount functions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Case;

/// Which discount function produced a [`DiscountFactor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscountForm {
    /// Case B, `e^{-rD}`.
    Exponential,
    /// Case C, `1 / (1 + D/H)`.
    Hyperbolic,
    /// Small-payment limit of case D, `e^{-rD} / (1 + D/H)`.
    HybridApprox,
    /// Case D solved numerically for the actual payment sizes.
    Numeric,
}

/// Ratio of earlier to later payment at indifference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscountFactor {
    pub value: f64,
    pub form: DiscountForm,
    pub delay: f64,
    pub horizon: Option<f64>,
    pub rate: Option<f64>,
}

/// Closed-form discount factor for a case. Case D means its small-payment
/// (hybrid) approximation; the exact case-D factor lives in
/// [`crate::solvers::indifference_ratio_numeric`].
///
/// Negative `r` is allowed and gives factors above one.
pub fn discount_closed(case: Case, delay: f64, horizon: f64, r: f64) -> Result<DiscountFactor> {
    if !(delay >= 0.0) || !delay.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "delay must be non-negative (got {delay})"
        )));
    }
    let needs_horizon = matches!(case, Case::C | Case::D);
    if needs_horizon && (!(horizon > 0.0) || !horizon.is_finite()) {
        return Err(Error::NonPositiveHorizon(horizon));
    }
    if matches!(case, Case::B | Case::D) && !r.is_finite() {
        return Err(Error::InvalidArgument(format!("rate must be finite (got {r})")));
    }

    let hyperbolic = || 1.0 / (1.0 + delay / horizon);
    let (value, form) = match case {
        Case::A => return Err(Error::UndefinedDiscount),
        Case::B => ((-r * delay).exp(), DiscountForm::Exponential),
        Case::C => (hyperbolic(), DiscountForm::Hyperbolic),
        Case::D => ((-r * delay).exp() * hyperbolic(), DiscountForm::HybridApprox),
    };
    Ok(DiscountFactor {
        value,
        form,
        delay,
        horizon: needs_horizon.then_some(horizon),
        rate: matches!(case, Case::B | Case::D).then_some(r),
    })
}
