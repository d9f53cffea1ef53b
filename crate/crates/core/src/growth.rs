//! Growth rates under each specification and the growth-optimal preference.

use crate::error::{Error, Result};
use crate::model::{Alternative, Decision, Dynamics, GrowthRate, Preference, Problem, Specification, TimeFrame};

/// Default absolute indifference band on `g_a - g_b`, in the rate's own units.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Growth rate of wealth associated with one option of `problem`.
pub fn growth_rate(spec: &Specification, option: Alternative, problem: &Problem) -> Result<GrowthRate> {
    let amount = match option {
        Alternative::Earlier => problem.dx_a(),
        Alternative::Later => problem.dx_b(),
    };
    option_rate(
        spec,
        option,
        problem.horizon(),
        problem.delay(),
        amount,
        problem.wealth0(),
    )
}

/// Growth rate for a single payment of `amount` received at the horizon
/// (earlier option) or at `horizon + delay` (later option).
///
/// Unlike [`growth_rate`] this accepts a zero payment, which recovers the
/// background rate.
pub fn option_rate(
    spec: &Specification,
    option: Alternative,
    horizon: f64,
    delay: f64,
    amount: f64,
    wealth0: f64,
) -> Result<GrowthRate> {
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(Error::NonPositiveHorizon(horizon));
    }
    if !(delay >= 0.0) || !delay.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "delay must be non-negative (got {delay})"
        )));
    }
    if !(amount >= 0.0) || !amount.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "payment must be non-negative (got {amount})"
        )));
    }

    // Period over which growth is measured, and the time the payment spends
    // compounding before the end of that period.
    let (period, compounding) = match (spec.time_frame, option) {
        (TimeFrame::Fixed, Alternative::Earlier) => (horizon + delay, delay),
        (TimeFrame::Fixed, Alternative::Later) => (horizon + delay, 0.0),
        (TimeFrame::Adaptive, Alternative::Earlier) => (horizon, 0.0),
        (TimeFrame::Adaptive, Alternative::Later) => (horizon + delay, 0.0),
    };

    let value = match spec.dynamics {
        Dynamics::Additive { k } => amount / period + k,
        Dynamics::Multiplicative { r } => {
            if !(wealth0 > 0.0) {
                return Err(Error::WealthNonPositive(wealth0));
            }
            log_rate(amount, compounding, wealth0, period, r)
        }
    };
    Ok(GrowthRate::new(value, spec.dynamics.units()))
}

/// Multiplicative rate `ln(1 + amount·e^{r·compounding} / (wealth0·e^{r·period})) / period + r`.
fn log_rate(amount: f64, compounding: f64, wealth0: f64, period: f64, r: f64) -> f64 {
    let grown = if compounding > 0.0 {
        amount * (r * compounding).exp()
    } else {
        amount
    };
    let ratio = grown / (wealth0 * (r * period).exp());
    if ratio.is_finite() && (ratio == 0.0 && amount == 0.0 || ratio.is_normal()) {
        return ratio.ln_1p() / period + r;
    }
    // Overflow or underflow of the exponentials; work with the log-ratio.
    let ln_ratio = amount.ln() + r * compounding - wealth0.ln() - r * period;
    softplus(ln_ratio) / period + r
}

/// `ln(1 + e^z)` without overflow.
pub(crate) fn softplus(z: f64) -> f64 {
    if z > 35.0 {
        z + (-z).exp()
    } else {
        z.exp().ln_1p()
    }
}

/// `ln(softplus(z))`, accurate for very negative `z` where `softplus`
/// underflows.
pub(crate) fn ln_softplus(z: f64) -> f64 {
    if z < -35.0 {
        z - 0.5 * z.exp()
    } else {
        softplus(z).ln()
    }
}

/// Log of the excess rate `g - r` under multiplicative dynamics for a
/// payment whose log-ratio to end-of-period background wealth is `ln_ratio`.
pub(crate) fn ln_excess(ln_ratio: f64, period: f64) -> f64 {
    ln_softplus(ln_ratio) - period.ln()
}

/// Growth-optimal preference between the two options.
pub fn prefer(spec: &Specification, problem: &Problem, tolerance: f64) -> Result<Decision> {
    if !(tolerance >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be non-negative (got {tolerance})"
        )));
    }
    let g_a = growth_rate(spec, Alternative::Earlier, problem)?;
    let g_b = growth_rate(spec, Alternative::Later, problem)?;
    let gap = g_a.gap(&g_b)?;
    Ok(Decision {
        preference: Preference::from_gap(gap, tolerance),
        g_a,
        g_b,
        tolerance_used: tolerance,
    })
}
