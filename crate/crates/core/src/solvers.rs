//! Root finding for the case-D quantities that have no closed form: the
//! exact discount factor, the reversal horizon and the wealth threshold.
//!
//! All case-D searches work on the sign of `ln(g_a - r) - ln(g_b - r)`,
//! which has the same zero as `g_a - g_b` but stays well scaled when both
//! excess rates are tiny (small payments, long horizons, large wealth).
//!
//! The searches bracket a single sign change on a log-spaced grid starting
//! from a natural scale of the problem. When several crossings exist the
//! one inside that bracket is reported; uniqueness is not checked.

use serde::{Deserialize, Serialize};

use crate::discount::{DiscountFactor, DiscountForm};
use crate::error::{Error, Result};
use crate::growth::ln_excess;
use crate::model::Problem;
use crate::threshold::{wealth_effect_bound, wealth_effect_condition, Threshold, EARLIER_ALWAYS};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RootConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
    pub bracket_expansion_factor: f64,
    pub max_bracket_expansions: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_iter: 200,
            bracket_expansion_factor: 2.0,
            max_bracket_expansions: 60,
        }
    }
}

impl RootConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidArgument(format!("root config: {what}")));
        if !(self.abs_tol > 0.0) {
            return bad("abs_tol must be positive");
        }
        if !(self.rel_tol > 0.0) {
            return bad("rel_tol must be positive");
        }
        if self.max_iter == 0 {
            return bad("max_iter must be positive");
        }
        if !(self.bracket_expansion_factor > 1.0) || !self.bracket_expansion_factor.is_finite() {
            return bad("bracket_expansion_factor must exceed 1");
        }
        if self.max_bracket_expansions == 0 {
            return bad("max_bracket_expansions must be positive");
        }
        Ok(())
    }
}

/// Finds a root of `f` starting from `[lo, hi]`.
///
/// If `f` does not change sign on the initial interval, the end with the
/// smaller `|f|` is pushed outward geometrically until it does. The
/// bracket is then refined by bisection interleaved with secant steps.
pub fn solve_root<F>(mut f: F, lo: f64, hi: f64, cfg: &RootConfig) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    cfg.validate()?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidArgument(format!("bad bracket [{lo}, {hi}]")));
    }
    let (mut lo, mut hi) = (lo, hi);
    let (mut flo, mut fhi) = (f(lo), f(hi));
    let mut expansions = 0;
    while !opposite_or_zero(flo, fhi) {
        if expansions >= cfg.max_bracket_expansions || !flo.is_finite() && !fhi.is_finite() {
            return Err(Error::NoSignChange { lo, hi });
        }
        let width = hi - lo;
        if flo.abs() < fhi.abs() {
            lo -= cfg.bracket_expansion_factor * width;
            flo = f(lo);
        } else {
            hi += cfg.bracket_expansion_factor * width;
            fhi = f(hi);
        }
        expansions += 1;
    }
    refine(f, lo, hi, flo, fhi, cfg)
}

fn opposite_or_zero(a: f64, b: f64) -> bool {
    a == 0.0 || b == 0.0 || (a < 0.0) != (b < 0.0) && a.is_finite() && b.is_finite()
}

/// Refines a verified sign-change bracket.
fn refine<F>(mut f: F, mut lo: f64, mut hi: f64, mut flo: f64, mut fhi: f64, cfg: &RootConfig) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    for iter in 0..cfg.max_iter {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= cfg.abs_tol + cfg.rel_tol * mid.abs() {
            return Ok(mid);
        }
        // Secant on even steps, bisection on odd ones, so the bracket at
        // least halves every two iterations.
        let mut x = mid;
        if iter % 2 == 0 {
            let s = hi - fhi * (hi - lo) / (fhi - flo);
            if s.is_finite() && s > lo && s < hi {
                x = s;
            }
        }
        let fx = f(x);
        if fx == 0.0 || fx.abs() < cfg.abs_tol {
            return Ok(x);
        }
        if (fx < 0.0) == (flo < 0.0) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    Err(Error::MaxIterations(cfg.max_iter))
}

/// Finds a root on `(0, ∞)` of a function that is positive near zero and
/// negative for large arguments.
///
/// From `seed` the search steps down (if `f(seed) <= 0`) or up (otherwise)
/// in log space, doubling the log-step each time, until the sign flips. The
/// bracket is then refined in `ln x`, so the tolerances are relative.
fn solve_positive_crossing<F>(mut f: F, seed: f64, cfg: &RootConfig) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut g = |u: f64| f(u.exp());
    let u0 = seed.ln();
    let f0 = g(u0);
    if f0 == 0.0 {
        return Ok(seed);
    }
    let descending = !(f0 > 0.0);
    let mut step = cfg.bracket_expansion_factor.ln();
    let (mut prev, mut fprev) = (u0, f0);
    for _ in 0..cfg.max_bracket_expansions {
        let u = if descending { prev - step } else { prev + step };
        let fu = g(u);
        if fu.is_nan() {
            break;
        }
        let crossed = if descending { fu > 0.0 } else { !(fu > 0.0) };
        if crossed {
            let (lo, hi, flo, fhi) = if descending {
                (u, prev, fu, fprev)
            } else {
                (prev, u, fprev, fu)
            };
            return refine(g, lo, hi, flo, fhi, cfg).map(f64::exp);
        }
        prev = u;
        fprev = fu;
        step *= 2.0;
    }
    Err(Error::NoSignChange {
        lo: seed,
        hi: prev.exp(),
    })
}

/// `ln(g_a - r) - ln(g_b - r)` for case D. Positive exactly when the
/// earlier payment has the higher growth rate.
pub fn case_d_log_gap(horizon: f64, delay: f64, dx_a: f64, dx_b: f64, wealth0: f64, r: f64) -> f64 {
    let ln_w = wealth0.ln();
    let a = ln_excess(dx_a.ln() - ln_w - r * horizon, horizon);
    let b = ln_excess(dx_b.ln() - ln_w - r * (horizon + delay), horizon + delay);
    a - b
}

/// Case-D inputs for the exact discount factor (the earlier payment is the
/// unknown).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndifferenceInputs {
    pub horizon: f64,
    pub delay: f64,
    pub wealth0: f64,
    pub dx_b: f64,
}

/// Case-D inputs for the reversal horizon (the horizon is the unknown).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReversalInputs {
    pub delay: f64,
    pub dx_a: f64,
    pub dx_b: f64,
    pub wealth0: f64,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{name} must be positive and finite (got {v})"
        )))
    }
}

/// Exact case-D discount factor: the earlier payment `dx_a*` that makes the
/// two growth rates equal, divided by `dx_b`.
///
/// `g_a` increases strictly in `dx_a` from `r` while `g_b > r` is fixed, so
/// the root is unique. For `r >= 0` it lies in `(0, dx_b)`; a negative `r`
/// can push it above `dx_b`, which the bracket search allows.
pub fn indifference_ratio_numeric(inputs: &IndifferenceInputs, r: f64, cfg: &RootConfig) -> Result<DiscountFactor> {
    cfg.validate()?;
    let IndifferenceInputs {
        horizon,
        delay,
        wealth0,
        dx_b,
    } = *inputs;
    check_positive("horizon", horizon)?;
    check_positive("delay", delay)?;
    if !(wealth0 > 0.0) {
        return Err(Error::WealthNonPositive(wealth0));
    }
    check_positive("dx_b", dx_b)?;
    if !r.is_finite() {
        return Err(Error::InvalidArgument(format!("rate must be finite (got {r})")));
    }

    let ln_w = wealth0.ln();
    let target = ln_excess(dx_b.ln() - ln_w - r * (horizon + delay), horizon + delay);
    // Increasing in dx_a, so negate to fit the positive-then-negative search.
    let f = |dx_a: f64| target - ln_excess(dx_a.ln() - ln_w - r * horizon, horizon);
    let dx_a = solve_positive_crossing(f, dx_b, cfg)?;
    Ok(DiscountFactor {
        value: dx_a / dx_b,
        form: DiscountForm::Numeric,
        delay,
        horizon: Some(horizon),
        rate: Some(r),
    })
}

/// Case-D horizon at which the preference reverses.
///
/// Exists only when `dx_b > dx_a·e^{rD}`; otherwise the earlier payment is
/// preferred at every horizon and `Threshold::None` is returned without
/// solving. The search is seeded at `H = D`.
pub fn reversal_horizon_numeric(inputs: &ReversalInputs, r: f64, cfg: &RootConfig) -> Result<Threshold> {
    cfg.validate()?;
    let ReversalInputs {
        delay,
        dx_a,
        dx_b,
        wealth0,
    } = *inputs;
    check_positive("delay", delay)?;
    check_positive("dx_a", dx_a)?;
    check_positive("dx_b", dx_b)?;
    if !(wealth0 > 0.0) {
        return Err(Error::WealthNonPositive(wealth0));
    }
    if !r.is_finite() {
        return Err(Error::InvalidArgument(format!("rate must be finite (got {r})")));
    }
    if !(dx_b > dx_a * (r * delay).exp()) {
        return Ok(Threshold::none(EARLIER_ALWAYS));
    }
    let f = |h: f64| case_d_log_gap(h, delay, dx_a, dx_b, wealth0, r);
    let h_pr = solve_positive_crossing(f, delay, cfg)?;
    Ok(Threshold::Horizon { h_pr })
}

/// Case-D initial wealth above which the later payment is preferred.
///
/// `problem.wealth0()` is ignored. Exists only when
/// `dx_b > dx_a·e^{rD}·(H + D)/H`. The search is seeded at `x0 = dx_b`.
pub fn wealth_threshold(problem: &Problem, r: f64, cfg: &RootConfig) -> Result<Threshold> {
    cfg.validate()?;
    if !r.is_finite() {
        return Err(Error::InvalidArgument(format!("rate must be finite (got {r})")));
    }
    let (h, d, dx_a, dx_b) = (problem.horizon(), problem.delay(), problem.dx_a(), problem.dx_b());
    if !wealth_effect_condition(problem, r) {
        return Ok(Threshold::none(format!(
            "no wealth effect: requires dx_b > dx_a * exp(r * D) * (H + D) / H = {}",
            wealth_effect_bound(dx_a, h, d, r)
        )));
    }
    let f = |x0: f64| case_d_log_gap(h, d, dx_a, dx_b, x0, r);
    let x_pr = solve_positive_crossing(f, dx_b, cfg)?;
    Ok(Threshold::Wealth { x_pr })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discount::discount_closed;
    use crate::growth::{prefer, DEFAULT_TOLERANCE};
    use crate::model::{Case, Dynamics, Preference, Specification, TimeFrame};
    use crate::threshold::reversal_horizon_closed;

    fn case_d(r: f64) -> Specification {
        Specification::new(Dynamics::Multiplicative { r }, TimeFrame::Adaptive)
    }

    #[test]
    fn linear_root() {
        let x = solve_root(|x| x - 3.0, 0.0, 10.0, &RootConfig::default()).unwrap();
        assert!((x - 3.0).abs() < 1e-12);
    }

    #[test]
    fn log_two() {
        let x = solve_root(|x: f64| x.exp() - 2.0, 0.0, 1.0, &RootConfig::default()).unwrap();
        assert!((x - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn tangent_root_has_no_sign_change() {
        let err = solve_root(|x| x * x, -1.0, 1.0, &RootConfig::default()).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
    }

    #[test]
    fn bracket_expands_outward() {
        let x = solve_root(|x| x - 100.0, 0.0, 1.0, &RootConfig::default()).unwrap();
        assert!((x - 100.0).abs() < 1e-9);
    }

    #[test]
    fn iteration_cap_is_reported() {
        let cfg = RootConfig {
            max_iter: 3,
            abs_tol: 1e-300,
            rel_tol: 1e-300,
            ..RootConfig::default()
        };
        let err = solve_root(|x: f64| x.powi(3) - 2.0, 0.0, 5.0, &cfg).unwrap_err();
        assert_eq!(err, Error::MaxIterations(3));
    }

    #[test]
    fn config_validation() {
        assert!(RootConfig::default().validate().is_ok());
        let bad = RootConfig {
            bracket_expansion_factor: 1.0,
            ..RootConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = RootConfig {
            abs_tol: 0.0,
            ..RootConfig::default()
        };
        assert!(solve_root(|x| x, -1.0, 1.0, &bad).is_err());
    }

    #[test]
    fn solver_is_deterministic() {
        let run = || solve_root(|x: f64| x.sin() - 0.3, 0.0, 1.5, &RootConfig::default()).unwrap();
        assert_eq!(run().to_bits(), run().to_bits());
    }

    #[test]
    fn numeric_discount_small_payments_matches_hybrid() {
        let inputs = IndifferenceInputs {
            horizon: 0.65,
            delay: 1.0,
            wealth0: 1.0,
            dx_b: 1e-6,
        };
        let d = indifference_ratio_numeric(&inputs, 0.4, &RootConfig::default()).unwrap();
        let hybrid = discount_closed(Case::D, 1.0, 0.65, 0.4).unwrap().value;
        assert_eq!(d.form, DiscountForm::Numeric);
        assert!(((d.value - hybrid) / hybrid).abs() < 1e-4);
    }

    #[test]
    fn numeric_discount_near_zero_delay() {
        let inputs = IndifferenceInputs {
            horizon: 1.0,
            delay: 1e-9,
            wealth0: 100.0,
            dx_b: 50.0,
        };
        let d = indifference_ratio_numeric(&inputs, 0.1, &RootConfig::default()).unwrap();
        assert!((d.value - 1.0).abs() < 1e-6);
    }

    #[test]
    fn numeric_discount_matches_explicit_inversion() {
        // g_a = g_b can be inverted for dx_a directly:
        // dx_a = x0·e^{rH}·(exp((g_b - r)·H) - 1).
        let cases: [(f64, f64, f64, f64, f64); 3] = [
            (1.0, 1.0, 500.0, 2500.0, 0.03),
            (0.3, 4.0, 10.0, 1.0, 0.2),
            (2.0, 0.5, 1.0, 30.0, -0.1),
        ];
        for (h, d, x0, dx_b, r) in cases {
            let g_b = (dx_b / (x0 * (r * (h + d)).exp())).ln_1p() / (h + d);
            let expected = x0 * (r * h).exp() * (g_b * h).exp_m1() / dx_b;
            let inputs = IndifferenceInputs {
                horizon: h,
                delay: d,
                wealth0: x0,
                dx_b,
            };
            let got = indifference_ratio_numeric(&inputs, r, &RootConfig::default())
                .unwrap()
                .value;
            assert!(((got - expected) / expected).abs() < 1e-10, "{got} vs {expected}");
        }
    }

    #[test]
    fn reversal_horizon_requires_large_later_payment() {
        let inputs = ReversalInputs {
            delay: 1.0,
            dx_a: 100.0,
            dx_b: 101.0,
            wealth0: 1000.0,
        };
        let t = reversal_horizon_numeric(&inputs, 0.05, &RootConfig::default()).unwrap();
        match t {
            Threshold::None { reason } => assert!(reason.contains("earlier payment is always preferred")),
            other => panic!("expected None, got {other:?}"),
        }
    }

    #[test]
    fn reversal_horizon_small_payments_matches_closed_form() {
        let inputs = ReversalInputs {
            delay: 1.0,
            dx_a: 1e-4,
            dx_b: 2e-4,
            wealth0: 1.0,
        };
        let h = reversal_horizon_numeric(&inputs, 0.03, &RootConfig::default())
            .unwrap()
            .value()
            .unwrap();
        let closed = reversal_horizon_closed(Case::D, 1.0, 1e-4, 2e-4, 0.03)
            .unwrap()
            .value()
            .unwrap();
        assert!(((h - closed) / closed).abs() < 1e-3);
        // 40-digit reference for the exact root.
        assert!((h - 1.0629221908447218).abs() < 1e-9);
    }

    #[test]
    fn preference_flips_around_reversal_horizon() {
        let inputs = ReversalInputs {
            delay: 1.0,
            dx_a: 1000.0,
            dx_b: 2500.0,
            wealth0: 5500.0,
        };
        let h = reversal_horizon_numeric(&inputs, 0.03, &RootConfig::default())
            .unwrap()
            .value()
            .unwrap();
        let at = |h: f64| {
            let p = Problem::from_horizon(h, 1.0, 1000.0, 2500.0, 5500.0).unwrap();
            prefer(&case_d(0.03), &p, DEFAULT_TOLERANCE).unwrap().preference
        };
        assert_eq!(at(h / 2.0), Preference::EarlierPreferred);
        assert_eq!(at(2.0 * h), Preference::LaterPreferred);
    }

    #[test]
    fn wealth_threshold_worked_example() {
        let p = Problem::from_horizon(1.0, 1.0, 1000.0, 2500.0, 1.0).unwrap();
        let x = wealth_threshold(&p, 0.03, &RootConfig::default())
            .unwrap()
            .value()
            .unwrap();
        assert!((x - 2277.4325929105626).abs() < 1e-6);
        let at = p.with_wealth(x).unwrap();
        let d = prefer(&case_d(0.03), &at, 1e-9).unwrap();
        assert_eq!(d.preference, Preference::Indifferent);
    }

    #[test]
    fn wealth_threshold_absent_without_wealth_effect() {
        let p = Problem::from_horizon(1.0, 1.0, 1000.0, 2000.0, 1.0).unwrap();
        let t = wealth_threshold(&p, 0.03, &RootConfig::default()).unwrap();
        assert!(matches!(t, Threshold::None { .. }));
    }

    #[test]
    fn discount_at_wealth_threshold_is_payment_ratio() {
        let p = Problem::from_horizon(1.0, 1.0, 1000.0, 2500.0, 1.0).unwrap();
        let x = wealth_threshold(&p, 0.03, &RootConfig::default())
            .unwrap()
            .value()
            .unwrap();
        let inputs = IndifferenceInputs {
            horizon: 1.0,
            delay: 1.0,
            wealth0: x,
            dx_b: 2500.0,
        };
        let d = indifference_ratio_numeric(&inputs, 0.03, &RootConfig::default()).unwrap();
        assert!((d.value - 0.4).abs() < 1e-9);
    }

    #[test]
    fn invalid_inputs() {
        let cfg = RootConfig::default();
        let bad = IndifferenceInputs {
            horizon: 1.0,
            delay: 1.0,
            wealth0: 0.0,
            dx_b: 1.0,
        };
        assert_eq!(
            indifference_ratio_numeric(&bad, 0.1, &cfg),
            Err(Error::WealthNonPositive(0.0))
        );
        let bad = ReversalInputs {
            delay: 0.0,
            dx_a: 1.0,
            dx_b: 2.0,
            wealth0: 1.0,
        };
        assert!(reversal_horizon_numeric(&bad, 0.1, &cfg).is_err());
    }
}
