//! Growth-rate-optimal evaluation of riskless intertemporal payment
//! problems: a choice between a smaller, earlier payment and a larger,
//! later one.
//!
//! The decision maker prefers whichever option makes wealth grow faster.
//! Combining a time frame (fixed or adaptive) with background wealth
//! dynamics (additive or multiplicative) gives four cases, labelled A to D,
//! which produce no discounting, exponential, hyperbolic and hybrid
//! discounting respectively.
//!
//! - [`growth`]: growth rates and preferences for all four cases.
//! - [`discount`], [`threshold`]: closed-form discount factors,
//!   reversal horizons and existence conditions.
//! - [`solvers`]: root finding for the case-D quantities without a closed
//!   form.
//! - [`sim`]: a repeated-choice simulator comparing choice policies.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod discount;
pub mod error;
pub mod growth;
pub mod model;
pub mod numfmt;
pub mod sim;
pub mod solvers;
pub mod threshold;

pub use discount::{discount_closed, DiscountFactor, DiscountForm};
pub use error::{Error, Result};
pub use growth::{growth_rate, option_rate, prefer, DEFAULT_TOLERANCE};
pub use model::{
    Alternative, Case, Decision, Dynamics, GrowthRate, Preference, Problem, RateUnits, Specification, TimeFrame,
};
pub use solvers::{
    indifference_ratio_numeric, reversal_horizon_numeric, solve_root, wealth_threshold, IndifferenceInputs,
    ReversalInputs, RootConfig,
};
pub use threshold::{
    critical_decision_time, reversal_horizon_closed, wealth_effect_bound, wealth_effect_condition, Threshold,
};
