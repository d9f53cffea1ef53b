//! Domain types for riskless intertemporal payment problems.
//!
//! Times are in years and amounts in an abstract currency unit. Both are
//! plain `f64` values; the conventions are documented, not enforced by type.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A choice at decision time `t0` between `dx_a` paid at `t_a` and the
/// larger `dx_b` paid at the later time `t_b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Problem {
    t0: f64,
    t_a: f64,
    t_b: f64,
    dx_a: f64,
    dx_b: f64,
    wealth0: f64,
}

impl Problem {
    /// Validates `t0 < t_a < t_b`, `0 < dx_a < dx_b` and `wealth0 >= 0`.
    pub fn new(t0: f64, t_a: f64, t_b: f64, dx_a: f64, dx_b: f64, wealth0: f64) -> Result<Self> {
        let fields = [
            ("t0", t0),
            ("t_a", t_a),
            ("t_b", t_b),
            ("dx_a", dx_a),
            ("dx_b", dx_b),
            ("wealth0", wealth0),
        ];
        if let Some((name, v)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidProblem(format!("{name} must be finite (got {v})")));
        }
        if !(t0 < t_a) {
            return Err(Error::InvalidProblem(format!("need t0 < t_a (got t0={t0}, t_a={t_a})")));
        }
        if !(t_a < t_b) {
            return Err(Error::InvalidProblem(format!(
                "need t_a < t_b (got t_a={t_a}, t_b={t_b})"
            )));
        }
        // Rounding in t_a - t0 can still produce a zero horizon for huge t0.
        if !(t_a - t0 > 0.0) || !(t_b - t_a > 0.0) {
            return Err(Error::InvalidProblem(
                "horizon and delay must be representable as positive".into(),
            ));
        }
        if !(dx_a > 0.0) {
            return Err(Error::InvalidProblem(format!("need dx_a > 0 (got {dx_a})")));
        }
        if !(dx_b > dx_a) {
            return Err(Error::InvalidProblem(format!(
                "need dx_b > dx_a (got dx_a={dx_a}, dx_b={dx_b})"
            )));
        }
        if wealth0 < 0.0 {
            return Err(Error::InvalidProblem(format!("need wealth0 >= 0 (got {wealth0})")));
        }
        Ok(Problem {
            t0,
            t_a,
            t_b,
            dx_a,
            dx_b,
            wealth0,
        })
    }

    /// Builds a problem with the decision at `t0 = 0`.
    pub fn from_horizon(horizon: f64, delay: f64, dx_a: f64, dx_b: f64, wealth0: f64) -> Result<Self> {
        Self::new(0.0, horizon, horizon + delay, dx_a, dx_b, wealth0)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }
    pub fn t_a(&self) -> f64 {
        self.t_a
    }
    pub fn t_b(&self) -> f64 {
        self.t_b
    }
    pub fn dx_a(&self) -> f64 {
        self.dx_a
    }
    pub fn dx_b(&self) -> f64 {
        self.dx_b
    }
    pub fn wealth0(&self) -> f64 {
        self.wealth0
    }

    /// Time from the decision to the earlier payment, `t_a - t0`.
    pub fn horizon(&self) -> f64 {
        self.t_a - self.t0
    }

    /// Time between the two payments, `t_b - t_a`.
    pub fn delay(&self) -> f64 {
        self.t_b - self.t_a
    }

    pub fn with_wealth(&self, wealth0: f64) -> Result<Self> {
        Self::new(self.t0, self.t_a, self.t_b, self.dx_a, self.dx_b, wealth0)
    }

    pub fn with_payments(&self, dx_a: f64, dx_b: f64) -> Result<Self> {
        Self::new(self.t0, self.t_a, self.t_b, dx_a, dx_b, self.wealth0)
    }
}

/// Background wealth dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Dynamics {
    /// Linear growth at `k` currency per year. `k` may be negative.
    Additive { k: f64 },
    /// Exponential growth at `r` per year.
    Multiplicative { r: f64 },
}

impl Dynamics {
    pub fn units(&self) -> RateUnits {
        match self {
            Dynamics::Additive { .. } => RateUnits::CurrencyPerTime,
            Dynamics::Multiplicative { .. } => RateUnits::PerTime,
        }
    }

    pub fn rate(&self) -> f64 {
        match *self {
            Dynamics::Additive { k } => k,
            Dynamics::Multiplicative { r } => r,
        }
    }

    /// Wealth after `elapsed` years of background evolution with no payments.
    pub fn evolve(&self, wealth: f64, elapsed: f64) -> f64 {
        match *self {
            Dynamics::Additive { k } => wealth + k * elapsed,
            Dynamics::Multiplicative { r } => wealth * (r * elapsed).exp(),
        }
    }
}

/// Period over which growth is measured for each option.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeFrame {
    /// Both options are measured from the decision to the later payment.
    Fixed,
    /// Each option is measured from the decision to its own payment.
    Adaptive,
}

/// Labels for the four combinations of time frame and dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Case::A => "A",
            Case::B => "B",
            Case::C => "C",
            Case::D => "D",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Specification {
    pub dynamics: Dynamics,
    pub time_frame: TimeFrame,
}

impl Specification {
    pub fn new(dynamics: Dynamics, time_frame: TimeFrame) -> Self {
        Specification { dynamics, time_frame }
    }

    pub fn case(&self) -> Case {
        match (self.time_frame, self.dynamics) {
            (TimeFrame::Fixed, Dynamics::Additive { .. }) => Case::A,
            (TimeFrame::Fixed, Dynamics::Multiplicative { .. }) => Case::B,
            (TimeFrame::Adaptive, Dynamics::Additive { .. }) => Case::C,
            (TimeFrame::Adaptive, Dynamics::Multiplicative { .. }) => Case::D,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateUnits {
    /// Additive rates, currency per year.
    CurrencyPerTime,
    /// Multiplicative rates, per year.
    PerTime,
}

impl RateUnits {
    pub fn symbol(&self) -> &'static str {
        match self {
            RateUnits::CurrencyPerTime => "currency/yr",
            RateUnits::PerTime => "1/yr",
        }
    }
}

/// A growth rate tagged with its units. Additive and multiplicative rates
/// are never comparable with each other.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthRate {
    pub value: f64,
    pub units: RateUnits,
}

impl GrowthRate {
    pub fn new(value: f64, units: RateUnits) -> Self {
        GrowthRate { value, units }
    }

    /// `self - other`, rejecting mismatched units.
    pub fn gap(&self, other: &GrowthRate) -> Result<f64> {
        if self.units != other.units {
            return Err(Error::UnitsMismatch);
        }
        Ok(self.value - other.value)
    }

    pub fn try_cmp(&self, other: &GrowthRate) -> Result<Option<Ordering>> {
        if self.units != other.units {
            return Err(Error::UnitsMismatch);
        }
        Ok(self.value.partial_cmp(&other.value))
    }
}

/// Which of the two payments in a problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alternative {
    Earlier,
    Later,
}

impl Alternative {
    pub fn as_str(&self) -> &'static str {
        match self {
            Alternative::Earlier => "earlier",
            Alternative::Later => "later",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Preference {
    EarlierPreferred,
    LaterPreferred,
    Indifferent,
}

impl Preference {
    /// Classifies `gap = g_a - g_b` against an absolute indifference band.
    pub fn from_gap(gap: f64, tolerance: f64) -> Self {
        if gap > tolerance {
            Preference::EarlierPreferred
        } else if -gap > tolerance {
            Preference::LaterPreferred
        } else {
            Preference::Indifferent
        }
    }
}

impl fmt::Display for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Preference::EarlierPreferred => "EarlierPreferred",
            Preference::LaterPreferred => "LaterPreferred",
            Preference::Indifferent => "Indifferent",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub preference: Preference,
    pub g_a: GrowthRate,
    pub g_b: GrowthRate,
    pub tolerance_used: f64,
}
