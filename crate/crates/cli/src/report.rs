//! Report types shared by the subcommands, and the two output formats:
//! JSON with 12 significant digits for machines and short decimals for
//! people.

use ripp_core::numfmt::{fmt_sig, round_sig, MACHINE_DIGITS};
use ripp_core::{Case, DiscountFactor, GrowthRate, Preference, RateUnits, Threshold};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Renders `value` as pretty JSON with every float rounded to
/// [`MACHINE_DIGITS`] significant digits.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("report types always serialize");
    round_floats(&mut v);
    serde_json::to_string_pretty(&v).expect("json values always serialize")
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(f64::NAN), MACHINE_DIGITS);
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// A number for human-readable output: four decimals for ordinary
/// magnitudes, four significant digits otherwise.
pub fn human(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-3..1e9).contains(&a) {
        format!("{x:.4}")
    } else {
        fmt_sig(x, 4)
    }
}

/// A number for CSV output.
pub fn machine(x: f64) -> String {
    fmt_sig(x, MACHINE_DIGITS)
}

pub fn describe_case(case: Case) -> &'static str {
    match case {
        Case::A => "fixed time frame, additive dynamics",
        Case::B => "fixed time frame, multiplicative dynamics",
        Case::C => "adaptive time frame, additive dynamics",
        Case::D => "adaptive time frame, multiplicative dynamics",
    }
}

pub fn describe_threshold(t: &Threshold) -> String {
    match t {
        Threshold::Horizon { h_pr } => format!("reversal horizon H = {}", human(*h_pr)),
        Threshold::DecisionTime { t0_pr } => format!("critical decision time t0 = {}", human(*t0_pr)),
        Threshold::Wealth { x_pr } => format!("wealth threshold x0 = {}", human(*x_pr)),
        Threshold::None { reason } => format!("none ({reason})"),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvaluateReport {
    pub case: Case,
    pub g_a: GrowthRate,
    pub g_b: GrowthRate,
    pub gap: f64,
    pub preference: Preference,
    pub tolerance: f64,
    /// Closed-form discount factor; absent in case A.
    pub discount: Option<DiscountFactor>,
    pub thresholds: Vec<Threshold>,
    pub note: Option<String>,
}

impl EvaluateReport {
    pub fn render(&self) -> String {
        let mut out = format!("case {} ({})\n", self.case, describe_case(self.case));
        let units = self.g_a.units.symbol();
        out += &format!("g_a = {} {units}\n", human(self.g_a.value));
        out += &format!("g_b = {} {units}\n", human(self.g_b.value));
        out += &format!("preference: {}\n", self.preference);
        if let Some(d) = &self.discount {
            out += &format!("discount factor: {}\n", human(d.value));
        }
        for t in &self.thresholds {
            out += &format!("threshold: {}\n", describe_threshold(t));
        }
        if let Some(note) = &self.note {
            out += &format!("note: {note}\n");
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Numeric,
}

/// One estimate of the reversal horizon and the matching decision time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReversalEstimate {
    pub method: Method,
    pub threshold: Threshold,
    pub t0_pr: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReversalReport {
    pub case: Case,
    pub delay: f64,
    pub dx_a: f64,
    pub dx_b: f64,
    pub rate: f64,
    pub wealth0: Option<f64>,
    pub t_a: f64,
    pub estimates: Vec<ReversalEstimate>,
    /// `|closed - numeric| / numeric` when both horizons exist.
    pub relative_difference: Option<f64>,
}

impl ReversalReport {
    pub fn render(&self) -> String {
        let mut out = format!("case {} ({})\n", self.case, describe_case(self.case));
        for e in &self.estimates {
            let label = match e.method {
                Method::Closed => "closed form",
                Method::Numeric => "numeric",
            };
            out += &format!("{label}: {}\n", describe_threshold(&e.threshold));
            if let Some(t0) = e.t0_pr {
                out += &format!("{label}: critical decision time t0 = {}\n", human(t0));
            }
        }
        if let Some(rel) = self.relative_difference {
            out += &format!("relative difference: {}\n", human(rel));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WealthReport {
    pub horizon: f64,
    pub delay: f64,
    pub dx_a: f64,
    pub dx_b: f64,
    pub rate: f64,
    /// A threshold exists iff `dx_b` exceeds this bound.
    pub dx_b_bound: f64,
    pub threshold: Threshold,
}

impl WealthReport {
    pub fn render(&self) -> String {
        let mut out = format!("wealth-effect bound on dx_b: {}\n", human(self.dx_b_bound));
        out += &format!("threshold: {}\n", describe_threshold(&self.threshold));
        if self.threshold.value().is_some() {
            out += "earlier payment preferred below the threshold, later payment above it\n";
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicyOutcome {
    pub policy: String,
    pub final_time: f64,
    pub final_wealth: f64,
    pub realized_growth: f64,
    pub units: RateUnits,
    pub earlier_choices: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationReport {
    pub case: Case,
    pub seed: u64,
    pub count: usize,
    pub wealth0: f64,
    pub outcomes: Vec<PolicyOutcome>,
}

impl SimulationReport {
    pub fn render(&self) -> String {
        let mut out = format!(
            "case {} ({}), seed {}, {} decisions, initial wealth {}\n",
            self.case,
            describe_case(self.case),
            self.seed,
            self.count,
            human(self.wealth0)
        );
        out += &format!(
            "{:<18} {:>14} {:>16} {:>9}\n",
            "policy", "realized growth", "final wealth", "earlier"
        );
        for o in &self.outcomes {
            out += &format!(
                "{:<18} {:>14} {:>16} {:>9}\n",
                o.policy,
                format!("{} {}", human(o.realized_growth), o.units.symbol()),
                human(o.final_wealth),
                o.earlier_choices
            );
        }
        out
    }
}
