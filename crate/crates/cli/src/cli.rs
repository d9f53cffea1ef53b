use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ripp_core::{RootConfig, TimeFrame};

use crate::doc::DynamicsKind;
use crate::error::CliResult;

/// Growth-rate decisions between an earlier, smaller payment and a later,
/// larger one.
#[derive(Debug, Parser)]
#[command(name = "ripp", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare the two payments of a single problem.
    Evaluate(EvaluateArgs),
    /// Tabulate a discount function over a range of delays.
    Curve(CurveArgs),
    /// Horizon (and decision time) at which the preference reverses.
    Reversal(ReversalArgs),
    /// Initial wealth at which the case-D preference reverses.
    WealthThreshold(WealthArgs),
    /// Run a stream of decisions under one or more policies.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Frame {
    Fixed,
    Adaptive,
}

impl From<Frame> for TimeFrame {
    fn from(f: Frame) -> Self {
        match f {
            Frame::Fixed => TimeFrame::Fixed,
            Frame::Adaptive => TimeFrame::Adaptive,
        }
    }
}

/// Overrides for the root finder; unset fields keep their defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct SolverArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub abs_tol: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
}

impl SolverArgs {
    pub fn apply(&self, mut cfg: RootConfig) -> CliResult<RootConfig> {
        if let Some(v) = self.abs_tol {
            cfg.abs_tol = v;
        }
        if let Some(v) = self.rel_tol {
            cfg.rel_tol = v;
        }
        if let Some(v) = self.max_iter {
            cfg.max_iter = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// JSON problem document. Flags given alongside it override its fields.
    pub doc: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub t0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub dx_a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub dx_b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub wealth0: Option<f64>,
    #[arg(long, value_enum)]
    pub dynamics: Option<DynamicsKind>,
    /// `k` for additive dynamics, `r` for multiplicative ones.
    #[arg(long, allow_negative_numbers = true)]
    pub rate: Option<f64>,
    #[arg(long, value_enum)]
    pub frame: Option<Frame>,
    /// Half-width of the indifference band on `g_a - g_b`.
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveForm {
    /// Exponential, `e^{-rD}`.
    B,
    /// Hyperbolic, `1/(1 + D/H)`.
    C,
    /// Small-payment approximation, `e^{-rD}/(1 + D/H)`.
    DHybrid,
    /// Exact case-D indifference ratio for the given later payment.
    DNumeric,
    /// Hybrid, hyperbolic and exponential side by side.
    All,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, value_enum)]
    pub form: CurveForm,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub d_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 10.0)]
    pub d_max: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.1)]
    pub step: f64,
    /// Horizon `H` (forms c, d-hybrid, d-numeric; all defaults to 0.65).
    #[arg(long, allow_negative_numbers = true)]
    pub horizon: Option<f64>,
    /// Background rate `r` (forms b, d-hybrid, d-numeric; all defaults to 0.4).
    #[arg(long, allow_negative_numbers = true)]
    pub rate: Option<f64>,
    /// Initial wealth (form d-numeric).
    #[arg(long, allow_negative_numbers = true)]
    pub wealth0: Option<f64>,
    /// Later payment (form d-numeric).
    #[arg(long, allow_negative_numbers = true)]
    pub dx_b: Option<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AdaptiveCase {
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Closed,
    Numeric,
    Both,
}

#[derive(Debug, Args)]
pub struct ReversalArgs {
    #[arg(long, value_enum)]
    pub case: AdaptiveCase,
    /// Defaults to `both` in case D when `--wealth0` is given, `closed`
    /// otherwise.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, allow_negative_numbers = true)]
    pub delay: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub dx_a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub dx_b: f64,
    /// `k` in case C, `r` in case D.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub rate: f64,
    /// Initial wealth; required for numeric results and case-D sweeps.
    #[arg(long, allow_negative_numbers = true)]
    pub wealth0: Option<f64>,
    /// Time of the earlier payment, used for the critical decision time.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub t_a: f64,
    /// Tabulate the preference over a log-spaced range of horizons.
    #[arg(long)]
    pub sweep: bool,
    #[arg(long, allow_negative_numbers = true)]
    pub h_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub h_max: Option<f64>,
    #[arg(long, default_value_t = 41)]
    pub points: usize,
    /// Write the sweep CSV here; without it the CSV goes to standard
    /// output and the report to standard error.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct WealthArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub horizon: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub delay: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub dx_a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub dx_b: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub rate: f64,
    /// Tabulate `g_a - g_b` over a range of initial wealth.
    #[arg(long)]
    pub sweep: bool,
    #[arg(long, allow_negative_numbers = true, default_value_t = 100.0)]
    pub x_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 10000.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    /// Space the sweep logarithmically instead of linearly.
    #[arg(long)]
    pub log: bool,
    /// Write the sweep CSV here; without it the CSV goes to standard
    /// output and the report to standard error.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub dynamics: DynamicsKind,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub rate: f64,
    #[arg(long, value_enum)]
    pub frame: Frame,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1000.0)]
    pub wealth0: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.5)]
    pub horizon_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.0)]
    pub horizon_max: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.5)]
    pub delay_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.0)]
    pub delay_max: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 50.0)]
    pub dx_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 150.0)]
    pub dx_max: f64,
    /// Relative premium of the later payment: `dx_b = dx_a (1 + u)`.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.1)]
    pub premium_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 3.0)]
    pub premium_max: f64,
    /// growth-optimal, always-earlier, always-later, larger-payment or
    /// exponential:<rate>.
    #[arg(long, default_value = "growth-optimal")]
    pub policy: String,
    /// Run every baseline policy and print a comparison table.
    #[arg(long)]
    pub compare: bool,
    /// Rate of the exponential-discounter baseline in `--compare`.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.05)]
    pub exp_rate: f64,
    /// Write the trajectory CSV of `--policy` here. Without it (and
    /// without `--compare`) the CSV goes to standard output and the
    /// summary to standard error.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}
