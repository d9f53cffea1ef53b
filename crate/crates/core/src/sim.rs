//! Repeated-choice simulation.
//!
//! A decision maker faces a seeded stream of payment problems one after
//! another. Under the fixed time frame the next decision comes at the later
//! payment time whatever was chosen; under the adaptive frame it comes as
//! soon as the chosen payment arrives. Background dynamics run throughout,
//! and under multiplicative dynamics received payments compound from
//! receipt.

use std::fmt;
use std::io;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::growth::{prefer, DEFAULT_TOLERANCE};
use crate::model::{Alternative, Dynamics, GrowthRate, Preference, Problem, Specification, TimeFrame};
use crate::numfmt::{fmt_sig, MACHINE_DIGITS};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformRange {
    pub lo: f64,
    pub hi: f64,
}

impl UniformRange {
    pub fn new(lo: f64, hi: f64) -> Self {
        UniformRange { lo, hi }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        self.lo + (self.hi - self.lo) * rng.gen::<f64>()
    }

    fn validate_positive(&self, name: &str) -> Result<()> {
        if self.lo > 0.0 && self.hi >= self.lo && self.hi.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "{name} range must satisfy 0 < lo <= hi (got [{}, {}])",
                self.lo, self.hi
            )))
        }
    }
}

/// A seeded stream of payment problems. Draw `i` depends only on
/// `(seed, i)`.
///
/// The later payment is `dx_a·(1 + u)` with `u` drawn from `premium`, so it
/// always exceeds the earlier one. The lower end of `horizon` acts as the
/// floor below which horizons are never drawn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RippStream {
    pub seed: u64,
    pub count: usize,
    pub horizon: UniformRange,
    pub delay: UniformRange,
    pub earlier_amount: UniformRange,
    pub premium: UniformRange,
}

/// One drawn problem, before it is placed at a decision time and wealth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Draw {
    pub horizon: f64,
    pub delay: f64,
    pub dx_a: f64,
    pub dx_b: f64,
}

impl RippStream {
    pub fn validate(&self) -> Result<()> {
        self.horizon.validate_positive("horizon")?;
        self.delay.validate_positive("delay")?;
        self.earlier_amount.validate_positive("earlier_amount")?;
        self.premium.validate_positive("premium")?;
        Ok(())
    }

    pub fn draw(&self, index: u64) -> Draw {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let horizon = self.horizon.sample(&mut rng);
        let delay = self.delay.sample(&mut rng);
        let dx_a = self.earlier_amount.sample(&mut rng);
        let premium = self.premium.sample(&mut rng);
        Draw {
            horizon,
            delay,
            dx_a,
            dx_b: dx_a * (1.0 + premium),
        }
    }

    /// Draw `index` as a problem decided at `t0` with wealth `wealth`.
    pub fn problem(&self, index: u64, t0: f64, wealth: f64) -> Result<Problem> {
        let d = self.draw(index);
        Problem::new(
            t0,
            t0 + d.horizon,
            t0 + d.horizon + d.delay,
            d.dx_a,
            d.dx_b,
            wealth.max(0.0),
        )
    }
}

/// Rule for choosing between the two payments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum Policy {
    /// Picks the option with the higher growth rate under the true
    /// specification. Ties go to the earlier payment.
    GrowthOptimal,
    AlwaysEarlier,
    AlwaysLater,
    LargerPayment,
    /// Picks the earlier payment iff `dx_a >= dx_b·e^{-rate·D}`.
    ExponentialDiscounter {
        rate: f64,
    },
}

impl Policy {
    /// The baselines compared against `GrowthOptimal`, with the
    /// exponential discounter at `exp_rate`.
    pub fn all(exp_rate: f64) -> Vec<Policy> {
        vec![
            Policy::GrowthOptimal,
            Policy::AlwaysEarlier,
            Policy::AlwaysLater,
            Policy::LargerPayment,
            Policy::ExponentialDiscounter { rate: exp_rate },
        ]
    }

    pub fn choose(&self, spec: &Specification, problem: &Problem) -> Result<Alternative> {
        Ok(match *self {
            Policy::GrowthOptimal => match prefer(spec, problem, DEFAULT_TOLERANCE)?.preference {
                Preference::LaterPreferred => Alternative::Later,
                Preference::EarlierPreferred | Preference::Indifferent => Alternative::Earlier,
            },
            Policy::AlwaysEarlier => Alternative::Earlier,
            Policy::AlwaysLater => Alternative::Later,
            Policy::LargerPayment => {
                if problem.dx_a() > problem.dx_b() {
                    Alternative::Earlier
                } else {
                    Alternative::Later
                }
            }
            Policy::ExponentialDiscounter { rate } => {
                if problem.dx_a() >= problem.dx_b() * (-rate * problem.delay()).exp() {
                    Alternative::Earlier
                } else {
                    Alternative::Later
                }
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Policy::GrowthOptimal => "growth-optimal",
            Policy::AlwaysEarlier => "always-earlier",
            Policy::AlwaysLater => "always-later",
            Policy::LargerPayment => "larger-payment",
            Policy::ExponentialDiscounter { .. } => "exponential",
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::ExponentialDiscounter { rate } => write!(f, "exponential({rate})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for Policy {
    type Err = Error;

    /// Parses `growth-optimal`, `always-earlier`, `always-later`,
    /// `larger-payment` or `exponential:<rate>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "growth-optimal" => Ok(Policy::GrowthOptimal),
            "always-earlier" => Ok(Policy::AlwaysEarlier),
            "always-later" => Ok(Policy::AlwaysLater),
            "larger-payment" => Ok(Policy::LargerPayment),
            _ => {
                let rate = s
                    .strip_prefix("exponential:")
                    .and_then(|r| r.parse::<f64>().ok())
                    .filter(|r| r.is_finite())
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown policy '{s}'")))?;
                Ok(Policy::ExponentialDiscounter { rate })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Start,
    /// The chosen payment arrives.
    Payment,
    /// End of the wait for the later payment time after taking the earlier
    /// payment under the fixed frame.
    Idle,
}

impl EventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::Start => "start",
            EventKind::Payment => "payment",
            EventKind::Idle => "idle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub time: f64,
    pub wealth: f64,
    pub event: EventKind,
    pub choice: Option<Alternative>,
}

/// Wealth sampled at every event of a run. Each decision happens at the
/// time of the preceding sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    samples: Vec<Sample>,
}

impl Trajectory {
    /// Builds a trajectory, checking that times strictly increase.
    pub fn from_samples(samples: Vec<Sample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::DegenerateTrajectory);
        }
        if samples.windows(2).any(|w| !(w[1].time > w[0].time)) {
            return Err(Error::InvalidArgument("trajectory times must strictly increase".into()));
        }
        Ok(Trajectory { samples })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn start_time(&self) -> f64 {
        self.samples[0].time
    }

    pub fn initial_wealth(&self) -> f64 {
        self.samples[0].wealth
    }

    pub fn final_time(&self) -> f64 {
        self.samples[self.samples.len() - 1].time
    }

    pub fn final_wealth(&self) -> f64 {
        self.samples[self.samples.len() - 1].wealth
    }

    /// The choice made at each decision, in order.
    pub fn choices(&self) -> Vec<Alternative> {
        self.samples.iter().filter_map(|s| s.choice).collect()
    }

    /// Writes `time,wealth,event_type,chosen_option` rows with a header.
    pub fn write_csv<W: io::Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "time,wealth,event_type,chosen_option")?;
        for s in &self.samples {
            writeln!(
                out,
                "{},{},{},{}",
                fmt_sig(s.time, MACHINE_DIGITS),
                fmt_sig(s.wealth, MACHINE_DIGITS),
                s.event.as_str(),
                s.choice.map(|c| c.as_str()).unwrap_or("")
            )?;
        }
        Ok(())
    }
}

/// Runs `policy` over every problem in `stream`, starting at time zero.
///
/// Growth rates never depend on wealth under additive dynamics; there the
/// problems are built with wealth clamped at zero so negative balances (from
/// a negative `k`) do not invalidate them.
pub fn simulate(spec: &Specification, stream: &RippStream, policy: Policy, wealth0: f64) -> Result<Trajectory> {
    stream.validate()?;
    let multiplicative = matches!(spec.dynamics, Dynamics::Multiplicative { .. });
    if multiplicative && !(wealth0 > 0.0) {
        return Err(Error::WealthNonPositive(wealth0));
    }
    if !wealth0.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "wealth0 must be finite (got {wealth0})"
        )));
    }

    let mut samples = Vec::with_capacity(2 * stream.count + 1);
    samples.push(Sample {
        time: 0.0,
        wealth: wealth0,
        event: EventKind::Start,
        choice: None,
    });
    let (mut t, mut wealth) = (0.0, wealth0);

    for i in 0..stream.count {
        let problem = stream.problem(i as u64, t, wealth)?;
        let choice = policy.choose(spec, &problem)?;
        let (paid_at, amount) = match choice {
            Alternative::Earlier => (problem.t_a(), problem.dx_a()),
            Alternative::Later => (problem.t_b(), problem.dx_b()),
        };
        wealth = spec.dynamics.evolve(wealth, paid_at - t) + amount;
        t = paid_at;
        check_wealth(multiplicative, wealth)?;
        samples.push(Sample {
            time: t,
            wealth,
            event: EventKind::Payment,
            choice: Some(choice),
        });

        if spec.time_frame == TimeFrame::Fixed && t < problem.t_b() {
            wealth = spec.dynamics.evolve(wealth, problem.t_b() - t);
            t = problem.t_b();
            check_wealth(multiplicative, wealth)?;
            samples.push(Sample {
                time: t,
                wealth,
                event: EventKind::Idle,
                choice: None,
            });
        }
    }
    Trajectory::from_samples(samples)
}

fn check_wealth(multiplicative: bool, wealth: f64) -> Result<()> {
    if !wealth.is_finite() {
        return Err(Error::WealthNotFinite(wealth));
    }
    if multiplicative && !(wealth > 0.0) {
        return Err(Error::WealthNonPositive(wealth));
    }
    Ok(())
}

/// Growth rate realised over a whole trajectory, in the form matching the
/// dynamics.
pub fn realized_growth(trajectory: &Trajectory, dynamics: &Dynamics) -> Result<GrowthRate> {
    let elapsed = trajectory.final_time() - trajectory.start_time();
    if !(elapsed > 0.0) {
        return Err(Error::DegenerateTrajectory);
    }
    let (w0, w1) = (trajectory.initial_wealth(), trajectory.final_wealth());
    let value = match dynamics {
        Dynamics::Additive { .. } => (w1 - w0) / elapsed,
        Dynamics::Multiplicative { .. } => {
            if !(w0 > 0.0) {
                return Err(Error::WealthNonPositive(w0));
            }
            if !(w1 > 0.0) {
                return Err(Error::WealthNonPositive(w1));
            }
            (w1.ln() - w0.ln()) / elapsed
        }
    };
    Ok(GrowthRate::new(value, dynamics.units()))
}
