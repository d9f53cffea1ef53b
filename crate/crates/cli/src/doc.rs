//! The JSON problem document accepted by `ripp evaluate`.

use std::fs;
use std::path::Path;

use ripp_core::{Dynamics, Problem, RootConfig, Specification, TimeFrame};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DynamicsKind {
    Additive,
    Multiplicative,
}

/// `{"type": "additive" | "multiplicative", "rate": ...}`. The rate is `k`
/// for additive dynamics and `r` for multiplicative ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DynamicsDoc {
    #[serde(rename = "type")]
    pub kind: DynamicsKind,
    pub rate: f64,
}

impl DynamicsDoc {
    pub fn to_dynamics(self) -> Dynamics {
        match self.kind {
            DynamicsKind::Additive => Dynamics::Additive { k: self.rate },
            DynamicsKind::Multiplicative => Dynamics::Multiplicative { r: self.rate },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub t0: f64,
    pub t_a: f64,
    pub t_b: f64,
    pub dx_a: f64,
    pub dx_b: f64,
    pub wealth0: f64,
    pub dynamics: DynamicsDoc,
    pub time_frame: TimeFrame,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<RootConfig>,
}

impl ProblemDocument {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("problem document: {e}")))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn problem(&self) -> CliResult<Problem> {
        Ok(Problem::new(
            self.t0,
            self.t_a,
            self.t_b,
            self.dx_a,
            self.dx_b,
            self.wealth0,
        )?)
    }

    pub fn specification(&self) -> Specification {
        Specification::new(self.dynamics.to_dynamics(), self.time_frame)
    }

    pub fn solver_config(&self) -> CliResult<RootConfig> {
        let cfg = self.solver.unwrap_or_default();
        cfg.validate()?;
        Ok(cfg)
    }
}
