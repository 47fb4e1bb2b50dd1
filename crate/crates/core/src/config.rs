//! The single JSON document that drives a run or a sweep.

use serde::{Deserialize, Serialize};

use crate::baselines::BaselineConfig;
use crate::error::{Error, Result};
use crate::experiments::ExperimentConfig;
use crate::mp::SolverConfig;
use crate::scenario::ScenarioConfig;

/// Message-passing knobs that are not scenario parameters. The iteration
/// cap lives in the scenario section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverOptions {
    pub tolerance: f64,
    pub damping: f64,
    pub parallel: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        let d = SolverConfig::default();
        Self {
            tolerance: d.tolerance,
            damping: d.damping,
            parallel: d.parallel,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimConfig {
    pub scenario: ScenarioConfig,
    pub solver: SolverOptions,
    pub baselines: BaselineConfig,
    pub experiment: ExperimentConfig,
}

impl SimConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SimConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            max_iterations: self.scenario.max_iterations,
            tolerance: self.solver.tolerance,
            damping: self.solver.damping,
            parallel: self.solver.parallel,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        self.solver_config().validate()?;
        self.baselines.validate()?;
        self.experiment.validate()
    }

    /// Compact JSON with every default filled in, in declaration order.
    /// Two documents that parse to the same config give the same bytes.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        let mut cfg = self.clone();
        cfg.scenario.seed = seed;
        cfg
    }
}

impl std::str::FromStr for SimConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_json(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_all_defaults() {
        let cfg = SimConfig::from_json("{}").unwrap();
        assert_eq!(cfg, SimConfig::default());
        assert_eq!(cfg.solver_config(), SolverConfig::default());
    }

    #[test]
    fn canonical_form_ignores_layout_and_defaults() {
        let a = SimConfig::from_json(r#"{"scenario": {"num_vehicles": 40}}"#).unwrap();
        let b = SimConfig::from_json(
            r#"{ "baselines": {"ea_population": 50},
                 "scenario": {"seed": 0, "num_vehicles": 40} }"#,
        )
        .unwrap();
        assert_eq!(a.canonical_json(), b.canonical_json());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = SimConfig::from_json(r#"{"scenario": {"num_vehicle": 4}}"#).unwrap_err();
        assert!(err.to_string().contains("num_vehicle"), "{err}");
        assert!(SimConfig::from_json(r#"{"solvr": {}}"#).is_err());
    }

    #[test]
    fn invalid_values_name_the_field() {
        let err = SimConfig::from_json(r#"{"solver": {"damping": 1.5}}"#).unwrap_err();
        assert!(err.to_string().contains("damping"), "{err}");
    }
}
