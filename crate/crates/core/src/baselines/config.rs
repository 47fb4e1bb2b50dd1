use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hyperparameters for the comparison algorithms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BaselineConfig {
    pub gt_max_rounds: usize,
    pub ea_population: usize,
    /// Zero is allowed and returns the best of the initial population.
    pub ea_generations: usize,
    /// Per-gene mutation probability; `None` means `1/V`.
    pub ea_mutation_prob: Option<f64>,
    pub pd_max_iterations: usize,
    pub pd_step_size: f64,
    /// Largest `(A+1)^V` the exhaustive search will enumerate.
    pub es_size_cap: u64,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        Self {
            gt_max_rounds: 100,
            ea_population: 50,
            ea_generations: 200,
            ea_mutation_prob: None,
            pd_max_iterations: 200,
            pd_step_size: 0.1,
            es_size_cap: 50_000_000,
        }
    }
}

impl BaselineConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("gt_max_rounds", self.gt_max_rounds),
            ("ea_population", self.ea_population),
            ("pd_max_iterations", self.pd_max_iterations),
        ];
        for (field, v) in positive {
            if v == 0 {
                return Err(Error::config(field, "must be at least 1"));
            }
        }
        if self.es_size_cap == 0 {
            return Err(Error::config("es_size_cap", "must be at least 1"));
        }
        if let Some(p) = self.ea_mutation_prob {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::config(
                    "ea_mutation_prob",
                    format!("{p} is outside (0, 1)"),
                ));
            }
        }
        if !(self.pd_step_size.is_finite() && self.pd_step_size > 0.0) {
            return Err(Error::config("pd_step_size", "must be positive and finite"));
        }
        Ok(())
    }

    pub fn mutation_prob(&self, num_vehicles: usize) -> f64 {
        self.ea_mutation_prob
            .unwrap_or(1.0 / num_vehicles.max(1) as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        BaselineConfig::default().validate().unwrap();
        assert_eq!(BaselineConfig::default().mutation_prob(50), 0.02);
    }

    #[test]
    fn bad_fields_are_named() {
        let cfg = BaselineConfig {
            ea_mutation_prob: Some(1.0),
            ..Default::default()
        };
        assert!(cfg
            .validate()
            .unwrap_err()
            .to_string()
            .contains("ea_mutation_prob"));
        let cfg = BaselineConfig {
            gt_max_rounds: 0,
            ..Default::default()
        };
        assert!(cfg
            .validate()
            .unwrap_err()
            .to_string()
            .contains("gt_max_rounds"));
    }
}
