//! Empirical contraction measurement of the message update map.
//!
//! Two trajectories start from different alpha matrices on the same instance
//! and are stepped in lockstep; each step records
//! `||T(y) - T(z)||_inf / ||y - z||_inf` over the alpha messages.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::messages::{rho_phase, MessageState};
use super::solver::{extract, step, SolverConfig};
use crate::delay::DelayTable;
use crate::error::Result;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeTrial {
    /// Distance ratio per iteration; `0` once the trajectories coincide.
    pub ratios: Vec<f64>,
    pub distances: Vec<f64>,
    pub converged: [bool; 2],
    pub choices: [Vec<usize>; 2],
}

impl ProbeTrial {
    pub fn same_assignment(&self) -> bool {
        self.choices[0] == self.choices[1]
    }

    pub fn both_converged(&self) -> bool {
        self.converged[0] && self.converged[1]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub trials: Vec<ProbeTrial>,
    /// Largest ratio over trials, per iteration.
    pub max_ratio: Vec<f64>,
}

impl ProbeReport {
    /// True when every pair that converged on both sides agrees on the assignment.
    pub fn consistent(&self) -> bool {
        self.trials
            .iter()
            .filter(|t| t.both_converged())
            .all(ProbeTrial::same_assignment)
    }
}

fn state_from_alpha<T: Scalar>(num_servers: usize, alpha: Vec<T>) -> MessageState<T> {
    let rho = rho_phase(&alpha, num_servers);
    MessageState::from_matrices(num_servers, alpha, rho).expect("shape checked by caller")
}

/// Steps two trajectories from the given alpha matrices in lockstep.
pub fn probe_pair<T: Scalar>(
    table: &DelayTable<T>,
    config: &SolverConfig,
    alpha_y: Vec<T>,
    alpha_z: Vec<T>,
) -> Result<ProbeTrial> {
    config.validate()?;
    let s = table.num_servers();
    let mut y = state_from_alpha(s, alpha_y);
    let mut z = state_from_alpha(s, alpha_z);
    let tol = T::lit(config.tolerance);
    let mut converged = [false; 2];
    let mut ratios = Vec::with_capacity(config.max_iterations);
    let mut distances = Vec::with_capacity(config.max_iterations);
    let mut before = sup_distance(&y.alpha, &z.alpha);
    for _ in 0..config.max_iterations {
        if !converged[0] {
            converged[0] = step(table, &mut y, config).0 < tol;
        }
        if !converged[1] {
            converged[1] = step(table, &mut z, config).0 < tol;
        }
        let after = sup_distance(&y.alpha, &z.alpha);
        ratios.push(if before > 0.0 { after / before } else { 0.0 });
        distances.push(after);
        before = after;
        if converged[0] && converged[1] {
            break;
        }
    }
    let choices = [extract(table, &y).0.choice, extract(table, &z).0.choice];
    Ok(ProbeTrial {
        ratios,
        distances,
        converged,
        choices,
    })
}

fn sup_distance<T: Scalar>(a: &[T], b: &[T]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y).abs().as_f64())
        .fold(0.0, f64::max)
}

/// Random alpha matrix: local column fixed at the clamped local delay, RSU
/// columns uniform in `[-t_max_i, t_max_i]`.
pub fn random_alpha<T: Scalar>(table: &DelayTable<T>, rng: &mut impl Rng) -> Vec<T> {
    let s = table.num_servers();
    let mut alpha = Vec::with_capacity(table.num_vehicles() * s);
    for i in 0..table.num_vehicles() {
        alpha.push(table.clamped(i, 0, 1));
        let span = table.deadline(i).as_f64().min(1e3);
        for _ in 1..s {
            alpha.push(T::lit(rng.random_range(-span..=span)));
        }
    }
    alpha
}

/// Runs `trials` pairs of trajectories from independent random initializations.
pub fn contraction_probe<T: Scalar>(
    table: &DelayTable<T>,
    config: &SolverConfig,
    trials: usize,
    seed: u64,
) -> Result<ProbeReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let y = random_alpha(table, &mut rng);
        let z = random_alpha(table, &mut rng);
        out.push(probe_pair(table, config, y, z)?);
    }
    let len = out.iter().map(|t| t.ratios.len()).max().unwrap_or(0);
    let max_ratio = (0..len)
        .map(|t| {
            out.iter()
                .filter_map(|trial| trial.ratios.get(t))
                .copied()
                .fold(0.0, f64::max)
        })
        .collect();
    Ok(ProbeReport {
        trials: out,
        max_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delay::build_delay_table;
    use crate::scenario::{generate_scenario, ScenarioConfig};

    fn table(seed: u64) -> DelayTable<f64> {
        let cfg = ScenarioConfig {
            num_vehicles: 12,
            num_rsus: 3,
            seed,
            ..Default::default()
        };
        build_delay_table(&generate_scenario(&cfg).unwrap()).unwrap()
    }

    #[test]
    fn identical_starts_give_zero_ratio() {
        let t = table(1);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let y = random_alpha(&t, &mut rng);
        let trial = probe_pair(&t, &SolverConfig::default(), y.clone(), y).unwrap();
        assert!(trial.ratios.iter().all(|&r| r == 0.0));
        assert!(trial.same_assignment());
    }

    #[test]
    fn one_entry_perturbation_stays_finite() {
        let t = table(2);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let y = random_alpha(&t, &mut rng);
        let mut z = y.clone();
        z[1] += 0.05;
        let cfg = SolverConfig {
            max_iterations: 50,
            ..Default::default()
        };
        let trial = probe_pair(&t, &cfg, y, z).unwrap();
        assert!(trial.ratios.iter().all(|r| r.is_finite()));
        if trial.both_converged() {
            assert!(trial.same_assignment());
        }
    }

    #[test]
    fn report_aggregates_per_iteration_maxima() {
        let t = table(3);
        let cfg = SolverConfig {
            max_iterations: 30,
            ..Default::default()
        };
        let report = contraction_probe(&t, &cfg, 4, 5).unwrap();
        assert_eq!(report.trials.len(), 4);
        assert!(report.max_ratio.iter().all(|r| r.is_finite()));
    }
}
