//! Self-checks packaged for the command line and the acceptance tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::solve_es;
use crate::delay::{
    build_delay_table, expected_delay_oracle, objective_value, queue_multiplier, DelayTable,
};
use crate::error::Result;
use crate::mp::{self, contraction_probe, SolverConfig};
use crate::scenario::{generate_scenario, CountRange, ScenarioConfig, ScenarioInstance};

/// Largest task count and CPU count covered by the oracle suite.
pub const ORACLE_GRID: (usize, usize) = (8, 4);
pub const MATCH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub cases: usize,
    pub max_abs_error: f64,
    /// Worst `(n, k)` cell.
    pub worst: (usize, usize),
}

impl OracleReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_abs_error < tol
    }
}

/// Closed-form total delay against the permutation average for every
/// `n <= 8`, `k <= 4` with `samples` random task-time vectors per cell.
pub fn oracle_suite(samples: usize, seed: u64) -> Result<OracleReport> {
    let (nmax, kmax) = ORACLE_GRID;
    let cells: Vec<(usize, usize)> = (1..=nmax)
        .flat_map(|n| (1..=kmax).map(move |k| (n, k)))
        .collect();
    let errs: Vec<f64> = cells
        .par_iter()
        .map(|&(n, k)| -> Result<f64> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(((n as u64) << 8) | k as u64);
            let g: f64 = queue_multiplier(n, k)?;
            let mut worst = 0.0f64;
            for _ in 0..samples {
                let times: Vec<f64> = (0..n).map(|_| rng.random_range(0.01..1.0)).collect();
                let closed = g * times.iter().sum::<f64>();
                worst = worst.max((closed - expected_delay_oracle(&times, k)?).abs());
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    let (idx, max_abs_error) = errs
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0), |acc, (i, e)| if e > acc.1 { (i, e) } else { acc });
    Ok(OracleReport {
        cases: cells.len() * samples,
        max_abs_error,
        worst: cells[idx],
    })
}

/// Random small scenario: `V <= 8`, `A <= 3`, `k_a <= 3`, `N_a <= 8`.
/// The road shrinks with the RSU count so every vehicle has a usable link.
pub fn small_instance_config(seed: u64) -> ScenarioConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0x5a11);
    let num_rsus = rng.random_range(1..=3usize);
    let kmax = rng.random_range(1..=3usize);
    ScenarioConfig {
        num_rsus,
        num_vehicles: rng.random_range(1..=8),
        cpus_per_rsu: CountRange::new(1, kmax),
        capacity: rng.random_range(1..=8),
        road_length_m: 250.0 * (num_rsus as f64 + 1.0),
        seed,
        ..Default::default()
    }
}

/// A vehicle placed differently by MP and ES.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Disagreement {
    pub vehicle: usize,
    pub mp_server: usize,
    pub es_server: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalityCase {
    pub seed: u64,
    pub mp_objective: f64,
    pub es_objective: f64,
    pub matched: bool,
    pub converged: bool,
    pub iterations: usize,
    /// Filled only on mismatch, for replay.
    pub instance: Option<ScenarioInstance>,
    pub disagreements: Vec<Disagreement>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalityReport {
    pub cases: Vec<OptimalityCase>,
}

impl OptimalityReport {
    pub fn matches(&self) -> usize {
        self.cases.iter().filter(|c| c.matched).count()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &OptimalityCase> {
        self.cases.iter().filter(|c| !c.matched)
    }
}

fn optimality_case(seed: u64, solver: &SolverConfig) -> Result<OptimalityCase> {
    let instance = generate_scenario(&small_instance_config(seed))?;
    let table: DelayTable<f64> = build_delay_table(&instance)?;
    let (mp_asg, trace) = mp::run(&table, solver)?;
    let es_asg = solve_es(&table, u64::MAX)?;
    let mp_objective = objective_value(&table, &mp_asg)?;
    let es_objective = objective_value(&table, &es_asg)?;
    let matched = (mp_objective - es_objective).abs() <= MATCH_TOL;
    let disagreements = if matched {
        Vec::new()
    } else {
        mp_asg
            .choice
            .iter()
            .zip(&es_asg.choice)
            .enumerate()
            .filter(|(_, (w, c))| w != c)
            .map(|(vehicle, (&mp_server, &es_server))| Disagreement {
                vehicle,
                mp_server,
                es_server,
            })
            .collect()
    };
    Ok(OptimalityCase {
        seed,
        mp_objective,
        es_objective,
        matched,
        converged: trace.converged,
        iterations: trace.iterations,
        instance: (!matched).then_some(instance),
        disagreements,
    })
}

/// MP against exhaustive search on `trials` random small instances.
pub fn optimality_suite(
    trials: usize,
    first_seed: u64,
    solver: &SolverConfig,
) -> Result<OptimalityReport> {
    let cases = (0..trials as u64)
        .into_par_iter()
        .map(|k| optimality_case(first_seed.wrapping_add(k), solver))
        .collect::<Result<_>>()?;
    Ok(OptimalityReport { cases })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractionInstance {
    pub seed: u64,
    pub pairs: usize,
    pub both_converged: usize,
    /// Converged pairs that ended on different assignments.
    pub inconsistent: usize,
    pub max_ratio: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractionReport {
    pub instances: Vec<ContractionInstance>,
}

impl ContractionReport {
    pub fn consistent(&self) -> bool {
        self.instances.iter().all(|i| i.inconsistent == 0)
    }

    pub fn ratios_finite(&self) -> bool {
        self.instances
            .iter()
            .all(|i| i.max_ratio.iter().all(|r| r.is_finite()))
    }
}

/// Scenario used by the contraction suite: three RSUs and twenty vehicles.
pub fn contraction_instance_config(seed: u64) -> ScenarioConfig {
    ScenarioConfig {
        num_rsus: 3,
        num_vehicles: 20,
        seed,
        ..Default::default()
    }
}

/// Paired random initializations on `instances` seeded scenarios.
pub fn contraction_suite(
    instances: usize,
    pairs: usize,
    first_seed: u64,
    solver: &SolverConfig,
) -> Result<ContractionReport> {
    let instances = (0..instances as u64)
        .into_par_iter()
        .map(|k| -> Result<ContractionInstance> {
            let seed = first_seed.wrapping_add(k);
            let instance = generate_scenario(&contraction_instance_config(seed))?;
            let table: DelayTable<f64> = build_delay_table(&instance)?;
            let report = contraction_probe(&table, solver, pairs, seed)?;
            Ok(ContractionInstance {
                seed,
                pairs,
                both_converged: report.trials.iter().filter(|t| t.both_converged()).count(),
                inconsistent: report
                    .trials
                    .iter()
                    .filter(|t| t.both_converged() && !t.same_assignment())
                    .count(),
                max_ratio: report.max_ratio,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ContractionReport { instances })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_configs_stay_in_bounds() {
        for seed in 0..200 {
            let c = small_instance_config(seed);
            assert!((1..=8).contains(&c.num_vehicles));
            assert!((1..=3).contains(&c.num_rsus));
            assert!(c.cpus_per_rsu.max <= 3 && c.capacity <= 8);
            c.validate().unwrap();
        }
    }

    #[test]
    fn tiny_oracle_run() {
        let rep = oracle_suite(2, 1).unwrap();
        assert_eq!(rep.cases, 64);
        assert!(rep.passed(1e-9), "{rep:?}");
    }

    #[test]
    fn optimality_cases_are_reproducible() {
        let cfg = SolverConfig::default();
        let a = optimality_suite(5, 10, &cfg).unwrap();
        assert_eq!(a, optimality_suite(5, 10, &cfg).unwrap());
        for case in a.mismatches() {
            assert!(case.instance.is_some() && !case.disagreements.is_empty());
        }
    }
}
