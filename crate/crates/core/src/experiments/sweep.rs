use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::{mean_local_delay, outage_probability, overload_ratio};
use crate::algorithms::{solve, Algorithm, Problem};
use crate::config::SimConfig;
use crate::delay::{build_delay_table, objective_value, DelayTable};
use crate::error::{Error, Result};
use crate::scenario::{generate_scenario, CountRange};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Vehicles,
    Cpus,
    Tmax,
    Capacity,
    Convergence,
    Overload,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::Vehicles,
        ExperimentKind::Cpus,
        ExperimentKind::Tmax,
        ExperimentKind::Capacity,
        ExperimentKind::Convergence,
        ExperimentKind::Overload,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Vehicles => "vehicles",
            ExperimentKind::Cpus => "cpus",
            ExperimentKind::Tmax => "tmax",
            ExperimentKind::Capacity => "capacity",
            ExperimentKind::Convergence => "convergence",
            ExperimentKind::Overload => "overload",
        }
    }

    /// Column name of the swept parameter.
    pub fn x_label(self) -> &'static str {
        match self {
            ExperimentKind::Vehicles | ExperimentKind::Convergence | ExperimentKind::Overload => {
                "num_vehicles"
            }
            ExperimentKind::Cpus => "mean_cpus",
            ExperimentKind::Tmax => "t_max_s",
            ExperimentKind::Capacity => "capacity",
        }
    }

    pub fn default_grid(self) -> Vec<f64> {
        match self {
            ExperimentKind::Vehicles => (1..=10).map(|k| 10.0 * k as f64).collect(),
            ExperimentKind::Cpus => vec![2.0, 4.0, 6.0, 8.0, 10.0],
            ExperimentKind::Tmax => (2..=10).map(|k| 0.1 * k as f64).collect(),
            ExperimentKind::Capacity => vec![4.0, 8.0, 12.0, 16.0, 20.0],
            ExperimentKind::Convergence => vec![20.0, 40.0, 60.0, 80.0, 100.0],
            ExperimentKind::Overload => (2..=8).map(|k| 10.0 * k as f64).collect(),
        }
    }

    pub fn default_algorithms(self) -> Vec<Algorithm> {
        match self {
            ExperimentKind::Convergence => vec![Algorithm::Mp],
            _ => Algorithm::SCALABLE.to_vec(),
        }
    }

    /// Writes grid value `x` into the config.
    pub fn apply(self, config: &mut SimConfig, x: f64) -> Result<()> {
        let count = |field: &str| -> Result<usize> {
            if x >= 1.0 && x.fract() == 0.0 && x <= u32::MAX as f64 {
                Ok(x as usize)
            } else {
                Err(Error::config(
                    field,
                    format!("grid value {x} is not a positive integer"),
                ))
            }
        };
        let s = &mut config.scenario;
        match self {
            ExperimentKind::Vehicles | ExperimentKind::Convergence | ExperimentKind::Overload => {
                s.num_vehicles = count("num_vehicles")?;
            }
            ExperimentKind::Cpus => {
                // Same +-2 spread as the default 4..8 range, kept at least one CPU.
                let m = count("cpus_per_rsu")?;
                let half = 2.min(m - 1);
                s.cpus_per_rsu = CountRange::new(m - half, m + half);
            }
            ExperimentKind::Tmax => s.t_max_s = x,
            ExperimentKind::Capacity => s.capacity = count("capacity")?,
        }
        config.validate()
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName {
                kind: "experiment",
                name: s.to_string(),
                valid: ExperimentKind::ALL.map(ExperimentKind::name).join(", "),
            })
    }
}

/// Sweep settings in the config document. Unset fields take per-experiment defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub grid: Option<Vec<f64>>,
    pub algorithms: Option<Vec<Algorithm>>,
    /// Replications per grid point; seeds are `scenario.seed + 0..seeds`.
    pub seeds: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            grid: None,
            algorithms: None,
            seeds: 20,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.seeds == 0 {
            return Err(Error::config("experiment.seeds", "must be at least 1"));
        }
        if matches!(&self.grid, Some(g) if g.is_empty()) {
            return Err(Error::config("experiment.grid", "must not be empty"));
        }
        if matches!(&self.algorithms, Some(a) if a.is_empty()) {
            return Err(Error::config("experiment.algorithms", "must not be empty"));
        }
        Ok(())
    }
}

/// One algorithm on one (grid point, seed) instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub x: f64,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub objective: f64,
    /// Mean clamped delay.
    pub mean_delay: f64,
    pub mean_raw_delay: f64,
    /// Mean clamped delay of the all-local assignment on the same instance.
    pub local_mean_delay: f64,
    pub overload_ratio: f64,
    pub outage: f64,
    pub iterations: usize,
    pub converged: bool,
    pub repairs: usize,
    pub over_assignment: usize,
}

impl RunRecord {
    pub const CSV_HEADER: &'static str =
        "x,seed,algorithm,objective,mean_delay,mean_raw_delay,local_mean_delay,\
overload_ratio,outage,iterations,converged,repairs,over_assignment";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.x,
            self.seed,
            self.algorithm,
            self.objective,
            self.mean_delay,
            self.mean_raw_delay,
            self.local_mean_delay,
            self.overload_ratio,
            self.outage,
            self.iterations,
            self.converged,
            self.repairs,
            self.over_assignment
        )
    }

    fn metric(&self, name: &str) -> f64 {
        match name {
            "mean_delay" => self.mean_delay,
            "mean_raw_delay" => self.mean_raw_delay,
            "local_mean_delay" => self.local_mean_delay,
            "overload_ratio" => self.overload_ratio,
            "outage" => self.outage,
            "iterations" => self.iterations as f64,
            "repairs" => self.repairs as f64,
            _ => unreachable!("unknown metric {name}"),
        }
    }
}

/// Metrics aggregated into [`MetricSeries`].
pub const METRICS: [&str; 7] = [
    "mean_delay",
    "mean_raw_delay",
    "local_mean_delay",
    "overload_ratio",
    "outage",
    "iterations",
    "repairs",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSeries {
    pub algorithm: Algorithm,
    pub mean: Vec<f64>,
    /// Sample standard deviation; zero with a single seed.
    pub std: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSeries {
    pub metric: String,
    pub x_values: Vec<f64>,
    pub seeds: Vec<u64>,
    pub series: Vec<AlgorithmSeries>,
}

impl MetricSeries {
    pub fn get(&self, algorithm: Algorithm) -> Option<&AlgorithmSeries> {
        self.series.iter().find(|s| s.algorithm == algorithm)
    }
}

/// MP message trajectory of one convergence run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub x: f64,
    pub seed: u64,
    pub objective: Vec<f64>,
    pub max_delta: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: ExperimentKind,
    pub x_label: String,
    pub config: SimConfig,
    pub metrics: Vec<MetricSeries>,
    pub records: Vec<RunRecord>,
    pub trajectories: Vec<Trajectory>,
}

impl ExperimentReport {
    pub fn metric(&self, name: &str) -> Option<&MetricSeries> {
        self.metrics.iter().find(|m| m.metric == name)
    }

    /// `metric,algorithm,<x_label>,mean,std,seeds`
    pub fn metrics_csv(&self) -> String {
        let mut out = format!("metric,algorithm,{},mean,std,seeds\n", self.x_label);
        for m in &self.metrics {
            for s in &m.series {
                for (k, x) in m.x_values.iter().enumerate() {
                    out.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        m.metric,
                        s.algorithm,
                        x,
                        s.mean[k],
                        s.std[k],
                        m.seeds.len()
                    ));
                }
            }
        }
        out
    }

    pub fn records_csv(&self) -> String {
        let mut out = String::from(RunRecord::CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }

    /// `x,seed,iteration,objective,max_delta`, iterations counted from 1.
    pub fn trajectories_csv(&self) -> String {
        let mut out = String::from("x,seed,iteration,objective,max_delta\n");
        for t in &self.trajectories {
            for (k, (o, d)) in t.objective.iter().zip(&t.max_delta).enumerate() {
                out.push_str(&format!("{},{},{},{},{}\n", t.x, t.seed, k + 1, o, d));
            }
        }
        out
    }
}

fn run_point(
    kind: ExperimentKind,
    base: &SimConfig,
    algorithms: &[Algorithm],
    x: f64,
    seed: u64,
) -> Result<(Vec<RunRecord>, Option<Trajectory>)> {
    let mut cfg = base.with_seed(seed);
    kind.apply(&mut cfg, x)?;
    let instance = generate_scenario(&cfg.scenario)?;
    let table: DelayTable<f64> = build_delay_table(&instance)?;
    let solver = cfg.solver_config();
    let problem = Problem {
        table: &table,
        instance: Some(&instance),
        solver: &solver,
        baselines: &cfg.baselines,
        seed,
    };
    let v = table.num_vehicles() as f64;
    let local_mean_delay = mean_local_delay(&table);
    let mut records = Vec::with_capacity(algorithms.len());
    let mut trajectory = None;
    for &algorithm in algorithms {
        let sol = solve(algorithm, &problem)?;
        let asg = &sol.assignment;
        let objective = objective_value(&table, asg)?;
        let raw: f64 = table.realized_raw(asg).iter().sum();
        if kind == ExperimentKind::Convergence && algorithm == Algorithm::Mp {
            if let Some(trace) = &sol.info.trace {
                trajectory = Some(Trajectory {
                    x,
                    seed,
                    objective: trace.objective.clone(),
                    max_delta: trace.max_delta.clone(),
                });
            }
        }
        records.push(RunRecord {
            x,
            seed,
            algorithm,
            objective,
            mean_delay: objective / v,
            mean_raw_delay: raw / v,
            local_mean_delay,
            overload_ratio: overload_ratio(&table, asg),
            outage: outage_probability(&table, asg),
            iterations: sol.info.iterations,
            converged: sol.info.converged,
            repairs: sol.info.repairs,
            over_assignment: sol.info.over_assignment,
        });
    }
    Ok((records, trajectory))
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Runs every algorithm on every (grid point, seed) instance and aggregates
/// mean and standard deviation per metric.
///
/// Instances run in parallel; records are ordered by grid point, then seed,
/// then algorithm, whatever the completion order.
pub fn sweep(kind: ExperimentKind, base: &SimConfig) -> Result<ExperimentReport> {
    sweep_with_progress(kind, base, |_, _| {})
}

/// [`sweep`] with a callback receiving `(finished, total)` instance counts.
pub fn sweep_with_progress(
    kind: ExperimentKind,
    base: &SimConfig,
    progress: impl Fn(usize, usize) + Sync,
) -> Result<ExperimentReport> {
    base.validate()?;
    let grid = base
        .experiment
        .grid
        .clone()
        .unwrap_or_else(|| kind.default_grid());
    let algorithms = base
        .experiment
        .algorithms
        .clone()
        .unwrap_or_else(|| kind.default_algorithms());
    let seeds: Vec<u64> = (0..base.experiment.seeds as u64)
        .map(|s| base.scenario.seed.wrapping_add(s))
        .collect();

    let points: Vec<(f64, u64)> = grid
        .iter()
        .flat_map(|&x| seeds.iter().map(move |&s| (x, s)))
        .collect();
    let done = AtomicUsize::new(0);
    let results: Vec<(Vec<RunRecord>, Option<Trajectory>)> = points
        .par_iter()
        .map(|&(x, seed)| {
            let out = run_point(kind, base, &algorithms, x, seed);
            progress(done.fetch_add(1, Ordering::Relaxed) + 1, points.len());
            out
        })
        .collect::<Result<_>>()?;

    let mut records = Vec::with_capacity(points.len() * algorithms.len());
    let mut trajectories = Vec::new();
    for (r, t) in results {
        records.extend(r);
        trajectories.extend(t);
    }

    let per_point = seeds.len() * algorithms.len();
    let metrics = METRICS
        .iter()
        .map(|&metric| {
            let series = algorithms
                .iter()
                .enumerate()
                .map(|(ai, &algorithm)| {
                    let (mean, std) = (0..grid.len())
                        .map(|g| {
                            let vals: Vec<f64> = (0..seeds.len())
                                .map(|s| {
                                    records[g * per_point + s * algorithms.len() + ai]
                                        .metric(metric)
                                })
                                .collect();
                            mean_std(&vals)
                        })
                        .unzip();
                    AlgorithmSeries {
                        algorithm,
                        mean,
                        std,
                    }
                })
                .collect();
            MetricSeries {
                metric: metric.to_string(),
                x_values: grid.clone(),
                seeds: seeds.clone(),
                series,
            }
        })
        .collect();

    Ok(ExperimentReport {
        experiment: kind,
        x_label: kind.x_label().to_string(),
        config: base.clone(),
        metrics,
        records,
        trajectories,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(kind: ExperimentKind, grid: Vec<f64>, seeds: usize) -> SimConfig {
        let mut cfg = SimConfig::default();
        cfg.scenario.num_vehicles = 20;
        cfg.experiment.grid = Some(grid);
        cfg.experiment.seeds = seeds;
        cfg.baselines.ea_generations = 5;
        if kind == ExperimentKind::Cpus {
            cfg.scenario.num_vehicles = 30;
        }
        cfg
    }

    #[test]
    fn shapes_and_ordering() {
        let cfg = small(ExperimentKind::Vehicles, vec![10.0, 20.0], 3);
        let rep = sweep(ExperimentKind::Vehicles, &cfg).unwrap();
        assert_eq!(rep.records.len(), 2 * 3 * 6);
        assert_eq!(rep.records[0].algorithm, Algorithm::Mp);
        assert_eq!(rep.records[6].seed, 1);
        assert_eq!(rep.records[18].x, 20.0);
        let m = rep.metric("mean_delay").unwrap();
        assert_eq!(m.series.len(), 6);
        assert!(m
            .series
            .iter()
            .all(|s| s.mean.len() == 2 && s.std.len() == 2));
        assert_eq!(rep.metrics_csv().lines().count(), 1 + METRICS.len() * 6 * 2);
        assert_eq!(rep.records_csv().lines().count(), 1 + 36);
    }

    #[test]
    fn one_seed_gives_grid_times_algorithms_records() {
        let cfg = small(ExperimentKind::Capacity, vec![4.0, 8.0, 12.0], 1);
        let rep = sweep(ExperimentKind::Capacity, &cfg).unwrap();
        assert_eq!(rep.records.len(), 3 * 6);
        assert!(rep
            .metric("outage")
            .unwrap()
            .series
            .iter()
            .all(|s| s.std == vec![0.0; 3]));
    }

    #[test]
    fn rerun_is_identical() {
        let cfg = small(ExperimentKind::Tmax, vec![0.3, 0.6], 2);
        let a = sweep(ExperimentKind::Tmax, &cfg).unwrap();
        let b = sweep(ExperimentKind::Tmax, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.records_csv(), b.records_csv());
    }

    #[test]
    fn convergence_records_bounded_trajectories() {
        let cfg = small(ExperimentKind::Convergence, vec![20.0, 40.0], 2);
        let rep = sweep(ExperimentKind::Convergence, &cfg).unwrap();
        assert_eq!(rep.trajectories.len(), 4);
        assert!(rep
            .trajectories
            .iter()
            .all(|t| t.objective.len() <= 15 && !t.objective.is_empty()));
        assert!(rep.records.iter().all(|r| r.algorithm == Algorithm::Mp));
    }

    #[test]
    fn cpu_grid_keeps_spread() {
        let mut cfg = SimConfig::default();
        ExperimentKind::Cpus.apply(&mut cfg, 2.0).unwrap();
        assert_eq!(cfg.scenario.cpus_per_rsu, CountRange::new(1, 3));
        ExperimentKind::Cpus.apply(&mut cfg, 6.0).unwrap();
        assert_eq!(cfg.scenario.cpus_per_rsu, CountRange::new(4, 8));
        assert!(ExperimentKind::Vehicles.apply(&mut cfg, 2.5).is_err());
    }

    #[test]
    fn unknown_experiment_lists_names() {
        let err = "speed".parse::<ExperimentKind>().unwrap_err().to_string();
        assert!(
            err.contains("vehicles, cpus, tmax, capacity, convergence, overload"),
            "{err}"
        );
    }
}
