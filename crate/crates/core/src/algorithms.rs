//! Uniform by-name access to every solver.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::assignment::Assignment;
use crate::baselines::{
    solve_bm, solve_ea, solve_es, solve_gt, solve_pd, solve_sc, BaselineConfig,
};
use crate::delay::DelayTable;
use crate::error::{Error, Result};
use crate::mp::{self, ConvergenceTrace, SolverConfig};
use crate::scalar::Scalar;
use crate::scenario::ScenarioInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Mp,
    Sc,
    Gt,
    Bm,
    Ea,
    Pd,
    Es,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Mp,
        Algorithm::Sc,
        Algorithm::Gt,
        Algorithm::Bm,
        Algorithm::Ea,
        Algorithm::Pd,
        Algorithm::Es,
    ];

    /// Everything except the exhaustive oracle, which only fits small instances.
    pub const SCALABLE: [Algorithm; 6] = [
        Algorithm::Mp,
        Algorithm::Sc,
        Algorithm::Gt,
        Algorithm::Bm,
        Algorithm::Ea,
        Algorithm::Pd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Mp => "mp",
            Algorithm::Sc => "sc",
            Algorithm::Gt => "gt",
            Algorithm::Bm => "bm",
            Algorithm::Ea => "ea",
            Algorithm::Pd => "pd",
            Algorithm::Es => "es",
        }
    }

    /// Parses a comma-separated list such as `mp,sc,gt`.
    pub fn parse_list(list: &str) -> Result<Vec<Algorithm>> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName {
                kind: "algorithm",
                name: s.to_string(),
                valid: Algorithm::ALL.map(Algorithm::name).join(", "),
            })
    }
}

/// Inputs shared by every solver. `instance` is needed only by SC.
#[derive(Debug, Clone, Copy)]
pub struct Problem<'a, T> {
    pub table: &'a DelayTable<T>,
    pub instance: Option<&'a ScenarioInstance>,
    pub solver: &'a SolverConfig,
    pub baselines: &'a BaselineConfig,
    pub seed: u64,
}

/// Per-run metadata alongside the assignment.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveInfo {
    /// Message iterations, best-response rounds, generations or dual steps.
    pub iterations: usize,
    /// MP convergence or GT equilibrium; `true` for one-shot methods.
    pub converged: bool,
    /// Capacity repair moves applied after the main phase.
    pub repairs: usize,
    /// PD only: tasks beyond the CPU count after rounding.
    pub over_assignment: usize,
    pub trace: Option<ConvergenceTrace>,
}

#[derive(Debug, Clone)]
pub struct Solution<T> {
    pub algorithm: Algorithm,
    pub assignment: Assignment<T>,
    pub info: SolveInfo,
}

pub fn solve<T: Scalar>(algorithm: Algorithm, problem: &Problem<'_, T>) -> Result<Solution<T>> {
    let table = problem.table;
    let cfg = problem.baselines;
    let one_shot = |assignment: Assignment<T>, repairs: usize| {
        (
            assignment,
            SolveInfo {
                converged: true,
                repairs,
                ..Default::default()
            },
        )
    };
    let (assignment, info) = match algorithm {
        Algorithm::Mp => {
            let (asg, trace) = mp::run(table, problem.solver)?;
            let info = SolveInfo {
                iterations: trace.iterations,
                converged: trace.converged,
                repairs: trace.repairs,
                over_assignment: 0,
                trace: Some(trace),
            };
            (asg, info)
        }
        Algorithm::Sc => {
            let instance = problem.instance.ok_or_else(|| {
                Error::config(
                    "instance",
                    "proximity clustering needs vehicle and RSU positions",
                )
            })?;
            one_shot(solve_sc(instance, table)?, 0)
        }
        Algorithm::Gt => {
            cfg.validate()?;
            let out = solve_gt(table, cfg.gt_max_rounds);
            let info = SolveInfo {
                iterations: out.rounds,
                converged: out.equilibrium,
                ..Default::default()
            };
            (out.assignment, info)
        }
        Algorithm::Bm => {
            let (asg, moves) = solve_bm(table);
            one_shot(asg, moves)
        }
        Algorithm::Ea => {
            cfg.validate()?;
            let asg = solve_ea(table, cfg, problem.seed);
            let mut out = one_shot(asg, 0);
            out.1.iterations = cfg.ea_generations;
            out
        }
        Algorithm::Pd => {
            cfg.validate()?;
            let out = solve_pd(table, cfg);
            let info = SolveInfo {
                iterations: cfg.pd_max_iterations,
                converged: true,
                repairs: out.repairs,
                over_assignment: out.over_assignment,
                trace: None,
            };
            (out.assignment, info)
        }
        Algorithm::Es => one_shot(solve_es(table, cfg.es_size_cap)?, 0),
    };
    Ok(Solution {
        algorithm,
        assignment,
        info,
    })
}
