//! Queue-aware task offloading for vehicular edge computing.
//!
//! Vehicles either run a task locally or offload it to one roadside unit
//! (RSU) whose edge server has several CPUs. Execution time at an RSU grows
//! with the number of tasks sharing it, so the best association depends on
//! everyone else's choice. This crate provides:
//!
//! * [`scenario`]: seeded road scenarios with path-loss channels,
//! * [`delay`]: the load-dependent delay model and its clamped table,
//! * [`mp`]: the distributed min-sum message-passing solver,
//! * [`baselines`]: comparison heuristics plus an exhaustive-search oracle,
//! * [`algorithms`]: every solver behind one by-name entry point,
//! * [`experiments`]: metrics, parameter sweeps and self-check suites,
//! * [`config`]: the JSON document that drives runs.
//!
//! The delay table and solvers are generic over [`Scalar`] (`f32` or `f64`);
//! the `*64` aliases below are what the experiment harness uses.

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algorithms;
pub mod assignment;
pub mod baselines;
pub mod config;
pub mod delay;
pub mod error;
pub mod experiments;
pub mod mp;
pub mod scalar;
pub mod scenario;

pub use algorithms::{solve, Algorithm, Problem, Solution, SolveInfo};
pub use assignment::Assignment;
pub use config::SimConfig;
pub use delay::{build_delay_table, objective_value, DelayTable, ServerSpec};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use scenario::{generate_scenario, ScenarioConfig, ScenarioInstance};

pub type DelayTable64 = DelayTable<f64>;
pub type DelayTable32 = DelayTable<f32>;
pub type Assignment64 = Assignment<f64>;
pub type Assignment32 = Assignment<f32>;
pub type MessageState64 = mp::MessageState<f64>;
pub type MessageState32 = mp::MessageState<f32>;
