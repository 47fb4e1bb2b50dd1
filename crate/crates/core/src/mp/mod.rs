//! Min-sum message passing over the vehicle/RSU factor graph.
//!
//! Each iteration is bulk-synchronous: every vehicle refreshes its `rho`
//! messages from the current `alpha`, then every RSU refreshes `alpha` from
//! the new `rho`. Vehicles pick the server minimizing `alpha + rho`.

mod messages;
mod probe;
mod solver;

pub use messages::{
    compute_psi, decision_metrics, preferred_servers, rho_phase, update_alpha, update_rho,
    MessageState,
};
pub use probe::{contraction_probe, probe_pair, random_alpha, ProbeReport, ProbeTrial};
pub use solver::{extract, repair_capacity, run, run_from, step, ConvergenceTrace, SolverConfig};
