//! Comparison algorithms and the exhaustive-search oracle.

mod bm;
mod config;
mod ea;
mod es;
mod gt;
mod pd;
mod sc;

pub use bm::solve_bm;
pub use config::BaselineConfig;
pub use ea::solve_ea;
pub use es::solve_es;
pub use gt::{is_nash, solve_gt, GtOutcome};
pub use pd::{solve_pd, PdOutcome};
pub use sc::solve_sc;
