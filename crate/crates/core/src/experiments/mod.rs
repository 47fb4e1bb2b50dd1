//! Metrics, parameter sweeps and the verification suites.

mod metrics;
mod sweep;
pub mod verify;

pub use metrics::{
    delay_cdf, load_classes, mean_local_delay, outage_probability, overload_ratio, LoadClasses,
};
pub use sweep::{
    sweep, sweep_with_progress, AlgorithmSeries, ExperimentConfig, ExperimentKind,
    ExperimentReport, MetricSeries, RunRecord, Trajectory, METRICS,
};
