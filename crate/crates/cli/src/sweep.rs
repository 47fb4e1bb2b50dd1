use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use offload_core::experiments::{sweep_with_progress, ExperimentKind};

use crate::output::{load_config, OutDir, RunManifest};
use crate::{exit, CmdResult, Failure};

pub fn run(
    config_path: Option<PathBuf>,
    experiment: &str,
    seeds: Option<usize>,
    out: &Path,
) -> CmdResult {
    let started = Instant::now();
    let kind: ExperimentKind = experiment.parse()?;
    let mut config = load_config(config_path.as_deref())?;
    if let Some(n) = seeds {
        if n == 0 {
            return Err(Failure::new(exit::USAGE, "--seeds must be at least 1"));
        }
        config.experiment.seeds = n;
    }
    let reported = AtomicUsize::new(0);
    let report = sweep_with_progress(kind, &config, |done, total| {
        // About ten progress lines per sweep.
        let step = total.div_ceil(10).max(1);
        if done == total || done % step == 0 {
            let prev = reported.fetch_max(done, Ordering::Relaxed);
            if prev < done {
                eprintln!("{kind}: {done}/{total} instances");
            }
        }
    })?;

    let mut dir = OutDir::create(out)?;
    dir.write("metrics.csv", &report.metrics_csv())?;
    dir.write("records.csv", &report.records_csv())?;
    if kind == ExperimentKind::Convergence {
        dir.write("trajectories.csv", &report.trajectories_csv())?;
    }
    dir.write_json("report.json", &report)?;

    if let Some(m) = report.metric("mean_delay") {
        for s in &m.series {
            let cells: Vec<String> = m
                .x_values
                .iter()
                .zip(&s.mean)
                .map(|(x, y)| format!("{x}:{y:.4}"))
                .collect();
            println!("{:>3} mean_delay {}", s.algorithm, cells.join(" "));
        }
    }
    let seeds = report
        .metrics
        .first()
        .map(|m| m.seeds.clone())
        .unwrap_or_default();
    let manifest = RunManifest::new(
        &format!("sweep {kind}"),
        config_path.as_deref(),
        Some(&config),
        seeds,
    );
    dir.finish(manifest, started)
}
