use std::path::Path;
use std::time::Instant;

use offload_core::experiments::verify::{
    contraction_suite, optimality_suite, oracle_suite, MATCH_TOL,
};
use offload_core::mp::SolverConfig;

use crate::output::{OutDir, RunManifest};
use crate::{exit, CmdResult, Failure, Suite};

/// Minimum share of small instances where MP must reach the ES optimum.
const MATCH_RATE: f64 = 0.95;
const ORACLE_TOL: f64 = 1e-9;
const CONTRACTION_INSTANCES: usize = 10;
/// Iteration budget for probe trajectories; well above the solver default.
const PROBE_ITERATIONS: usize = 100;

pub fn run(suite: Suite, trials: Option<usize>, seed: u64, out: &Path) -> CmdResult {
    let started = Instant::now();
    if trials == Some(0) {
        return Err(Failure::new(exit::USAGE, "--trials must be at least 1"));
    }
    let mut dir = OutDir::create(out)?;
    let (name, passed) = match suite {
        Suite::Oracle => {
            let samples = trials.unwrap_or(50);
            let rep = oracle_suite(samples, seed)?;
            println!("suite     cases  max_abs_error  worst(n,k)  threshold");
            println!(
                "oracle  {:>7}  {:>13.3e}  {:>10}  < {ORACLE_TOL:e}",
                rep.cases,
                rep.max_abs_error,
                format!("({},{})", rep.worst.0, rep.worst.1)
            );
            dir.write_json("oracle.json", &rep)?;
            ("oracle", rep.passed(ORACLE_TOL))
        }
        Suite::Optimality => {
            let n = trials.unwrap_or(100);
            let rep = optimality_suite(n, seed, &SolverConfig::default())?;
            let matches = rep.matches();
            let need = (MATCH_RATE * n as f64).ceil() as usize;
            println!("suite       instances  matches  required  tolerance");
            println!("optimality  {n:>9}  {matches:>7}  {need:>8}  {MATCH_TOL:e}");
            let mismatches: Vec<_> = rep.mismatches().cloned().collect();
            for case in &mismatches {
                let moved: Vec<String> = case
                    .disagreements
                    .iter()
                    .map(|d| format!("v{} mp={} es={}", d.vehicle, d.mp_server, d.es_server))
                    .collect();
                println!(
                    "  mismatch seed {}: mp {} vs es {} [{}]",
                    case.seed,
                    case.mp_objective,
                    case.es_objective,
                    moved.join(", ")
                );
            }
            dir.write_json("optimality.json", &rep)?;
            dir.write_json("mismatches.json", &mismatches)?;
            ("optimality", matches >= need)
        }
        Suite::Contraction => {
            let pairs = trials.unwrap_or(20);
            let solver = SolverConfig {
                max_iterations: PROBE_ITERATIONS,
                ..Default::default()
            };
            let rep = contraction_suite(CONTRACTION_INSTANCES, pairs, seed, &solver)?;
            println!("seed  pairs  both_converged  inconsistent  final_max_ratio");
            for i in &rep.instances {
                let last = i.max_ratio.last().copied().unwrap_or(0.0);
                println!(
                    "{:>4}  {:>5}  {:>14}  {:>12}  {last:>15.3e}",
                    i.seed, i.pairs, i.both_converged, i.inconsistent
                );
            }
            dir.write_json("contraction.json", &rep)?;
            ("contraction", rep.consistent() && rep.ratios_finite())
        }
    };
    println!("{name}: {}", if passed { "PASS" } else { "FAIL" });
    dir.finish(
        RunManifest::new(&format!("verify {name}"), None, None, vec![seed]),
        started,
    )?;
    if passed {
        Ok(())
    } else {
        Err(Failure::new(
            exit::VERIFY,
            format!(
                "{name} suite missed its threshold; details in {}",
                out.display()
            ),
        ))
    }
}
