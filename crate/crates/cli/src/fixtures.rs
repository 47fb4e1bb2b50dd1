use std::path::Path;
use std::time::Instant;

use offload_core::baselines::solve_es;
use offload_core::scenario::CountRange;
use offload_core::{
    build_delay_table, generate_scenario, objective_value, DelayTable, ScenarioConfig,
    ScenarioInstance,
};
use serde::{Deserialize, Serialize};

use crate::output::{OutDir, RunManifest};
use crate::CmdResult;

/// A serialized instance with its exhaustive-search optimum.
#[derive(Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub config: ScenarioConfig,
    pub instance: ScenarioInstance,
    pub es_objective: f64,
    pub es_choice: Vec<usize>,
}

fn configs() -> Vec<ScenarioConfig> {
    let small = |v: usize, a: usize, kmax: usize, capacity: usize, seed: u64| ScenarioConfig {
        num_vehicles: v,
        num_rsus: a,
        cpus_per_rsu: CountRange::new(1, kmax),
        capacity,
        road_length_m: 250.0 * (a as f64 + 1.0),
        seed,
        ..Default::default()
    };
    vec![
        small(5, 1, 2, 3, 101),
        small(7, 2, 2, 3, 102),
        small(8, 3, 3, 4, 103),
    ]
}

pub fn run(out: &Path) -> CmdResult {
    let started = Instant::now();
    let mut dir = OutDir::create(out)?;
    let mut seeds = Vec::new();
    for (k, config) in configs().into_iter().enumerate() {
        let instance = generate_scenario(&config)?;
        let table: DelayTable<f64> = build_delay_table(&instance)?;
        let es = solve_es(&table, u64::MAX)?;
        let fixture = Fixture {
            es_objective: objective_value(&table, &es)?,
            es_choice: es.choice,
            config,
            instance,
        };
        println!(
            "fixture_{}: V={} A={} es objective {}",
            k + 1,
            table.num_vehicles(),
            table.num_rsus(),
            fixture.es_objective
        );
        seeds.push(fixture.config.seed);
        dir.write_json(&format!("fixture_{}.json", k + 1), &fixture)?;
    }
    dir.finish(RunManifest::new("fixtures", None, None, seeds), started)
}
