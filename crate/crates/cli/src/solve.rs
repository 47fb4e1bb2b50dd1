use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use offload_core::experiments::{load_classes, outage_probability, overload_ratio, LoadClasses};
use offload_core::mp::ConvergenceTrace;
use offload_core::{
    build_delay_table, generate_scenario, objective_value, solve, Algorithm, Assignment,
    DelayTable, Problem, ScenarioInstance, SolveInfo,
};
use serde::Serialize;

use crate::output::{load_config, OutDir, RunManifest};
use crate::{exit, CmdResult, Failure, Format};

pub struct Args {
    pub config: Option<PathBuf>,
    pub algorithm: String,
    pub seed: Option<u64>,
    pub out: PathBuf,
    pub format: Format,
    pub instance: Option<PathBuf>,
    pub dump_table: bool,
}

#[derive(Debug, Serialize)]
struct Summary {
    algorithm: Algorithm,
    seed: u64,
    num_vehicles: usize,
    num_rsus: usize,
    objective: f64,
    mean_delay: f64,
    mean_raw_delay: f64,
    overload_ratio: f64,
    outage: f64,
    iterations: usize,
    converged: bool,
    repairs: usize,
    over_assignment: usize,
    load_classes: LoadClasses,
}

impl Summary {
    fn csv(&self) -> String {
        let rows: [(&str, String); 16] = [
            ("algorithm", self.algorithm.to_string()),
            ("seed", self.seed.to_string()),
            ("num_vehicles", self.num_vehicles.to_string()),
            ("num_rsus", self.num_rsus.to_string()),
            ("objective", self.objective.to_string()),
            ("mean_delay", self.mean_delay.to_string()),
            ("mean_raw_delay", self.mean_raw_delay.to_string()),
            ("overload_ratio", self.overload_ratio.to_string()),
            ("outage", self.outage.to_string()),
            ("iterations", self.iterations.to_string()),
            ("converged", self.converged.to_string()),
            ("repairs", self.repairs.to_string()),
            ("over_assignment", self.over_assignment.to_string()),
            ("rsus_light", self.load_classes.light.to_string()),
            ("rsus_moderate", self.load_classes.moderate.to_string()),
            ("rsus_busy", self.load_classes.busy.to_string()),
        ];
        let mut out = String::from("key,value\n");
        for (k, v) in rows {
            out.push_str(&format!("{k},{v}\n"));
        }
        out
    }
}

#[derive(Serialize)]
struct SolutionDoc<'a> {
    summary: &'a Summary,
    assignment: &'a Assignment<f64>,
    trace: Option<&'a ConvergenceTrace>,
}

fn read_instance(path: &PathBuf) -> CmdResult<ScenarioInstance> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(exit::IO, format!("{}: {e}", path.display())))?;
    // Accept either a bare instance or a fixture document with an `instance` field.
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::new(exit::CONFIG, format!("{}: {e}", path.display())))?;
    let inner = value.get("instance").cloned().unwrap_or(value);
    let instance: ScenarioInstance = serde_json::from_value(inner)
        .map_err(|e| Failure::new(exit::CONFIG, format!("{}: {e}", path.display())))?;
    instance.validate()?;
    Ok(instance)
}

pub fn run(args: Args) -> CmdResult {
    let started = Instant::now();
    let algorithm: Algorithm = args.algorithm.parse()?;
    let mut config = load_config(args.config.as_deref())?;
    if let Some(seed) = args.seed {
        config.scenario.seed = seed;
    }
    let instance = match &args.instance {
        Some(path) => read_instance(path)?,
        None => generate_scenario(&config.scenario)?,
    };
    let seed = instance.seed;
    let table: DelayTable<f64> = build_delay_table(&instance)?;
    let solver = config.solver_config();
    let problem = Problem {
        table: &table,
        instance: Some(&instance),
        solver: &solver,
        baselines: &config.baselines,
        seed,
    };
    let sol = solve(algorithm, &problem)?;
    let asg = &sol.assignment;
    let objective = objective_value(&table, asg)?;
    let v = table.num_vehicles() as f64;
    let SolveInfo {
        iterations,
        converged,
        repairs,
        over_assignment,
        trace,
    } = sol.info;
    let summary = Summary {
        algorithm,
        seed,
        num_vehicles: table.num_vehicles(),
        num_rsus: table.num_rsus(),
        objective,
        mean_delay: objective / v,
        mean_raw_delay: table.realized_raw(asg).iter().sum::<f64>() / v,
        overload_ratio: overload_ratio(&table, asg),
        outage: outage_probability(&table, asg),
        iterations,
        converged,
        repairs,
        over_assignment,
        load_classes: load_classes(&table, asg),
    };

    let mut out = OutDir::create(&args.out)?;
    match args.format {
        Format::Csv => {
            out.write("assignment.csv", &asg.to_csv())?;
            out.write("summary.csv", &summary.csv())?;
            if let Some(t) = &trace {
                out.write("trace.csv", &t.to_csv())?;
            }
        }
        Format::Json => {
            out.write_json(
                "solution.json",
                &SolutionDoc {
                    summary: &summary,
                    assignment: asg,
                    trace: trace.as_ref(),
                },
            )?;
        }
    }
    if args.dump_table {
        out.write("table.csv", &table.to_csv())?;
    }
    println!(
        "{algorithm}: objective {objective} s, mean delay {} s, iterations {iterations}, converged {converged}",
        summary.mean_delay
    );
    let manifest = RunManifest::new("solve", args.config.as_deref(), Some(&config), vec![seed]);
    out.finish(manifest, started)
}
