use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn vecsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vecsim"))
        .args(args)
        .env_remove("VECSIM_OUT_DIR")
        .env_remove("VECSIM_THREADS")
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Every output file except the manifest, by name.
fn outputs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "manifest.json")
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn write_config(dir: &Path, json: &str) -> PathBuf {
    let p = dir.join("config.json");
    fs::write(&p, json).unwrap();
    p
}

#[test]
fn solve_is_byte_identical_across_runs() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        let out = vecsim(&[
            "solve",
            "--algorithm",
            "mp",
            "--seed",
            "7",
            "--out",
            path(dir),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(String::from_utf8_lossy(&out.stdout).contains("objective"));
    }
    let files = outputs(&a);
    assert_eq!(files, outputs(&b));
    let names: Vec<&str> = files.iter().map(|f| f.0.as_str()).collect();
    assert_eq!(names, ["assignment.csv", "summary.csv", "trace.csv"]);

    let manifest: serde_json::Value =
        serde_json::from_slice(&fs::read(a.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seeds"], serde_json::json!([7]));
    assert_eq!(manifest["config_hash"].as_str().unwrap().len(), 64);
    for f in manifest["artifacts"].as_array().unwrap() {
        assert!(a.join(f.as_str().unwrap()).exists());
    }
}

#[test]
fn exhaustive_search_on_twenty_vehicles_hits_the_size_guard() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), r#"{"scenario": {"num_vehicles": 20}}"#);
    let out = vecsim(&[
        "solve",
        path(&cfg),
        "--algorithm",
        "es",
        "--out",
        path(&tmp.path().join("o")),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too large"));
}

#[test]
fn mp_reaches_the_bundled_es_references() {
    let tmp = tempfile::tempdir().unwrap();
    for k in 1..=3 {
        let fixture_path = fixtures_dir().join(format!("fixture_{k}.json"));
        let fixture: serde_json::Value =
            serde_json::from_slice(&fs::read(&fixture_path).unwrap()).unwrap();
        let out_dir = tmp.path().join(format!("f{k}"));
        let out = vecsim(&[
            "solve",
            "--algorithm",
            "mp",
            "--instance",
            path(&fixture_path),
            "--format",
            "json",
            "--out",
            path(&out_dir),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let sol: serde_json::Value =
            serde_json::from_slice(&fs::read(out_dir.join("solution.json")).unwrap()).unwrap();
        let mp = sol["summary"]["objective"].as_f64().unwrap();
        let es = fixture["es_objective"].as_f64().unwrap();
        assert!((mp - es).abs() < 1e-9, "fixture {k}: {mp} vs {es}");
    }
}

#[test]
fn fixture_command_reproduces_the_bundle() {
    let tmp = tempfile::tempdir().unwrap();
    let out = vecsim(&["fixtures", "--out", path(tmp.path())]);
    assert!(out.status.success());
    assert_eq!(outputs(tmp.path()), outputs(&fixtures_dir()));
}

#[test]
fn one_seed_sweep_has_grid_times_algorithms_records() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), r#"{"baselines": {"ea_generations": 5}}"#);
    let out_dir = tmp.path().join("s");
    let out = vecsim(&[
        "sweep",
        path(&cfg),
        "--experiment",
        "vehicles",
        "--seeds",
        "1",
        "--out",
        path(&out_dir),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("10/10 instances"));
    let records = fs::read_to_string(out_dir.join("records.csv")).unwrap();
    assert_eq!(records.lines().count(), 1 + 10 * 6);
    let metrics = fs::read_to_string(out_dir.join("metrics.csv")).unwrap();
    let delay_rows = metrics
        .lines()
        .filter(|l| l.starts_with("mean_delay,"))
        .count();
    assert_eq!(delay_rows, 10 * 6);
    assert!(out_dir.join("report.json").exists());
}

#[test]
fn convergence_trajectories_respect_the_iteration_cap() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"{"scenario": {"max_iterations": 12}, "experiment": {"grid": [20, 60]}}"#,
    );
    let out_dir = tmp.path().join("c");
    let out = vecsim(&[
        "sweep",
        path(&cfg),
        "--experiment",
        "convergence",
        "--seeds",
        "3",
        "--out",
        path(&out_dir),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let traj = fs::read_to_string(out_dir.join("trajectories.csv")).unwrap();
    let mut rows = std::collections::BTreeMap::<(String, String), usize>::new();
    for line in traj.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        *rows
            .entry((f[0].to_string(), f[1].to_string()))
            .or_default() += 1;
    }
    assert_eq!(rows.len(), 6);
    assert!(rows.values().all(|&n| (1..=12).contains(&n)));
}

#[test]
fn verify_suites_pass_on_small_budgets() {
    let tmp = tempfile::tempdir().unwrap();
    for (suite, trials) in [("oracle", "3"), ("optimality", "20"), ("contraction", "4")] {
        let out = vecsim(&[
            "verify",
            "--suite",
            suite,
            "--trials",
            trials,
            "--out",
            path(&tmp.path().join(suite)),
        ]);
        assert!(
            out.status.success(),
            "{suite}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    }
}

#[test]
fn config_errors_name_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), r#"{"scenario": {"t_max_s": -1.0}}"#);
    let out = vecsim(&["solve", path(&cfg), "--out", path(&tmp.path().join("o"))]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("t_max_s"));

    let cfg = write_config(tmp.path(), r#"{"experiment": {"seed": 3}}"#);
    let out = vecsim(&[
        "sweep",
        path(&cfg),
        "--experiment",
        "tmax",
        "--out",
        path(&tmp.path().join("o")),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_names_list_the_valid_ones() {
    let tmp = tempfile::tempdir().unwrap();
    let out = vecsim(&["solve", "--algorithm", "dqn", "--out", path(tmp.path())]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mp, sc, gt, bm, ea, pd, es"));
    let out = vecsim(&["sweep", "--experiment", "fig11", "--out", path(tmp.path())]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("overload"));
    let out = vecsim(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn environment_sets_output_dir_and_threads() {
    let tmp = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_vecsim"))
        .args(["solve", "--algorithm", "bm", "--format", "json"])
        .env("VECSIM_OUT_DIR", tmp.path())
        .env("VECSIM_THREADS", "2")
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(tmp.path().join("solution.json").exists());
}
