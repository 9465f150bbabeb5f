use std::path::Path;
use std::process::{Command, Output};

use nsga3_harness::{read_experiment_csv, read_trace, TraceRow};

fn nsga3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsga3"))
        .args(args)
        .output()
        .unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn run_writes_trace_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let (trace, json) = (path(dir.path(), "trace.csv"), path(dir.path(), "run.json"));
    let out = nsga3(&[
        "run",
        "--n",
        "12",
        "--mu",
        "13",
        "--seed",
        "4",
        "--check-invariants",
        "--trace-out",
        &trace,
        "--out",
        &json,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("covered generations="));
    assert!(stdout.contains("invariant_violations=0"));

    let rows: Vec<TraceRow> = read_trace(std::fs::File::open(&trace).unwrap()).unwrap();
    assert_eq!(rows[0].t, 0);
    assert_eq!(rows.last().unwrap().coverage_fraction, 1.0);
    assert!(rows.windows(2).all(|w| w[1].beta <= w[0].beta));

    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let generations = value["generations"].as_u64().unwrap();
    assert_eq!(
        value["fitness_evaluations"].as_u64().unwrap(),
        13 * generations
    );
    assert_eq!(value["config"]["p"].as_u64().unwrap(), 68);
    assert_eq!(value["trace"].as_array().unwrap().len(), rows.len());
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = path(dir.path(), "run.toml");
    let json = path(dir.path(), "run.json");
    std::fs::write(
        &config,
        "algo = \"nsga3\"\nn = 8\nmu = 9\nseed = 1\nmax_gens = 3\n",
    )
    .unwrap();
    let out = nsga3(&[
        "run",
        "--config",
        &config,
        "--algo",
        "nsga2",
        "--mu",
        "20",
        "--max-gens",
        "7",
        "--out",
        &json,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(value["config"]["algo"], "nsga2");
    assert_eq!(value["config"]["mu"], 20);
    assert_eq!(value["config"]["n"], 8);
    assert_eq!(value["config"]["max_gens"], 7);
}

#[test]
fn exit_codes() {
    assert_eq!(nsga3(&["--help"]).status.code(), Some(0));
    assert_eq!(nsga3(&["run", "--bogus"]).status.code(), Some(1));
    assert_eq!(nsga3(&["run", "--n", "8"]).status.code(), Some(1));
    assert_eq!(
        nsga3(&["run", "--n", "7", "--m", "4", "--mu", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        nsga3(&["run", "--n", "8", "--mu", "9", "--algo", "moead"])
            .status
            .code(),
        Some(1)
    );
    // A two-point lattice cannot keep every front vector, so the cover
    // checks fail quickly.
    let out = nsga3(&[
        "run",
        "--n",
        "16",
        "--mu",
        "17",
        "--p",
        "2",
        "--seed",
        "0",
        "--strict-invariants",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("invariant violated"));
}

#[test]
fn experiment_fit_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let config = path(dir.path(), "exp.toml");
    std::fs::write(
        &config,
        "master_seed = 3\nreps = 3\njobs = 4\n[[grid]]\nn = [8, 12, 16, 20]\nmu = \"front\"\n",
    )
    .unwrap();
    let (a, b) = (path(dir.path(), "a.csv"), path(dir.path(), "b.csv"));
    for (out, jobs) in [(&a, "4"), (&b, "1")] {
        let run = nsga3(&[
            "experiment",
            "--config",
            &config,
            "--no-wall-time",
            "--jobs",
            jobs,
            "--out",
            out,
        ]);
        assert!(
            run.status.success(),
            "{}",
            String::from_utf8_lossy(&run.stderr)
        );
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let rows = read_experiment_csv(bytes.as_slice()).unwrap();
    assert_eq!(rows.len(), 12);

    let fit_json = path(dir.path(), "fit.json");
    let fit = nsga3(&["fit", &a, "--model", "n_pow", "--out", &fit_json]);
    assert!(
        fit.status.success(),
        "{}",
        String::from_utf8_lossy(&fit.stderr)
    );
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&fit_json).unwrap()).unwrap();
    assert_eq!(value["model"], "n_pow");
    assert_eq!(value["points"].as_array().unwrap().len(), 4);

    let svg = path(dir.path(), "scaling.svg");
    assert!(nsga3(&["plot", &a, "--kind", "scaling", "--out", &svg])
        .status
        .success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<circle").count(), 4);
    assert!(text.contains("class=\"fit\""));

    let empty = path(dir.path(), "empty.csv");
    std::fs::write(&empty, "algo,m,n,mu,p,eps_nad,seed,repetition,generations,capped,fitness_evals,final_beta,wall_ms\n")
        .unwrap();
    assert_eq!(
        nsga3(&["plot", &empty, "--kind", "scaling"]).status.code(),
        Some(1)
    );
    assert_eq!(nsga3(&["fit", &empty]).status.code(), Some(1));
}

#[test]
fn fit_needs_three_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let config = path(dir.path(), "exp.toml");
    std::fs::write(&config, "[[grid]]\nn = [8, 16]\nmu = \"front\"\n").unwrap();
    let csv = path(dir.path(), "e.csv");
    assert!(nsga3(&["experiment", "--config", &config, "--out", &csv])
        .status
        .success());
    let out = nsga3(&["fit", &csv]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at least 3"));
}
