//! End-to-end tests of the `triobs` binary: exit codes, file handling,
//! report determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use triobs_core::fileio::{floor_to_doc, state_to_doc, triple_to_docs};
use triobs_core::pauli::pauli_triple;
use triobs_core::report::to_json;
use triobs_core::sampling::{random_involutive_triple, SampleConfig};
use triobs_core::state::QuantumState;
use triobs_core::triple::ObservableTriple;
use triobs_core::witness::{estimate_variance_floor, FloorConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_triobs"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn write_triple(dir: &Path, name: &str, t: &ObservableTriple) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, to_json(&triple_to_docs(t))).unwrap();
    path
}

fn write_state(dir: &Path, name: &str, s: &QuantumState) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, to_json(&state_to_doc(s))).unwrap();
    path
}

fn singlet() -> QuantumState {
    triobs_core::campaign::singlet_state()
}

#[test]
fn witness_flags_the_singlet_with_exit_code_3() {
    let dir = tempfile::tempdir().unwrap();
    let triple = write_triple(dir.path(), "triple.json", &pauli_triple());
    let state = write_state(dir.path(), "singlet.json", &singlet());

    let output = run(&[
        "witness",
        "--triple",
        triple.to_str().unwrap(),
        "--state",
        state.to_str().unwrap(),
        "--method",
        "expectation",
    ]);
    assert_eq!(code(&output), 3, "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let doc = stdout_json(&output);
    assert_eq!(doc["verdict"], "entangled");
    assert!((doc["expectation_abs"].as_f64().unwrap() - 3.0).abs() < 1e-10);
    assert!((doc["second_moment"].as_f64().unwrap() - 9.0).abs() < 1e-10);
}

#[test]
fn witness_is_inconclusive_on_aligned_product_state() {
    let dir = tempfile::tempdir().unwrap();
    let triple = write_triple(dir.path(), "triple.json", &pauli_triple());
    let state = write_state(dir.path(), "zerozero.json", &QuantumState::basis(4, 0));

    let output = run(&[
        "witness",
        "--triple",
        triple.to_str().unwrap(),
        "--state",
        state.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0);
    let doc = stdout_json(&output);
    assert_eq!(doc["verdict"], "inconclusive");
    assert!((doc["expectation_abs"].as_f64().unwrap() - 1.0).abs() < 1e-10);
}

#[test]
fn malformed_and_invalid_inputs_exit_2_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_state(dir.path(), "state.json", &singlet());

    // Truncated JSON: parse diagnostic carries line/column.
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "[{\"dim\": 2, \"kind\": \"matrix\"").unwrap();
    let output = run(&[
        "witness",
        "--triple",
        broken.to_str().unwrap(),
        "--state",
        state.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 2);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("line"), "stderr: {stderr}");

    // Valid JSON, non-Hermitian matrix.
    let lopsided = dir.path().join("lopsided.json");
    std::fs::write(
        &lopsided,
        "[{\"dim\": 2, \"kind\": \"matrix\", \"entries\": [[0.0,0.0],[1.0,0.0],[0.0,0.0],[0.0,0.0]]},\
          {\"dim\": 2, \"kind\": \"matrix\", \"entries\": [[1.0,0.0],[0.0,0.0],[0.0,0.0],[1.0,0.0]]},\
          {\"dim\": 2, \"kind\": \"matrix\", \"entries\": [[1.0,0.0],[0.0,0.0],[0.0,0.0],[1.0,0.0]]}]",
    )
    .unwrap();
    let output = run(&[
        "witness",
        "--triple",
        lopsided.to_str().unwrap(),
        "--state",
        state.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 2);
    assert!(String::from_utf8_lossy(&output.stderr).contains("Hermitian"));

    // Missing file.
    let output = run(&[
        "witness",
        "--triple",
        dir.path().join("nope.json").to_str().unwrap(),
        "--state",
        state.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 2);
}

#[test]
fn floor_pipeline_feeds_the_variance_witness() {
    // An involutive qubit triple with a strictly positive floor (pinned seed).
    let cfg = SampleConfig::new(41, 2).unwrap();
    let t = random_involutive_triple(&cfg);

    let dir = tempfile::tempdir().unwrap();
    let triple = write_triple(dir.path(), "triple.json", &t);
    let floor_path = dir.path().join("floor.json");

    let output = run(&[
        "floor",
        "--triple",
        triple.to_str().unwrap(),
        "--restarts",
        "24",
        "--seed",
        "5",
        "--grid-check",
        "--out",
        floor_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0, "stderr: {}", String::from_utf8_lossy(&output.stderr));

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&floor_path).unwrap()).unwrap();
    let c = doc["c"].as_f64().unwrap();
    let grid = doc["grid_check"].as_f64().unwrap();
    assert!(c > 1e-3, "fixture floor should be positive, got {c}");
    assert!((c - grid).abs() < 1e-6);

    // The top eigenvector of R has zero variance, well below the floor.
    let eig = t.build_r().eig().unwrap();
    let top = QuantumState::pure_normalized((0..4).map(|i| eig.vectors.get(i, 3)).collect())
        .unwrap();
    let state = write_state(dir.path(), "eigvec.json", &top);
    let output = run(&[
        "witness",
        "--triple",
        triple.to_str().unwrap(),
        "--state",
        state.to_str().unwrap(),
        "--method",
        "variance",
        "--floor",
        floor_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 3, "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let doc = stdout_json(&output);
    assert_eq!(doc["verdict"], "entangled");
    assert_eq!(doc["method"], "variance_floor");

    // A floor computed for a different triple is refused.
    let other = pauli_triple();
    let other_floor = estimate_variance_floor(
        &other,
        &FloorConfig {
            restarts: 2,
            seed: 1,
            ..FloorConfig::default()
        },
    )
    .unwrap();
    let mismatched = dir.path().join("mismatched.json");
    std::fs::write(&mismatched, to_json(&floor_to_doc(&other_floor, None))).unwrap();
    let output = run(&[
        "witness",
        "--triple",
        triple.to_str().unwrap(),
        "--state",
        state.to_str().unwrap(),
        "--method",
        "variance",
        "--floor",
        mismatched.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 2);
    assert!(String::from_utf8_lossy(&output.stderr).contains("fingerprint"));
}

#[test]
fn grid_check_requires_qubit_triples() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = SampleConfig::new(2, 3).unwrap();
    let t = triobs_core::sampling::random_involutive_triple(&cfg);
    let triple = write_triple(dir.path(), "triple3.json", &t);

    let output = run(&[
        "floor",
        "--triple",
        triple.to_str().unwrap(),
        "--restarts",
        "4",
        "--seed",
        "1",
        "--grid-check",
    ]);
    assert_eq!(code(&output), 2);
    assert!(String::from_utf8_lossy(&output.stderr).contains("qubit"));
}

#[test]
fn verify_exit_codes_and_vacuous_dimension() {
    let output = run(&["verify", "--suite", "rsq", "--dim", "3", "--trials", "50", "--seed", "7"]);
    assert_eq!(code(&output), 0);
    let doc = stdout_json(&output);
    assert_eq!(doc["failures"], 0);
    assert_eq!(doc["trials"], 50);

    let output = run(&["verify", "--dim", "1", "--trials", "5"]);
    assert_eq!(code(&output), 2);

    let output = run(&["verify", "--suite", "all", "--dim", "2", "--trials", "0"]);
    assert_eq!(code(&output), 0);
}

#[test]
fn verify_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.json");
    let second = dir.path().join("b.json");
    for out in [&first, &second] {
        let output = run(&[
            "verify",
            "--suite",
            "all",
            "--dim",
            "2",
            "--trials",
            "100",
            "--seed",
            "99",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&output), 0);
    }
    let mut a: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&first).unwrap()).unwrap();
    let mut b: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&second).unwrap()).unwrap();
    a["wall_time_ms"] = 0.into();
    b["wall_time_ms"] = 0.into();
    assert_eq!(a, b);

    // CSV rows carry no timing and must be byte-identical.
    let csv_a = dir.path().join("a.csv");
    let csv_b = dir.path().join("b.csv");
    for out in [&csv_a, &csv_b] {
        let output = run(&[
            "verify",
            "--suite",
            "sumform",
            "--dim",
            "2",
            "--trials",
            "50",
            "--seed",
            "3",
            "--format",
            "csv",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&output), 0);
    }
    assert_eq!(
        std::fs::read(&csv_a).unwrap(),
        std::fs::read(&csv_b).unwrap()
    );
    let text = std::fs::read_to_string(&csv_a).unwrap();
    assert!(text.starts_with("suite,trial,dim,seed,slack,pass\n"));
}

#[test]
fn seed_env_var_matches_explicit_flag() {
    let with_flag = run(&["verify", "--suite", "schwarz", "--dim", "2", "--trials", "20", "--seed", "123"]);
    let with_env = bin()
        .args(["verify", "--suite", "schwarz", "--dim", "2", "--trials", "20"])
        .env("TRIOBS_SEED", "123")
        .output()
        .unwrap();
    assert_eq!(code(&with_flag), 0);
    assert_eq!(with_env.status.code(), Some(0));

    let mut a = stdout_json(&with_flag);
    let mut b: serde_json::Value = serde_json::from_slice(&with_env.stdout).unwrap();
    a["wall_time_ms"] = 0.into();
    b["wall_time_ms"] = 0.into();
    assert_eq!(a, b);

    let bad_env = bin()
        .args(["verify", "--dim", "2", "--trials", "1"])
        .env("TRIOBS_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn example_command_passes_and_is_stable() {
    let output = run(&["example"]);
    assert_eq!(code(&output), 0);
    let doc = stdout_json(&output);
    assert_eq!(doc["all_passed"], true);
    assert!((doc["max_r_squared_eigenvalue"].as_f64().unwrap() - 9.0).abs() < 1e-10);
    assert_eq!(doc["saturation"].as_array().unwrap().len(), 8);

    let rerun = run(&["example"]);
    let mut a = stdout_json(&output);
    let mut b = stdout_json(&rerun);
    a["wall_time_ms"] = 0.into();
    b["wall_time_ms"] = 0.into();
    assert_eq!(a, b);

    // --out writes the same machine-readable record.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("example.json");
    let output = run(&["example", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&output), 0);
    let mut from_file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    from_file["wall_time_ms"] = 0.into();
    assert_eq!(from_file, a);
}
