//! End-to-end tests driving the compiled binary.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};

static DIR_COUNTER: AtomicUsize = AtomicUsize::new(0);

/// Fresh scratch directory under the system temp root.
fn scratch() -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "starpath-cli-{}-{}",
        std::process::id(),
        DIR_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::create_dir_all(&dir).expect("create scratch dir");
    dir
}

/// Run the binary; returns (exit code, stdout, stderr).
fn run_in(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_starpath"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_in(&std::env::temp_dir(), args)
}

#[test]
fn mc_passes_on_the_commutative_family() {
    let (code, out, err) = run(&["mc", "zk-tilt-4", "alpha-family"]);
    assert_eq!(code, 0, "stdout: {out}\nstderr: {err}");
    assert!(out.contains("maurer-cartan: verified"), "stdout: {out}");
}

#[test]
fn mc_fails_on_the_obstructed_family() {
    let (code, out, _) = run(&["mc", "zk-tilt-4", "beta012"]);
    assert_eq!(code, 2, "stdout: {out}");
    assert!(out.contains("maurer-cartan: fails"), "stdout: {out}");
}

#[test]
fn example_then_diamond_round_trip() {
    let dir = scratch();
    let (code, out, err) = run_in(&dir, &["example", "genus3"]);
    assert_eq!(code, 0, "stdout: {out}\nstderr: {err}");
    assert!(dir.join("genus3-system.json").is_file());
    let (code, out, _) = run_in(&dir, &["diamond", "genus3-system.json"]);
    assert_eq!(code, 0, "stdout: {out}");
    assert!(out.contains("confluent: YES"), "stdout: {out}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn unknown_input_is_an_input_error() {
    let (code, _, err) = run(&["validate", "no-such-fixture"]);
    assert_eq!(code, 1);
    assert!(err.contains("input error"), "stderr: {err}");
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = scratch();
    std::fs::write(dir.join("broken.json"), "{ not json").unwrap();
    let (code, _, err) = run_in(&dir, &["validate", "broken.json"]);
    assert_eq!(code, 1, "stderr: {err}");
    assert!(err.contains("input error"), "stderr: {err}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn step_cap_exhaustion_is_reported() {
    let (code, out, _) = run(&["--max-steps", "1", "nf", "zk-tilt-4", "x1 y0 x0"]);
    assert_eq!(code, 3, "stdout: {out}");
    assert!(out.contains("step cap hit"), "stdout: {out}");
}

#[test]
fn normal_form_prints_trace_and_result() {
    let (code, out, _) = run(&["nf", "zk-tilt-4", "x1 y0 x0"]);
    assert_eq!(code, 0);
    assert!(out.contains("normal form"), "stdout: {out}");
    // x1 y0 x0 -> x0 y1 x0 -> x0 y0 x1.
    assert!(out.contains("x0 y0 x1"), "stdout: {out}");
}

#[test]
fn strategies_agree_via_flag() {
    for strategy in ["rightmost", "leftmost", "random"] {
        let (code, out, _) = run(&["nf", "zk-tilt-4", "--strategy", strategy, "x1 y0 x0"]);
        assert_eq!(code, 0, "strategy {strategy}");
        assert!(out.contains("x0 y0 x1"), "strategy {strategy}: {out}");
    }
}

#[test]
fn ambiguity_listing_matches_the_expected_set() {
    let (code, out, _) = run(&["ambiguities", "zk-tilt-4", "--degree", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("2 ambiguities"), "stdout: {out}");
    assert!(out.contains("x1 y1 x0"), "stdout: {out}");
    assert!(out.contains("x1 y2 x0"), "stdout: {out}");
}

#[test]
fn star_product_prints_the_deformed_value() {
    // x1 * y0 is the deformed rhs of the pair x1 y0 itself.
    let (code, out, _) = run(&["star", "zk-tilt-3", "alpha-family", "x1", "y0"]);
    assert_eq!(code, 0);
    assert!(out.contains("x0 y1"), "stdout: {out}");
    assert!(out.contains("(t1) e_0"), "stdout: {out}");
}

#[test]
fn cocycle_and_degcond_verdicts() {
    let (code, out, _) = run(&["cocycle", "zk-tilt-4", "alpha-family"]);
    assert_eq!(code, 0, "stdout: {out}");
    let (code, out, _) = run(&["degcond", "zk-tilt-4", "alpha-family"]);
    assert_eq!(code, 0, "stdout: {out}");
    let (code, out, _) = run(&["degcond", "zk-diagram-2", "commutative", "--subset", "S0"]);
    assert_eq!(code, 0, "stdout: {out}");
    // The corrected family genuinely breaks the degree condition.
    let (code, out, _) = run(&["degcond", "zk-tilt-4", "nc-corrected"]);
    assert_eq!(code, 2, "stdout: {out}");
}

#[test]
fn variety_prints_normalized_equations() {
    let (code, out, _) = run(&["variety", "zk-tilt-4", "variety-family"]);
    assert_eq!(code, 0);
    assert!(out.contains("2 equations"), "stdout: {out}");
    assert!(out.contains("mu0 la1 + mu1 la2"), "stdout: {out}");
    assert!(out.contains("mu0 la2 + mu1 la3"), "stdout: {out}");
}

#[test]
fn build_diagram_writes_certified_system() {
    let dir = scratch();
    let (code, out, err) = run_in(&dir, &["build-diagram", "zk-diagram-2"]);
    assert_eq!(code, 0, "stdout: {out}\nstderr: {err}");
    assert!(dir.join("zk-diagram-2-system.json").is_file());
    assert!(dir.join("zk-diagram-2-provenance.json").is_file());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn hypersurface_reports_basis_and_differential() {
    let dir = scratch();
    let (code, out, err) = run_in(
        &dir,
        &["hypersurface", "hypersurface-2", "--bach-degree", "2"],
    );
    assert_eq!(code, 0, "stdout: {out}\nstderr: {err}");
    assert!(dir.join("hypersurface-2-system.json").is_file());
    assert!(out.contains("d("), "stdout: {out}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn exported_files_feed_back_into_every_command() {
    let dir = scratch();
    let (code, _, err) = run_in(&dir, &["example", "zk-tilt-3"]);
    assert_eq!(code, 0, "stderr: {err}");
    let (code, out, _) = run_in(&dir, &["validate", "zk-tilt-3-system.json"]);
    assert_eq!(code, 0, "stdout: {out}");
    let (code, out, _) = run_in(
        &dir,
        &[
            "mc",
            "zk-tilt-3-system.json",
            "zk-tilt-3-alpha-family.json",
        ],
    );
    assert_eq!(code, 0, "stdout: {out}");
    assert!(out.contains("maurer-cartan: verified"), "stdout: {out}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn json_output_is_valid_and_deterministic() {
    for args in [
        vec!["--output", "json", "validate", "zk-tilt-3"],
        vec!["--output", "json", "diamond", "zk-tilt-3"],
        vec!["--output", "json", "mc", "zk-tilt-3", "alpha-family"],
        vec!["--output", "json", "ambiguities", "zk-tilt-4"],
        vec![
            "--output",
            "json",
            "star",
            "zk-tilt-3",
            "alpha-family",
            "x1 y0",
            "x0",
        ],
    ] {
        let (code, first, err) = run(&args);
        assert_eq!(code, 0, "args {args:?}: {err}");
        serde_json::from_str::<serde_json::Value>(&first)
            .unwrap_or_else(|e| panic!("args {args:?}: invalid JSON ({e}): {first}"));
        let (_, second, _) = run(&args);
        assert_eq!(first, second, "args {args:?}: output is not deterministic");
    }
}

#[test]
fn closed_output_pipe_dies_quietly() {
    // Reader goes away before the report is written: the process must exit
    // like a SIGPIPE death (141) without a panic message.
    let mut child = Command::new(env!("CARGO_BIN_EXE_starpath"))
        .args(["mc", "genus3", "lambda-family"])
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .expect("binary spawns");
    drop(child.stdout.take());
    let out = child.wait_with_output().expect("child finishes");
    assert_eq!(out.status.code(), Some(141), "status: {:?}", out.status);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(!stderr.contains("panicked"), "stderr: {stderr}");
}

#[test]
fn exported_example_files_are_deterministic() {
    let a = scratch();
    let b = scratch();
    for dir in [&a, &b] {
        let (code, _, err) = run_in(dir, &["example", "zk-diagram-2"]);
        assert_eq!(code, 0, "stderr: {err}");
    }
    let mut names: Vec<String> = std::fs::read_dir(&a)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert!(!names.is_empty());
    for name in names {
        let left = std::fs::read(a.join(&name)).unwrap();
        let right = std::fs::read(b.join(&name)).unwrap();
        assert_eq!(left, right, "{name} differs between runs");
    }
    let _ = std::fs::remove_dir_all(&a);
    let _ = std::fs::remove_dir_all(&b);
}
