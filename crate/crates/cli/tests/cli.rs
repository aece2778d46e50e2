use std::fs;
use std::process::{Command, Output};

fn slice_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slice-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn orbits_report_is_deterministic_json() {
    let a = slice_lab(&["orbits"]);
    let b = slice_lab(&["orbits"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("\"name\": \"orbits.n4.dim_G\""));
    assert!(text.contains("\"fail\": 0"));
}

#[test]
fn fibers_markdown_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fibers.md");
    let out = slice_lab(&["fibers", "--format", "md", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("## fibers\n"));
    assert!(text.contains("| fibers.table.O5b.cardinality |"));
    assert!(text.trim_end().ends_with("passed, 0 failed, 0 skipped"));
}

#[test]
fn proptests_depend_only_on_the_seed() {
    let dir = tempfile::tempdir().unwrap();
    let run = |seed: &str, name: &str| {
        let path = dir.path().join(name);
        let out = slice_lab(&["proptests", "--seed", seed, "--out", path.to_str().unwrap()]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        fs::read(path).unwrap()
    };
    assert_eq!(run("7", "a.json"), run("7", "b.json"));
}

#[test]
fn configuration_errors_exit_with_2() {
    assert_eq!(
        slice_lab(&["orbits", "--height", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        slice_lab(&["slices", "--workers", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        slice_lab(&["orbits", "--format", "yaml"]).status.code(),
        Some(2)
    );
    assert_eq!(slice_lab(&["unknown"]).status.code(), Some(2));
    let missing = slice_lab(&["orbits", "--out", "/nonexistent-dir/report.json"]);
    assert_eq!(missing.status.code(), Some(2));
}
