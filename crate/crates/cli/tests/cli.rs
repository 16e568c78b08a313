//! End-to-end checks of the `ddelta` binary: output shapes, determinism,
//! config merging, cache behavior, exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ddelta"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn ddelta")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "ddelta {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn moment_rows_carry_ratio_column() {
    let text = stdout(&["moment", "--k", "2", "--grid", "1e3,2e3", "--y", "64"]);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# ddelta moment schema=1"));
    assert_eq!(lines.next().unwrap(), "k,signed,t,empirical,predicted,ratio,slope");
    let data: Vec<&str> = lines.collect();
    assert_eq!(data.len(), 2);
    for row in data {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 7);
        let ratio: f64 = cols[5].parse().unwrap();
        assert!(ratio > 0.1 && ratio < 10.0, "odd ratio in {row}");
    }
}

#[test]
fn series_row_matches_library_value() {
    let text = stdout(&["series", "--k", "3", "--l", "1", "--y", "4"]);
    let last = text.lines().last().unwrap();
    let cols: Vec<&str> = last.split(',').collect();
    let value: f64 = cols[3].parse().unwrap();
    assert!((value - 3.0 / 4f64.powf(0.75)).abs() < 1e-12);
    assert_eq!(cols[4], "1");
}

#[test]
fn bump_check_reports_zero_violations() {
    let text = stdout(&[
        "bump", "--a", "1.2", "--delta", "0.2", "--smooth", "4", "--check-grid",
        "log:1e-3:1e6:200",
    ]);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 200);
    assert!(rows.iter().all(|r| r.ends_with(",true")), "bound violation found");
}

#[test]
fn identical_runs_are_byte_identical_across_thread_counts() {
    let a = stdout(&["--threads", "1", "moment", "--k", "7", "--grid", "1e3,3e3", "--y", "16"]);
    let b = stdout(&["--threads", "2", "moment", "--k", "7", "--grid", "1e3,3e3", "--y", "16"]);
    assert_eq!(a, b);
    let c = stdout(&["--threads", "2", "moment", "--k", "7", "--grid", "1e3,3e3", "--y", "16"]);
    assert_eq!(b, c);
}

#[test]
fn config_provides_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "k = 3\nl = 1\ny = 4\n").unwrap();
    let from_config = stdout(&["--config", conf.to_str().unwrap(), "series"]);
    assert!(from_config.contains("3,1,4,"), "config defaults ignored: {from_config}");
    // explicit flag beats the config value
    let overridden = stdout(&["--config", conf.to_str().unwrap(), "series", "--y", "9"]);
    assert!(overridden.contains("3,1,9,"), "flag did not override config: {overridden}");
}

#[test]
fn unknown_config_key_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "nonsense = 12\n").unwrap();
    let out = run(&["--config", conf.to_str().unwrap(), "series", "--k", "2", "--l", "1", "--y", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("nonsense"), "error must name the key: {err}");
}

#[test]
fn usage_resource_and_cache_exit_codes() {
    // usage: invalid series split
    let out = run(&["series", "--k", "4", "--l", "4", "--y", "8"]);
    assert_eq!(out.status.code(), Some(2));

    // resource: sieve beyond the memory budget
    let out = run(&["sieve", "--limit", "4000000000"]);
    assert_eq!(out.status.code(), Some(3));

    // cache integrity: corrupt a sieve cache payload byte
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let out = run(&["--cache-dir", cache, "sieve", "--limit", "1000", "--use-cache"]);
    assert!(out.status.success());
    let file = find_only_file(dir.path(), "ddt");
    let mut bytes = std::fs::read(&file).unwrap();
    let n = bytes.len();
    bytes[n - 1] ^= 0xff;
    std::fs::write(&file, bytes).unwrap();
    let out = run(&["--cache-dir", cache, "sieve", "--limit", "1000", "--use-cache"]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1000"), "error must name the file: {err}");
}

#[test]
fn cache_deletion_reproduces_identical_results() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--cache-dir", cache, "series", "--k", "4", "--l", "2", "--y", "12", "--route", "stream"];
    let first = stdout(&args);
    let second = stdout(&args); // cache hit
    assert_eq!(first, second);
    let tuple_file = find_only_file(dir.path(), "bin");
    std::fs::remove_file(tuple_file).unwrap();
    let third = stdout(&args); // rebuilt
    assert_eq!(first, third);
}

#[test]
fn json_output_is_versioned() {
    let text = stdout(&["--format", "json", "delta", "--at", "2"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["rows"][0]["summatory_d"], 3);
}

#[test]
fn gnuplot_output_is_numeric_columns() {
    let text = stdout(&["--format", "gnuplot", "delta", "--at", "2,3"]);
    let data: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(data.len(), 2);
    for line in data {
        for field in line.split(' ') {
            field.parse::<f64>().expect("numeric gnuplot field");
        }
    }
}

#[test]
fn count_regression_runs_clean() {
    let text = stdout(&["--seed", "31415", "count", "--mode", "regression", "--boxes", "10"]);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

fn find_only_file(dir: &Path, ext: &str) -> std::path::PathBuf {
    let mut hits: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    assert_eq!(hits.len(), 1, "expected one .{ext} file in {dir:?}");
    hits.pop().unwrap()
}
