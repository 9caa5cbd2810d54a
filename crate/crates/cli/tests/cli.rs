//! End-to-end tests of the `posmon` binary: exit codes, report schema,
//! round-tripping, output formats, config merging and the cache.

use std::path::Path;
use std::process::Command;

use posmon_cli::cache::cache_key;
use posmon_cli::report::{Outcome, Report};
use serde_json::Value;

fn run_in(args: &[&str], env: &[(&str, &Path)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_posmon"));
    cmd.args(args).env_remove("POSMON_CACHE_DIR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("failed to run posmon");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_in(args, &[])
}

fn json(args: &[&str]) -> Value {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "stderr: {stderr}");
    serde_json::from_str(&stdout).expect("valid JSON")
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[test]
fn factorize_explicit_six() {
    let v = json(&["factorize", "--family", "explicit", "--gens", "2,3", "--x", "6"]);
    assert_eq!(v["schema"], "posmon-report/1");
    assert_eq!(v["query"]["command"], "factorize");
    assert_eq!(v["query"]["x"], "6");
    assert_eq!(v["completeness"], "complete");
    assert_eq!(v["truncation"]["kind"], "none");
    assert_eq!(v["factorizations"], serde_json::json!([[["2", 3]], [["3", 2]]]));
    assert_eq!(v["lengths"], serde_json::json!([2, 3]));
}

#[test]
fn gens_alone_implies_explicit() {
    let a = json(&["factorize", "--gens", "2,3", "--x", "6"]);
    let b = json(&["factorize", "--family", "explicit", "--gens", "2,3", "--x", "6"]);
    assert_eq!(a, b);
}

#[test]
fn rationals_are_strings_everywhere() {
    let v = json(&[
        "factorize",
        "--family",
        "grams",
        "--k",
        "6",
        "--x",
        "13/30",
        "--max-len",
        "4",
    ]);
    assert_eq!(v["factorizations"], serde_json::json!([[["1/10", 1], ["1/3", 1]]]));
    assert_eq!(v["completeness"], "truncation-bounded");
    let (code, csv, _) = run(&[
        "factorize",
        "--family",
        "grams",
        "--k",
        "6",
        "--x",
        "13/30",
        "--max-len",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(csv, "length,factorization\n2,1/10 + 1/3\n");
}

#[test]
fn length_slices_of_the_conductor() {
    let v = json(&[
        "factorize",
        "--family",
        "conductor",
        "--max-den",
        "3",
        "--x",
        "3",
        "--length",
        "2",
    ]);
    assert_eq!(
        v["factorizations"],
        serde_json::json!([[["4/3", 1], ["5/3", 1]], [["3/2", 2]]])
    );
}

#[test]
fn bf_certificate() {
    let v = json(&["check", "bf", "--family", "unit-fractions", "--max-prime", "13"]);
    assert_eq!(v["kind"], "certificate");
    assert_eq!(v["claim"], "bf-fails");
    assert_eq!(v["verified"], true);
    assert_eq!(v["witness"]["lengths"], serde_json::json!([2, 3, 5, 7, 11, 13]));
}

#[test]
fn lengths_and_atoms() {
    let v = json(&["lengths", "--gens", "2,3", "--x", "12"]);
    assert_eq!(v["lengths"], serde_json::json!([4, 5, 6]));
    let v = json(&["atoms", "--family", "grams", "--k", "4"]);
    assert_eq!(v["atoms"], serde_json::json!(["1/3", "1/10", "1/28", "1/88"]));
    assert_eq!(v["method"], "p-adic-certificate");
    assert_eq!(v["certificates"][2]["prime"], 7);
    let v = json(&["atoms", "--gens", "4,6,10,12"]);
    assert_eq!(v["atoms"], serde_json::json!(["4", "6"]));
}

#[test]
fn contains_reports_atomicity() {
    let v = json(&["contains", "--family", "sring", "--r", "2", "--x", "5/2"]);
    assert_eq!(v["membership"]["member"], true);
    assert_eq!(v["atom"], true);
    let v = json(&["contains", "--family", "sring", "--r", "2", "--x", "3/2"]);
    assert_eq!(v["membership"]["member"], false);
    assert_eq!(v["atom"], Value::Null);
}

#[test]
fn semiring_commands() {
    let v = json(&["semiring", "mul", "--gens", "2,3", "--f", "1+x^2", "--g", "1+x^3"]);
    assert_eq!(v["product"]["text"], "x^5 + x^3 + x^2 + 1");
    assert_eq!(v["stats"]["eval_at_one"], "4");
    let v = json(&[
        "semiring",
        "div",
        "--gens",
        "2,3",
        "--f",
        "x^5+x^3+x^2+1",
        "--g",
        "x^2+1",
    ]);
    assert_eq!(v["quotient"]["text"], "x^3 + 1");
    let v = json(&["semiring", "div", "--gens", "2,3", "--f", "x^5+1", "--g", "x^2+1"]);
    assert_eq!(v["quotient"], Value::Null);
    let v = json(&["semiring", "irreducible", "--gens", "2,3", "--f", "1+x^2+x^3+x^5"]);
    assert_eq!(v["irreducible"], false);
    let v = json(&["semiring", "factor", "--gens", "2,3", "--f", "x^6"]);
    assert_eq!(v["lengths"], serde_json::json!([2, 3]));
    let v = json(&[
        "semiring",
        "eval",
        "--f",
        "2*x^(1/2)",
        "--gens",
        "1/2",
        "--digits",
        "10",
    ]);
    assert_eq!(v["value"], "3.297442541");
}

#[test]
fn sequence_commands() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    std::fs::write(&a, "1\n3\n# comment\n2\n4\n").unwrap();
    std::fs::write(&b, "1/2\n1/2\n1/2\n1/2\n").unwrap();
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());
    let v = json(&["seq", "lis", "--input", a]);
    assert_eq!(v["indices"], serde_json::json!([0, 1, 3]));
    assert_eq!(v["values"], serde_json::json!(["1", "3", "4"]));
    let v = json(&["seq", "lwd", "--input", a]);
    assert_eq!(v["values"], serde_json::json!(["3", "2"]));
    let v = json(&["seq", "sum", "--input", a, "--input", b]);
    assert_eq!(v["terms"], serde_json::json!(["3/2", "7/2", "5/2", "9/2"]));
    let v = json(&["seq", "monotone", "--input", a, "--r", "3", "--t", "2"]);
    assert_eq!(v["witness"]["kind"], "weakly-decreasing");
}

#[test]
fn paper_examples_pass() {
    let v = json(&["paper-examples"]);
    assert_eq!(v["all_verified"], true);
    let examples = v["examples"].as_array().unwrap();
    assert!(examples.len() >= 20);
    assert!(examples.iter().all(|e| e["certificate"]["verified"] == true));
}

#[test]
fn every_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("s.txt");
    std::fs::write(&seq, "4\n3\n2\n1\n5\n").unwrap();
    let seq = seq.to_str().unwrap();
    let commands: &[&[&str]] = &[
        &["factorize", "--gens", "2,3", "--x", "12"],
        &[
            "factorize",
            "--family",
            "power",
            "--q",
            "2/3",
            "--k",
            "6",
            "--x",
            "2",
            "--length",
            "3",
        ],
        &["lengths", "--family", "grams", "--k", "5", "--x", "1", "--max-len", "6"],
        &["atoms", "--family", "alternating", "--k", "5"],
        &["atoms", "--family", "conductor", "--max-den", "3", "--upper", "2"],
        &["contains", "--family", "grams", "--k", "4", "--x", "1/2"],
        &["check", "accp", "--family", "grams", "--n-max", "4"],
        &["check", "lff", "--family", "sring", "--r", "2", "--max-den", "4"],
        &["check", "ffm-bound", "--x", "4/3"],
        &["check", "classify", "--family", "unit-fractions"],
        &["semiring", "mul", "--f", "1+x", "--g", "1+x"],
        &["semiring", "irreducible", "--gens", "2,3", "--f", "2*x^2+2*x^3"],
        &["semiring", "factor", "--f", "x^2+2*x+1"],
        &["semiring", "eval", "--f", "1+x"],
        &["seq", "monotone", "--input", seq, "--r", "2", "--t", "4"],
        &["paper-examples"],
    ];
    for args in commands {
        let (code, stdout, stderr) = run(args);
        assert_eq!(code, 0, "{args:?}: {stderr}");
        let report: Report = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(report.to_json(), stdout, "{args:?} does not re-serialize identically");
        assert!(report.outcome.verification_failures().is_empty());
    }
}

// ---------------------------------------------------------------------------
// Usage errors
// ---------------------------------------------------------------------------

#[test]
fn dense_family_needs_a_bound() {
    let (code, _, stderr) = run(&["factorize", "--family", "conductor", "--x", "3", "--length", "2"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("dense family requires --max-den"), "{stderr}");
}

#[test]
fn usage_errors_name_the_flag() {
    let cases: &[(&[&str], &str)] = &[
        (&["factorize", "--family", "grams", "--x", "1"], "--k"),
        (&["factorize", "--family", "grams", "--k", "3"], "--x"),
        (&["factorize", "--family", "grams", "--k", "3", "--x", "one"], "--x"),
        (
            &["factorize", "--family", "grams", "--k", "3", "--r", "2", "--x", "1"],
            "--r",
        ),
        (&["factorize", "--family", "power", "--k", "3", "--x", "1"], "--q"),
        (&["lengths", "--family", "grams", "--k", "3", "--x", "1"], "--max-len"),
        (&["check", "bf"], "--max-prime"),
        (&["check", "accp", "--family", "conductor"], "--family"),
        (&["check", "lff", "--family", "sring", "--r", "2"], "--max-den"),
        (&["semiring", "mul", "--f", "1+x"], "--g"),
        (&["semiring", "mul", "--gens", "2,3", "--f", "1+x", "--g", "1"], "--f"),
        (&["seq", "lis"], "--input"),
        (&["factorize", "--bogus"], "--bogus"),
    ];
    for (args, flag) in cases {
        let (code, _, stderr) = run(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(stderr.contains(flag), "{args:?}: {stderr}");
    }
}

#[test]
fn domain_errors_exit_one() {
    let (code, _, stderr) = run(&["check", "accp", "--family", "power", "--q", "1/2"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("1/q"), "{stderr}");
    let (code, _, stderr) = run(&["factorize", "--gens", "2,3", "--x", "1"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("not a member"), "{stderr}");
}

#[test]
fn help_and_version_exit_zero() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("paper-examples"));
    assert_eq!(run(&["--version"]).0, 0);
}

// ---------------------------------------------------------------------------
// Formats
// ---------------------------------------------------------------------------

#[test]
fn table_truncates_at_row_cap() {
    let (code, stdout, _) = run(&["factorize", "--gens", "1", "--x", "3", "--format", "table"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("completeness:  complete"));
    let args = [
        "factorize",
        "--gens",
        "3,5,7",
        "--x",
        "40",
        "--format",
        "table",
        "--row-cap",
        "5",
    ];
    let (code, stdout, _) = run(&args);
    assert_eq!(code, 0);
    let v = json(&["factorize", "--gens", "3,5,7", "--x", "40"]);
    let total = v["factorizations"].as_array().unwrap().len();
    assert!(total > 5);
    assert!(stdout.contains(&format!("… and {} more", total - 5)), "{stdout}");
    let (_, csv, _) = run(&[
        "factorize",
        "--gens",
        "3,5,7",
        "--x",
        "40",
        "--format",
        "csv",
        "--row-cap",
        "5",
    ]);
    assert_eq!(csv.lines().count(), total + 1, "CSV is never truncated");
}

#[test]
fn output_is_byte_stable() {
    let args = ["check", "classify", "--family", "grams"];
    assert_eq!(run(&args).1, run(&args).1);
    let a = run(&["factorize", "--gens", "3,5,7", "--x", "40"]).1;
    let b = run(&["factorize", "--gens", "3,5,7", "--x", "40", "--parallel"]).1;
    assert_eq!(a, b);
}

// ---------------------------------------------------------------------------
// Config file
// ---------------------------------------------------------------------------

#[test]
fn config_file_is_merged_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("posmon.toml");
    std::fs::write(
        &cfg,
        "family = \"explicit\"\ngens = \"2,3\"\nx = \"6\"\nformat = \"csv\"\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let (code, stdout, _) = run(&["factorize", "--config", cfg]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "length,factorization\n3,3*2\n2,2*3\n");
    let (code, stdout, _) = run(&["factorize", "--config", cfg, "--x", "7", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["query"]["x"], "7");
    assert_eq!(v["lengths"], serde_json::json!([3]));
}

#[test]
fn config_file_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "colour = \"blue\"\n").unwrap();
    let (code, _, stderr) = run(&["factorize", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("--config") && stderr.contains("colour"), "{stderr}");
    let (code, _, stderr) = run(&["factorize", "--config", "/nonexistent/posmon.toml"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("--config"), "{stderr}");
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

#[test]
fn cache_replays_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["factorize", "--gens", "2,3", "--x", "10", "--cache-dir", d];
    let (c1, out1, err1) = run(&args);
    let (c2, out2, err2) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(out1, out2);
    assert!(!err1.contains("cache hit"));
    assert!(err2.contains("cache hit"), "{err2}");
    let (_, _, err3) = run(&[
        "factorize",
        "--gens",
        "2,3",
        "--x",
        "10",
        "--cache-dir",
        d,
        "--no-cache",
    ]);
    assert!(!err3.contains("cache hit"));
    // table output replays from the same entry
    let (_, _, err4) = run(&[
        "factorize",
        "--gens",
        "2,3",
        "--x",
        "10",
        "--cache-dir",
        d,
        "--format",
        "table",
    ]);
    assert!(err4.contains("cache hit"));
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["lengths", "--gens", "3,4", "--x", "24"];
    run_in(&args, &[("POSMON_CACHE_DIR", dir.path())]);
    let (_, _, stderr) = run_in(&args, &[("POSMON_CACHE_DIR", dir.path())]);
    assert!(stderr.contains("cache hit"), "{stderr}");
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn differing_truncations_have_differing_keys() {
    let key = |k: &str| {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap().to_owned();
        let args = ["atoms", "--family", "grams", "--k", k, "--cache-dir", &d];
        let (_, stdout, _) = run(&args);
        let report: Report = serde_json::from_str(&stdout).unwrap();
        cache_key(&report.query)
    };
    assert_ne!(key("3"), key("4"));
    assert_eq!(key("3"), key("3"));
}

#[test]
fn corrupt_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["check", "ffm-bound", "--x", "11/6", "--cache-dir", d];
    let (_, good, _) = run(&args);
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "{ not json").unwrap();
    let (code, out, stderr) = run(&args);
    assert_eq!(code, 0);
    assert!(stderr.contains("warning: corrupt cache entry"), "{stderr}");
    assert_eq!(out, good);
    assert_eq!(std::fs::read_to_string(&entry).unwrap(), good, "entry overwritten");
}

#[test]
fn tampered_certificate_in_cache_is_not_trusted() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["check", "bf", "--max-prime", "5", "--cache-dir", d];
    let (_, good, _) = run(&args);
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut report: Report = serde_json::from_str(&good).unwrap();
    if let Outcome::Certificate(c) = &mut report.outcome {
        if let posmon_core::checkers::Witness::LengthSet { lengths, .. } = &mut c.witness {
            lengths.push(4);
        }
    }
    std::fs::write(&entry, report.to_json()).unwrap();
    let (code, out, stderr) = run(&args);
    assert_eq!(code, 0);
    assert!(stderr.contains("failed re-verification"), "{stderr}");
    assert_eq!(out, good);
}
