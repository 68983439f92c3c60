use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn rseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = rseq(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn write_seq(
    dir: &Path,
    name: &str,
    horizon: u64,
    elements: impl IntoIterator<Item = u64>,
) -> PathBuf {
    let mut text = format!("!horizon {horizon}\n");
    for x in elements {
        text.push_str(&format!("{x}\n"));
    }
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn classify_evens_and_squares() {
    let dir = tempfile::tempdir().unwrap();
    let evens = write_seq(dir.path(), "evens.txt", 1000, (0..=1000).step_by(2));
    let r = report(&["classify", p(&evens), "--gap", "2"]);
    assert_eq!(r["syndetic"]["status"], "holds");
    assert_eq!(r["thick"]["status"], "fails");
    assert_eq!(r["density"]["value"], "1/2");
    assert_eq!(r["sequence"]["count"], 501);

    let squares = write_seq(dir.path(), "sq.txt", 10_000, (0..=100).map(|n| n * n));
    for gap in ["2", "10", "150"] {
        let r = report(&["classify", p(&squares), "--gap", gap, "--block", "200"]);
        assert_eq!(r["syndetic"]["status"], "fails", "gap {gap}");
    }
}

#[test]
fn malformed_files_fail_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.txt");
    std::fs::write(&missing, "1\n2\n").unwrap();
    let out = rseq(&["classify", p(&missing)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let unsorted = dir.path().join("unsorted.txt");
    std::fs::write(&unsorted, "!horizon 9\n4\n3\n").unwrap();
    let err = String::from_utf8(rseq(&["classify", p(&unsorted)]).stderr).unwrap();
    assert!(
        err.contains("line 3") && err.contains("3 does not exceed previous element 4"),
        "{err}"
    );
}

#[test]
fn recurrence_examples() {
    let dir = tempfile::tempdir().unwrap();
    let squares = write_seq(dir.path(), "sq.txt", 10_000, (0..=100).map(|n| n * n));
    let r = report(&["recurrence", p(&squares), "cyclic:<=3"]);
    assert_eq!(r["verdict"], "fails");
    assert_eq!(r["witness"], json!([3, 2]));
    assert_eq!(r["per_system"].as_array().unwrap().len(), 3);

    let r = report(&["recurrence", p(&squares), "rot:golden", "--eps", "0.05"]);
    assert_eq!(r["verdict"], "holds");
    assert_eq!(r["config"]["eps"], 0.05);

    let interval = write_seq(dir.path(), "all.txt", 500, 0..=500);
    let r = report(&["recurrence", p(&interval), "cyclic:<=50", "--shifts=-5..5"]);
    assert_eq!(r["verdict"], "holds");
    assert_eq!(r["shift_family"]["status"], "holds");

    let odds = write_seq(dir.path(), "odds.txt", 100, (1..100).step_by(2));
    let r = report(&["recurrence", p(&odds), "cyclic:2", "--birkhoff"]);
    assert_eq!(r["test"], "birkhoff");
    assert_eq!(r["verdict"], "fails");
}

#[test]
fn unknown_system_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let seq = write_seq(dir.path(), "s.txt", 10, [1, 2]);
    let out = rseq(&["recurrence", p(&seq), "torus:3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown system spec"));
    assert_eq!(rseq(&["recurrence"]).status.code(), Some(2));
}

#[test]
fn sequences_read_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rseq"))
        .args(["recurrence", "-", "cyclic:<=5"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"!horizon 20\n0\n5\n10\n15\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["witness"], json!([5, 1]));
}

#[test]
fn permpoly_subcommands() {
    let r = report(&["permpoly", "find-prime", "x^2", "--cap", "100"]);
    assert_eq!((r["p"].as_u64(), r["missing"].as_u64()), (Some(3), Some(2)));
    assert_eq!(r["config"]["prime_cap"], 100);

    let r = report(&["permpoly", "find-prime", "x^3"]);
    assert_eq!(r["p"], 7);

    let r = report(&["permpoly", "check", "x^3", "--p", "5"]);
    assert_eq!(r["hermite"]["permutation"], true);
    assert_eq!(r["agree"], true);

    let r = report(&["permpoly", "check", "x^2 + 1", "--p", "7"]);
    assert_eq!(r["brute"]["permutation"], false);
    assert_eq!(r["agree"], true);

    assert_eq!(
        rseq(&["permpoly", "find-prime", "3x + 1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        rseq(&["permpoly", "check", "x", "--p", "9"]).status.code(),
        Some(1)
    );
}

#[test]
fn product_reports_gcd_and_enumeration() {
    let r = report(&["product", "cyclic:2", "cyclic:3"]);
    assert_eq!(r["verdict"]["status"], "holds");
    assert_eq!(r["gcd_says_transitive"], true);
    assert_eq!(r["enumeration_agrees"], true);

    let r = report(&["product", "cyclic:4", "odo:2^3"]);
    assert_eq!(r["verdict"]["status"], "fails");
    assert_eq!(r["orbit_size"], 8);

    assert_eq!(
        rseq(&["product", "rot:golden", "cyclic:2"]).status.code(),
        Some(1)
    );
}

#[test]
fn construct_writes_sequence_and_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("seq.txt");
    let r = report(&["construct", "example", "--blocks", "30", "--out", p(&seq)]);
    assert_eq!(r["not_piecewise_syndetic"]["status"], "holds");
    assert_eq!(r["shifted_recurrence"]["status"], "holds");
    assert_eq!(r["spacing_law"], true);
    assert_eq!(r["blocks"].as_array().unwrap().len(), 30);

    let text = std::fs::read_to_string(&seq).unwrap();
    assert!(text.starts_with("# IP-block sequence"));
    let back = report(&["classify", p(&seq)]);
    assert_eq!(back["sequence"]["horizon"], r["horizon"]);
    assert_eq!(back["sequence"]["count"], r["count"]);

    let schedule = dir.path().join("schedule.json");
    std::fs::write(&schedule, r#"{"t": [1, 2], "generators": [[1], [1, 2]]}"#).unwrap();
    let r = report(&[
        "construct",
        "example",
        "--schedule",
        p(&schedule),
        "--max-period",
        "3",
        "--shifts",
        "0..0",
    ]);
    assert_eq!(r["horizon"], 7);
    assert_eq!(r["blocks"][1]["min"], 5);
    assert!(r["shifted_recurrence"]["note"]
        .as_str()
        .unwrap()
        .contains("never occur"));
}

#[test]
fn crosscheck_file_and_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let odds = write_seq(dir.path(), "odds.txt", 2000, (1..2000).step_by(2));
    let r = report(&[
        "crosscheck",
        p(&odds),
        "--max-period",
        "4",
        "--shifts=-4..4",
    ]);
    assert_eq!(r["verdict"]["status"], "holds");
    assert!(r["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|row| row["coverage"] == row["shifted_returns"]));

    let r = report(&[
        "crosscheck",
        "--random",
        "12",
        "--horizon",
        "1500",
        "--max-period",
        "6",
        "--shifts=-6..6",
    ]);
    assert_eq!(r["sweep"]["checked"], 12);
    assert_eq!(r["verdict"]["status"], "holds");
    assert_eq!(r["config"]["seed"], 0x5eed);
}

#[test]
fn reports_are_byte_identical_and_embed_config() {
    let dir = tempfile::tempdir().unwrap();
    let seq = write_seq(dir.path(), "s.txt", 3000, (0..3000).filter(|n| n % 7 != 3));
    let runs: [&[&str]; 3] = [
        &["recurrence", p(&seq), "cyclic:<=10", "--shifts=-3..3"],
        &[
            "crosscheck",
            "--random",
            "6",
            "--horizon",
            "1200",
            "--max-period",
            "5",
            "--shifts=-5..5",
            "--seed",
            "99",
        ],
        &[
            "construct",
            "example",
            "--blocks",
            "12",
            "--max-period",
            "5",
        ],
    ];
    for args in runs {
        let a = rseq(args);
        let b = rseq(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let r: Value = serde_json::from_slice(&a.stdout).unwrap();
        for key in [
            "subcommand",
            "inputs",
            "horizon",
            "eps",
            "max_period",
            "shifts",
            "prime_cap",
            "out",
            "seed",
        ] {
            assert!(
                r["config"].get(key).is_some(),
                "{args:?} lacks config.{key}"
            );
        }
    }
}

#[test]
fn text_format_renders_the_json() {
    let out = rseq(&["permpoly", "find-prime", "x^2", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("\np: 3\n") && text.contains("missing: 2"),
        "{text}"
    );
    assert!(text.contains("config:\n"));
}

#[test]
fn report_goes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("r.json");
    let out = rseq(&["product", "cyclic:5", "cyclic:7", "--out", p(&target)]);
    assert!(out.status.success() && out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(r["orbit_size"], 35);
}
