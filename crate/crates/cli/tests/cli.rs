//! End-to-end tests of the `legnet` binary: subcommand behavior, config
//! precedence, exit codes, and bundle determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn legnet(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legnet"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn assert_success(out: &Output) {
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn generate_fixture(dir: &Path) {
    let out = legnet(
        &[
            "generate",
            "--output-dir",
            "data",
            "--n-months",
            "18",
            "--bills-per-month",
            "12",
            "--n-legislators",
            "30",
            "--cosponsors-max",
            "6",
        ],
        dir,
    );
    assert_success(&out);
}

#[test]
fn generate_is_deterministic_and_schema_complete() {
    let tmp = tempfile::tempdir().unwrap();
    generate_fixture(tmp.path());
    let data = tmp.path().join("data");
    for name in ["bills.jsonl", "roster.csv", "aliases.csv"] {
        assert!(data.join(name).exists(), "{name} missing");
    }
    let first = fs::read(data.join("bills.jsonl")).unwrap();

    let tmp2 = tempfile::tempdir().unwrap();
    generate_fixture(tmp2.path());
    let second = fs::read(tmp2.path().join("data/bills.jsonl")).unwrap();
    assert_eq!(first, second, "same seed, same bytes");
}

#[test]
fn run_with_defaults_produces_24_summary_rows() {
    let tmp = tempfile::tempdir().unwrap();
    generate_fixture(tmp.path());
    let out = legnet(
        &[
            "run",
            "--bills-path",
            "data/bills.jsonl",
            "--roster-path",
            "data/roster.csv",
            "--alias-path",
            "data/aliases.csv",
            "--output-dir",
            "out",
        ],
        tmp.path(),
    );
    assert_success(&out);
    let summary = fs::read_to_string(tmp.path().join("out/summary.csv")).unwrap();
    let data_rows = summary
        .lines()
        .filter(|l| !l.starts_with("measure,") && !l.starts_with('#') && !l.is_empty())
        .count();
    assert_eq!(data_rows, 24, "3 half-lives x 4 measures x 2 aggregations");
    assert!(summary.lines().last().unwrap().starts_with("# provenance"));
}

#[test]
fn measure_and_aggregation_filters_shrink_the_summary() {
    let tmp = tempfile::tempdir().unwrap();
    generate_fixture(tmp.path());
    let out = legnet(
        &[
            "run",
            "--bills-path",
            "data/bills.jsonl",
            "--roster-path",
            "data/roster.csv",
            "--output-dir",
            "out",
            "--measures",
            "strength",
            "--aggregations",
            "max",
        ],
        tmp.path(),
    );
    assert_success(&out);
    let summary = fs::read_to_string(tmp.path().join("out/summary.csv")).unwrap();
    let rows: Vec<&str> = summary
        .lines()
        .filter(|l| l.starts_with("strength,"))
        .collect();
    assert_eq!(rows.len(), 3, "one row per half-life");
    assert!(
        summary
            .lines()
            .filter(|l| l.starts_with("influence,"))
            .count()
            == 0
    );
}

#[test]
fn identical_runs_produce_byte_identical_bundles() {
    let tmp = tempfile::tempdir().unwrap();
    generate_fixture(tmp.path());
    let run = |out_dir: &str| {
        let out = legnet(
            &[
                "run",
                "--bills-path",
                "data/bills.jsonl",
                "--roster-path",
                "data/roster.csv",
                "--output-dir",
                out_dir,
                "--half-lives",
                "6,12",
                "--plots",
                "--export-series",
            ],
            tmp.path(),
        );
        assert_success(&out);
    };
    run("out_a");
    run("out_b");
    let mut names: Vec<String> = fs::read_dir(tmp.path().join("out_a"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert!(names.len() > 10);
    for name in names {
        let a = fs::read(tmp.path().join("out_a").join(&name)).unwrap();
        let b = fs::read(tmp.path().join("out_b").join(&name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
}

#[test]
fn summarize_reports_per_congress_rows() {
    let tmp = tempfile::tempdir().unwrap();
    let bills = r#"{"bill_id":"hr1","congress":111,"chamber":"House","bill_type":"Bill","introduced_date":"2009-02-01","sponsor_id":"a","cosponsor_ids":["b","c"],"passed_house":true,"passed_house_date":"2009-03-01","enacted":false}
{"bill_id":"hr2","congress":111,"chamber":"House","bill_type":"Bill","introduced_date":"2009-03-01","sponsor_id":"a","cosponsor_ids":["b","c"],"passed_house":false,"enacted":false}
"#;
    fs::write(tmp.path().join("bills.jsonl"), bills).unwrap();
    let out = legnet(
        &[
            "summarize",
            "--bills-path",
            "bills.jsonl",
            "--output-dir",
            "out",
        ],
        tmp.path(),
    );
    assert_success(&out);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        stdout.contains("111,2,50.00,0.00,3.00,3,2.00,2"),
        "got: {stdout}"
    );
    assert!(tmp.path().join("out/summary_table.csv").exists());
}

#[test]
fn summarize_of_empty_input_is_an_empty_table() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("bills.jsonl"), "").unwrap();
    let out = legnet(
        &[
            "summarize",
            "--bills-path",
            "bills.jsonl",
            "--output-dir",
            "out",
        ],
        tmp.path(),
    );
    assert_success(&out);
    let table = fs::read_to_string(tmp.path().join("out/summary_table.csv")).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines.len(), 2, "header and footer only: {table}");
}

#[test]
fn config_file_applies_and_flags_take_precedence() {
    let tmp = tempfile::tempdir().unwrap();
    generate_fixture(tmp.path());
    fs::write(
        tmp.path().join("run.conf"),
        "half-lives = 6\nmeasures = strength\nwindow_months = 6\n",
    )
    .unwrap();
    let out = legnet(
        &[
            "run",
            "--config",
            "run.conf",
            "--bills-path",
            "data/bills.jsonl",
            "--roster-path",
            "data/roster.csv",
            "--output-dir",
            "out",
            "--measures",
            "closeness",
        ],
        tmp.path(),
    );
    assert_success(&out);
    let summary = fs::read_to_string(tmp.path().join("out/summary.csv")).unwrap();
    assert_eq!(
        summary
            .lines()
            .filter(|l| l.starts_with("closeness,"))
            .count(),
        2
    );
    assert_eq!(
        summary
            .lines()
            .filter(|l| l.starts_with("strength,"))
            .count(),
        0
    );
    assert!(
        summary.contains("closeness,mean,6,"),
        "file half-life applies"
    );
}

#[test]
fn usage_errors_exit_1() {
    let tmp = tempfile::tempdir().unwrap();
    let out = legnet(&["run", "--no-such-flag"], tmp.path());
    assert_eq!(out.status.code(), Some(1));

    // Missing required input path is also a usage problem.
    let out = legnet(&["run", "--output-dir", "out"], tmp.path());
    assert_eq!(out.status.code(), Some(1));

    let out = legnet(
        &["run", "--half-lives", "-3", "--bills-path", "x"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn data_errors_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let out = legnet(
        &[
            "run",
            "--bills-path",
            "missing.jsonl",
            "--roster-path",
            "missing.csv",
            "--output-dir",
            "out",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_0() {
    let tmp = tempfile::tempdir().unwrap();
    let out = legnet(&["--help"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("summarize"));
    assert!(stdout.contains("generate"));
}

#[test]
fn pooled_mode_runs() {
    let tmp = tempfile::tempdir().unwrap();
    generate_fixture(tmp.path());
    let out = legnet(
        &[
            "run",
            "--bills-path",
            "data/bills.jsonl",
            "--roster-path",
            "data/roster.csv",
            "--output-dir",
            "out",
            "--half-lives",
            "6",
            "--measures",
            "influence",
            "--rel-diff-mode",
            "pooled",
        ],
        tmp.path(),
    );
    assert_success(&out);
    let summary = fs::read_to_string(tmp.path().join("out/summary.csv")).unwrap();
    for line in summary.lines().filter(|l| l.starts_with("influence,")) {
        assert!(
            line.contains(",nan,"),
            "pooled se is reported as nan: {line}"
        );
    }
}
