//! End-to-end tests of the `cycloprime` binary: exit codes, report
//! formats, and table determinism.

use cycloprime_cli::Report;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cycloprime"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn exit_codes_follow_the_verdict() {
    assert_eq!(exit_code(&run(&["test", "--p", "3", "--n", "2"])), 0);
    assert_eq!(exit_code(&run(&["test", "--p", "5", "--n", "3"])), 1);
    assert_eq!(exit_code(&run(&["test", "--p", "3", "--n", "0"])), 3);
    assert_eq!(exit_code(&run(&["test", "--p", "4", "--n", "1"])), 3);
    assert_eq!(exit_code(&run(&["test", "--p", "3"])), 3); // missing --n
    assert_eq!(exit_code(&run(&["nonsense"])), 3);
}

#[test]
fn desk_scale_guard_requires_force() {
    assert_eq!(exit_code(&run(&["test", "--p", "3", "--n", "17"])), 3);
    assert_eq!(
        exit_code(&run(&["search", "--p", "3", "--n-min", "1", "--n-max", "17"])),
        3
    );
}

#[test]
fn recurrence_mode_needs_p3_or_p5() {
    assert_eq!(
        exit_code(&run(&["test", "--p", "7", "--n", "2", "--mode", "recurrence"])),
        3
    );
    assert_eq!(
        exit_code(&run(&["test", "--p", "7", "--n", "2", "--mode", "general"])),
        1
    );
}

#[test]
fn json_report_round_trips_byte_identical() {
    let output = run(&["test", "--p", "3", "--n", "3", "--json"]);
    assert_eq!(exit_code(&output), 1);
    let text = stdout(&output);
    let json_line = text.lines().nth(1).expect("json line");
    let parsed: Report = serde_json::from_str(json_line).expect("valid report json");
    assert_eq!(serde_json::to_string(&parsed).unwrap(), json_line);
    assert_eq!(parsed.verdict, "composite");
    assert_eq!(parsed.mode, "recurrence-p3");
    assert_eq!(parsed.iterations, 7);
}

#[test]
fn search_csv_is_stable_apart_from_timing() {
    let dir = std::env::temp_dir();
    let path_a = dir.join("cycloprime-search-a.csv");
    let path_b = dir.join("cycloprime-search-b.csv");
    for path in [&path_a, &path_b] {
        let output = run(&[
            "search",
            "--p",
            "3",
            "--n-min",
            "1",
            "--n-max",
            "10",
            "--report",
            path.to_str().unwrap(),
            "--format",
            "csv",
        ]);
        assert_eq!(exit_code(&output), 0);
    }
    let strip_time = |text: String| -> Vec<String> {
        text.lines()
            .map(|line| line.rsplit_once(',').map(|(head, _)| head.to_string()).unwrap())
            .collect()
    };
    let a = strip_time(std::fs::read_to_string(&path_a).unwrap());
    let b = strip_time(std::fs::read_to_string(&path_b).unwrap());
    assert_eq!(a, b);
    assert_eq!(a[0], "n,primality");
    assert_eq!(a[1], "1,yes");
    assert_eq!(a[2], "2,yes");
    for row in &a[3..] {
        assert!(row.ends_with(",no"), "row {row} should be composite");
    }
    let _ = std::fs::remove_file(path_a);
    let _ = std::fs::remove_file(path_b);
}

#[test]
fn single_test_report_files() {
    let json_path = std::env::temp_dir().join("cycloprime-single.json");
    let out = run(&[
        "test", "--p", "7", "--n", "1", "--report", json_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let parsed: Report =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(parsed.verdict, "prime"); // 197
    assert_eq!(parsed.table_covered, Some(false)); // below the table's n range

    let csv_path = std::env::temp_dir().join("cycloprime-single.csv");
    let out = run(&[
        "test", "--p", "5", "--n", "2",
        "--report", csv_path.to_str().unwrap(), "--format", "csv",
    ]);
    assert_eq!(exit_code(&out), 1);
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,primality,time_s");
    assert!(lines[1].starts_with("2,no,"));

    let _ = std::fs::remove_file(json_path);
    let _ = std::fs::remove_file(csv_path);
}

#[test]
fn search_csv_header_matches_contract() {
    let path = std::env::temp_dir().join("cycloprime-header.csv");
    run(&[
        "search", "--p", "5", "--n-min", "1", "--n-max", "3",
        "--report", path.to_str().unwrap(), "--format", "csv",
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,primality,time_s\n"));
    let _ = std::fs::remove_file(path);
}

#[test]
fn search_json_report_parses_as_reports() {
    let path = std::env::temp_dir().join("cycloprime-search.json");
    let output = run(&[
        "search", "--p", "5", "--n-min", "1", "--n-max", "4", "--workers", "2",
        "--report", path.to_str().unwrap(), "--format", "json",
    ]);
    assert_eq!(exit_code(&output), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let reports: Vec<Report> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), 4);
    assert_eq!(reports[0].verdict, "prime");
    assert!(reports[1..].iter().all(|r| r.verdict == "composite"));
    assert!(reports.windows(2).all(|w| w[0].n < w[1].n), "rows in n order");
    let _ = std::fs::remove_file(path);
}

#[test]
fn search_human_table_shows_m_or_dash() {
    let output = run(&["search", "--p", "3", "--n-min", "1", "--n-max", "4"]);
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("n"));
    assert!(lines[1].contains("37") && lines[1].contains("yes"));
    assert!(lines[2].contains("1297"));
    assert!(lines[3].contains('-') && lines[3].contains("no"));
}

#[test]
fn verify_agrees_on_small_ranges() {
    let out = run(&["verify", "--p", "3", "--n-min", "1", "--n-max", "8", "--workers", "2"]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("8 of 8 values agree"));

    let out = run(&["verify", "--p", "7", "--n-min", "2", "--n-max", "6", "--seed", "42"]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));

    let out = run(&["verify", "--p", "13", "--n-min", "2", "--n-max", "6", "--workers", "3"]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
}

#[test]
fn baseline_exit_codes() {
    assert_eq!(exit_code(&run(&["baseline", "lucas-lehmer", "7"])), 0);
    assert_eq!(exit_code(&run(&["baseline", "lucas-lehmer", "11"])), 1);
    assert_eq!(exit_code(&run(&["baseline", "pepin", "5"])), 1);
    assert_eq!(exit_code(&run(&["baseline", "pepin", "0"])), 3);
    assert_eq!(exit_code(&run(&["baseline", "lucas-lehmer", "9"])), 3);
}

#[test]
fn baseline_json_report() {
    let output = run(&["baseline", "pepin", "4", "--json"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    let parsed: Report = serde_json::from_str(text.lines().nth(1).unwrap()).unwrap();
    assert_eq!(parsed.kind, "pepin");
    assert_eq!(parsed.verdict, "prime");
    assert_eq!(parsed.digits, 5); // 65537
}

#[test]
fn help_exits_zero() {
    assert_eq!(exit_code(&run(&["--help"])), 0);
    assert_eq!(exit_code(&run(&["test", "--help"])), 0);
}
