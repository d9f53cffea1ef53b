use std::path::Path;
use std::process::{Command, Output};

use ripp_cli::doc::ProblemDocument;
use ripp_cli::report::{EvaluateReport, ReversalReport, SimulationReport, WealthReport};
use ripp_core::{Case, Preference, Threshold};

fn ripp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ripp")).args(args).output().unwrap()
}

fn stdout_of(args: &[&str]) -> String {
    let out = ripp(args);
    assert!(
        out.status.success(),
        "ripp {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    ripp(args).status.code().unwrap()
}

const WORKED: &str = r#"{
  "t0": 0, "t_a": 1, "t_b": 2, "dx_a": 1000, "dx_b": 2500, "wealth0": 500,
  "dynamics": {"type": "multiplicative", "rate": 0.03},
  "time_frame": "adaptive"
}"#;

fn write_doc(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn evaluate_worked_example_from_document() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write_doc(dir.path(), "p.json", WORKED);
    let report: EvaluateReport = serde_json::from_str(&stdout_of(&["evaluate", &doc, "--json"])).unwrap();
    assert_eq!(report.case, Case::D);
    assert_eq!(report.preference, Preference::EarlierPreferred);
    assert!((report.g_a.value - 1.108712619476503).abs() < 1e-11);
    assert!((report.g_b.value - 0.9010064073268515).abs() < 1e-11);
    let x_pr = report.thresholds.iter().find_map(|t| match t {
        Threshold::Wealth { x_pr } => Some(*x_pr),
        _ => None,
    });
    assert!((x_pr.unwrap() - 2277.4325929105626).abs() < 1e-6);

    let rich: EvaluateReport =
        serde_json::from_str(&stdout_of(&["evaluate", &doc, "--wealth0", "5500", "--json"])).unwrap();
    assert_eq!(rich.preference, Preference::LaterPreferred);
}

#[test]
fn evaluate_from_flags_matches_document() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write_doc(dir.path(), "p.json", WORKED);
    let flags = stdout_of(&[
        "evaluate",
        "--t-a",
        "1",
        "--t-b",
        "2",
        "--dx-a",
        "1000",
        "--dx-b",
        "2500",
        "--wealth0",
        "500",
        "--dynamics",
        "multiplicative",
        "--rate",
        "0.03",
        "--frame",
        "adaptive",
    ]);
    assert_eq!(flags, stdout_of(&["evaluate", &doc]));
    assert!(flags.contains("g_a = 1.1087 1/yr"), "{flags}");
}

#[test]
fn case_a_reports_no_discounting() {
    let text = stdout_of(&[
        "evaluate",
        "--t-a",
        "1",
        "--t-b",
        "2",
        "--dx-a",
        "100",
        "--dx-b",
        "200",
        "--dynamics",
        "additive",
        "--frame",
        "fixed",
    ]);
    assert!(text.contains("no discounting in this specification"), "{text}");
    assert!(text.contains("LaterPreferred"));
}

#[test]
fn documents_round_trip() {
    let doc = ProblemDocument::from_json(WORKED).unwrap();
    let again = ProblemDocument::from_json(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, again);
}

#[test]
fn json_reports_parse_back() {
    let reversal = stdout_of(&[
        "reversal",
        "--case",
        "d",
        "--delay",
        "1",
        "--dx-a",
        "1e-4",
        "--dx-b",
        "2e-4",
        "--rate",
        "0.4",
        "--wealth0",
        "1",
        "--json",
    ]);
    let r: ReversalReport = serde_json::from_str(&reversal).unwrap();
    assert_eq!(r.estimates.len(), 2);
    assert!(r.relative_difference.unwrap() < 1e-3);

    let wealth = stdout_of(&[
        "wealth-threshold",
        "--horizon",
        "1",
        "--delay",
        "1",
        "--dx-a",
        "1000",
        "--dx-b",
        "2500",
        "--rate",
        "0.03",
        "--json",
    ]);
    let w: WealthReport = serde_json::from_str(&wealth).unwrap();
    assert!((w.threshold.value().unwrap() - 2277.43259291).abs() < 1e-6);

    let sim = stdout_of(&[
        "simulate",
        "--dynamics",
        "additive",
        "--frame",
        "adaptive",
        "--count",
        "200",
        "--compare",
        "--json",
    ]);
    let s: SimulationReport = serde_json::from_str(&sim).unwrap();
    assert_eq!(s.outcomes.len(), 5);
    assert_eq!(s.outcomes[0].policy, "growth-optimal");
}

#[test]
fn reversal_reports_decision_time() {
    let r: ReversalReport = serde_json::from_str(&stdout_of(&[
        "reversal", "--case", "c", "--delay", "2", "--dx-a", "100", "--dx-b", "300", "--t-a", "5", "--json",
    ]))
    .unwrap();
    // H^PR = 2 * 100 / 200 = 1, t0^PR = (300 * 5 - 100 * 7) / 200 = 4.
    assert_eq!(r.estimates[0].threshold, Threshold::Horizon { h_pr: 1.0 });
    assert_eq!(r.estimates[0].t0_pr, Some(4.0));
}

#[test]
fn missing_threshold_is_not_an_error() {
    let args = [
        "reversal", "--case", "d", "--delay", "1", "--dx-a", "100", "--dx-b", "101", "--rate", "0.4",
    ];
    assert_eq!(code(&args), 0);
    assert!(stdout_of(&args).contains("always preferred"));
    let args = [
        "wealth-threshold",
        "--horizon",
        "1",
        "--delay",
        "1",
        "--dx-a",
        "1000",
        "--dx-b",
        "1500",
        "--rate",
        "0.03",
    ];
    assert_eq!(code(&args), 0);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write_doc(
        dir.path(),
        "u.json",
        &WORKED.replace("\"t0\": 0,", "\"t0\": 0, \"extra\": 1,"),
    );
    let truncated = write_doc(dir.path(), "t.json", "{\"t0\": 0");
    let bad_order = write_doc(dir.path(), "o.json", &WORKED.replace("\"t_a\": 1", "\"t_a\": 3"));
    assert_eq!(code(&["evaluate", &unknown]), 2);
    assert_eq!(code(&["evaluate", &truncated]), 2);
    assert_eq!(code(&["evaluate", &bad_order]), 2);
    assert_eq!(code(&["evaluate", "/nonexistent/problem.json"]), 2);
    assert_eq!(code(&["evaluate", "--t-a", "1"]), 2);
    assert_eq!(code(&["curve", "--form", "c"]), 2);
    assert_eq!(code(&["curve", "--form", "hyperbolic"]), 2);
    assert_eq!(
        code(&["reversal", "--case", "c", "--mode", "numeric", "--delay", "1", "--dx-a", "1", "--dx-b", "2"]),
        2
    );
    assert_eq!(
        code(&[
            "simulate",
            "--dynamics",
            "additive",
            "--frame",
            "fixed",
            "--policy",
            "greedy"
        ]),
        2
    );
}

#[test]
fn domain_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let broke = write_doc(
        dir.path(),
        "b.json",
        &WORKED.replace("\"wealth0\": 500", "\"wealth0\": 0"),
    );
    let out = ripp(&["evaluate", &broke]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("wealth must be positive"));
}

#[test]
fn failed_rows_are_reported_and_exit_3() {
    let out = ripp(&[
        "curve",
        "--form",
        "d-numeric",
        "--horizon",
        "1",
        "--rate",
        "0.1",
        "--wealth0",
        "-1",
        "--dx-b",
        "1",
        "--d-max",
        "1",
        "--step",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "D,delta,dx_a_star,error");
    assert_eq!(lines.len(), 4, "every row is written: {csv}");
    assert!(lines[2].contains("wealth must be positive"));
}

#[test]
fn sweep_without_out_keeps_stdout_machine_readable() {
    let out = ripp(&[
        "wealth-threshold",
        "--horizon",
        "1",
        "--delay",
        "1",
        "--dx-a",
        "1000",
        "--dx-b",
        "2500",
        "--rate",
        "0.03",
        "--sweep",
        "--x-min",
        "500",
        "--x-max",
        "5500",
        "--points",
        "11",
    ]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("x0,gap\n500,0.20770621215\n"), "{csv}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("2277.4326"));
}

#[test]
fn simulate_writes_trajectory_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.csv");
    let summary = stdout_of(&[
        "simulate",
        "--dynamics",
        "multiplicative",
        "--rate",
        "0.01",
        "--frame",
        "fixed",
        "--count",
        "50",
        "--seed",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(summary.contains("growth-optimal"));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("time,wealth,event_type,chosen_option\n0,1000,start,\n"));
    // Fixed frame: a start row, then a payment row plus (for earlier
    // choices) an idle row per decision.
    assert!(csv.lines().count() > 51);
}

#[test]
fn different_seeds_differ() {
    let run = |seed: &str| {
        stdout_of(&[
            "simulate",
            "--dynamics",
            "additive",
            "--frame",
            "adaptive",
            "--count",
            "20",
            "--seed",
            seed,
        ])
    };
    assert_eq!(run("1"), run("1"));
    assert_ne!(run("1"), run("2"));
}

#[test]
fn negative_rates_are_accepted() {
    let text = stdout_of(&[
        "evaluate",
        "--t-a",
        "1",
        "--t-b",
        "3",
        "--dx-a",
        "100",
        "--dx-b",
        "300",
        "--dynamics",
        "additive",
        "--rate",
        "-3",
        "--frame",
        "adaptive",
    ]);
    assert!(text.contains("g_a = 97.0000 currency/yr"), "{text}");
}
