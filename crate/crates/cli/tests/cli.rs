use std::fs;
use std::process::{Command, Output};

use qh_toeplitz::exact::{int, Proportionality};
use qh_toeplitz::theorem::{Conclusion, TheoremParams, VerificationReport};

fn qht(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qht")).args(args).output().expect("spawn qht")
}

fn code(args: &[&str]) -> i32 {
    qht(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(qht(args).stdout).unwrap()
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["mellin", "--symbol", "r^3"], 0),
        (&["mellin", "--symbol", "1/2*r + 1/2*r^5"], 0),
        (&["mellin", "--symbol", "r^-1"], 2),
        (&["mellin", "--symbol", "x^2"], 2),
        (&["mellin"], 2),
        (&["op", "--p", "2", "--symbol", "r^2 - r^4"], 0),
        (&["root", "--p", "2", "--M", "3"], 0),
        (&["root", "--p", "1", "--symbol", "r^5"], 0),
        (&["root", "--p", "1", "--symbol", "r^4"], 2),
        (&["root", "--p", "1", "--M", "1", "--symbol", "r^3"], 2),
        (&["commutator", "--x", "1:r^3", "--y", "2:r^10"], 0),
        (&["commutator", "--x", "r^3", "--y", "2:r^10"], 2),
        (&["check", "--p", "1", "--s", "3", "--M", "2", "--N", "1", "--m", "4"], 0),
        (&["check", "--p", "2", "--s", "2", "--M", "1", "--N", "1", "--m", "1"], 2),
        (&["verify-theorem", "--p", "1", "--s", "2", "--M", "1", "--N", "1", "--m-max", "10", "--format", "json"], 0),
        (&["verify-theorem", "--p", "3", "--s", "2", "--M", "1", "--N", "1"], 2),
        (&["verify-theorem", "--p", "1", "--s", "2", "--M", "0", "--N", "1"], 2),
        (&["verify-theorem", "--p", "4", "--s", "5", "--M", "1", "--N", "1", "--m-max", "3"], 2),
        (&["verify-theorem", "--p", "1", "--s", "2", "--M", "1", "--N", "1", "--format", "yaml"], 2),
        (&["numeric-check", "--x", "1:r^3", "--y", "2:r^10", "--K", "32"], 0),
        (&["numeric-check", "--x", "1:r^3", "--y", "2:r^10", "--K", "3"], 2),
        // a failing tolerance is a completed run with a failed check
        (&["numeric-check", "--x", "1:r^3", "--y", "2:r^10", "--K", "32", "--tol", "1e-300"], 1),
        (&["sweep", "--config", "/nonexistent/qht.json"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, want) in cases {
        assert_eq!(code(args), *want, "qht {}", args.join(" "));
    }
}

#[test]
fn usage_errors_print_a_diagnostic() {
    let out = qht(&["verify-theorem", "--p", "3", "--s", "2", "--M", "1", "--N", "1"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("qht: "), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn mellin_prints_factored_form() {
    assert_eq!(stdout(&["mellin", "--symbol", "r^3"]).trim(), "1/(z+3)");
}

#[test]
fn exact_outputs_print_rationals_as_fractions() {
    let text = stdout(&["op", "--p", "1", "--symbol", "r^3", "--k-max", "3"]);
    assert!(text.contains("w(0) = 2/3"), "{text}");
    assert!(!text.contains("0.6"), "{text}");
}

#[test]
fn numeric_check_uses_seventeen_significant_digits() {
    let out = stdout(&["numeric-check", "--x", "1:r^3", "--y", "2:r^10", "--K", "24", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let dev = v["max_abs_deviation"].as_str().unwrap();
    let mantissa = dev.split('e').next().unwrap().replace(['-', '.'], "");
    assert_eq!(mantissa.len(), 17, "{dev}");
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_theorem_json_round_trips() {
    let out = stdout(&["verify-theorem", "--p", "1", "--s", "2", "--M", "1", "--N", "1", "--m-max", "10", "--format", "json"]);
    let report: VerificationReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.conclusion, Conclusion::TheoremConfirmed);
    let proportional: Vec<_> = report
        .rows
        .iter()
        .filter(|r| matches!(r.outcome, Proportionality::Proportional(_)))
        .collect();
    assert_eq!(proportional.len(), 1);
    assert_eq!(proportional[0].m, 1);
    assert_eq!(proportional[0].outcome, Proportionality::Proportional(int(1)));
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(again.trim(), out.trim());
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let args = ["verify-theorem", "--p", "2", "--s", "3", "--M", "1", "--N", "2", "--m-max", "5", "--format", "json"];
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let out = qht(&with_out);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap(), stdout(&args));
}

fn read_reports(path: &std::path::Path) -> Vec<VerificationReport> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn sweep_appends_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.jsonl");
    let cfg = dir.path().join("cfg.json");
    let small = format!(
        r#"{{"p":[1,2],"s":[2,3],"M":[1,1],"N":[1,2],"m_max":8,"out":{:?}}}"#,
        out.to_str().unwrap()
    );
    fs::write(&cfg, &small).unwrap();
    assert_eq!(code(&["sweep", "--config", cfg.to_str().unwrap(), "--jobs", "2"]), 0);
    // (1,2), (1,3), (2,3) times N in {1,2}
    let first = read_reports(&out);
    assert_eq!(first.len(), 6);
    assert!(first.iter().all(|r| r.confirmed()));

    // simulate an interrupt mid-line, then widen the grid
    let mut text = fs::read_to_string(&out).unwrap();
    text.push_str(r#"{"params":{"p":1,"#);
    fs::write(&out, text).unwrap();
    let wide = small.replace(r#""M":[1,1]"#, r#""M":[1,2]"#);
    fs::write(&cfg, wide).unwrap();
    let run = qht(&["sweep", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(run.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(summary["resumed"], 6);
    assert_eq!(summary["computed"], 6);

    let all = read_reports(&out);
    assert_eq!(all.len(), 12);
    assert_eq!(&all[..6], &first[..]);
    let distinct: std::collections::HashSet<TheoremParams> = all.iter().map(|r| r.params).collect();
    assert_eq!(distinct.len(), 12);

    // nothing left to do
    let again = qht(&["sweep", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    let summary: serde_json::Value = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(summary["computed"], 0);
    assert_eq!(read_reports(&out).len(), 12);
}

#[test]
fn sweep_rejects_bad_configs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    for bad in [
        r#"{"p":[2,1],"s":[2,3],"M":[1,1],"N":[1,1]}"#,
        r#"{"p":[3,3],"s":[2,3],"M":[1,1],"N":[1,1]}"#,
        r#"{"p":[1,1],"s":[2,2],"M":[1,1]}"#,
        r#"{"p":[1,1],"s":[2,2],"M":[1,1],"N":[1,1],"extra":true}"#,
        "not json",
    ] {
        fs::write(&cfg, bad).unwrap();
        assert_eq!(code(&["sweep", "--config", cfg.to_str().unwrap()]), 2, "{bad}");
    }
}

#[test]
fn sweep_without_out_streams_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"p":[1,1],"s":[2,3],"M":[1,1],"N":[1,1],"m_max":4}"#).unwrap();
    let out = qht(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<VerificationReport> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
}
