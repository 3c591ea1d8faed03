use std::process::{Command as Process, Output};

use folia::cli::{parse_foliation, parse_matrix, parse_verification, run_with_input, Command, Format, JobConfig, JobError, Report};
use folia::report::Verification;

fn folia(args: &[&str]) -> Output {
    Process::new(env!("CARGO_BIN_EXE_folia")).args(args).output().unwrap()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn tor_config(format: Format) -> JobConfig {
    let mut c = JobConfig::new(Command::Tor);
    c.foliation = Some("inline.json".into());
    c.format = format;
    c
}

#[test]
fn verification_strings() {
    assert_eq!(parse_verification("exhaustive", 0).unwrap(), Verification::Exhaustive);
    assert_eq!(parse_verification("random:20", 9).unwrap(), Verification::Random { seed: 9, count: 20 });
    assert_eq!(parse_verification("random:20:3", 9).unwrap(), Verification::Random { seed: 3, count: 20 });
    assert!(parse_verification("random", 0).is_err());
    assert!(parse_verification("all", 0).is_err());
}

#[test]
fn matrices_accept_integers_and_fractions() {
    let m = parse_matrix("omega", r#"[[0, "1/2"], ["-1/2", 0]]"#).unwrap();
    assert_eq!(m[0][1].to_string(), "1/2");
    assert!(matches!(parse_matrix("omega", "[[0, 1]"), Err(JobError::Parse { .. })));
}

#[test]
fn parse_errors_carry_position() {
    let err = parse_foliation("bad.json", "{\n  \"dim\": 2,\n  \"generators\": [[ [], ]]\n}").unwrap_err();
    match err {
        JobError::Parse { line, column, .. } => {
            assert_eq!(line, 3);
            assert!(column > 0);
        }
        other => panic!("unexpected {other}"),
    }
    let err = parse_foliation("bad.json", r#"{"dim": 2, "generators": [[[], []], [[]]]}"#).unwrap_err();
    assert!(err.to_string().contains("generator 1 has 1 components"));
}

#[test]
fn empty_generator_list_is_rejected() {
    let err = parse_foliation("empty.json", r#"{"dim": 2, "generators": []}"#).unwrap_err();
    assert!(matches!(err, JobError::Usage(_)));
    let out = folia(&["tor", &data("empty.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty"));
}

#[test]
fn involutive_foliation_exits_zero() {
    let out = folia(&["tor", &data("f1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn non_involutive_foliation_exits_one() {
    // ⟨x∂y, y∂x⟩: the bracket x∂x − y∂y is not in the span
    let text = r#"{"dim": 2, "generators": [
        [[], [{"c": "1", "e": [1, 0]}]],
        [[{"c": "1", "e": [0, 1]}], []]
    ]}"#;
    let report = run_with_input(&tor_config(Format::Text), Some(text)).unwrap();
    assert!(!report.all_passed());
    assert_eq!(report.exit_code(), 1);
    let path = std::env::temp_dir().join(format!("folia-noninvolutive-{}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    let out = folia(&["tor", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(folia(&["family", "--type", "sp", "--n", "3"]).status.code(), Some(2));
    assert_eq!(folia(&["family", "--type", "xx", "--n", "2"]).status.code(), Some(2));
    assert_eq!(folia(&["family", "--type", "gl", "--n", "2", "--verify", "some"]).status.code(), Some(2));
    assert_eq!(folia(&["tor", "/nonexistent/foliation.json"]).status.code(), Some(2));
    assert_eq!(folia(&["appendix", "--top-degree-check", "--n", "5"]).status.code(), Some(2));
}

#[test]
fn json_reports_round_trip() {
    let text = std::fs::read_to_string(data("f1.json")).unwrap();
    let json = run_with_input(&tor_config(Format::Json), Some(&text)).unwrap().render();
    let report: Report = serde_json::from_str(&json).unwrap();
    assert_eq!(report.render(), json);
    assert_eq!(report.tor.iter().map(|t| t.total).collect::<Vec<_>>(), vec![2, 1, 0]);

    let mut family = JobConfig::new(Command::Family);
    family.family = Some("glw".into());
    family.n = Some(3);
    family.format = Format::Json;
    let json = run_with_input(&family, None).unwrap().render();
    let report: Report = serde_json::from_str(&json).unwrap();
    assert_eq!(report.render(), json);
    assert!(report.all_passed());
    assert_eq!(report.config.w.as_ref().map(Vec::len), Some(1));
}

#[test]
fn inhomogeneous_input_takes_the_fallback() {
    let out = folia(&["tor", &data("f2.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.fallback.is_some());
    assert!(report.tor.is_empty());
}

#[test]
fn output_file_receives_the_report() {
    let path = std::env::temp_dir().join(format!("folia-report-{}.json", std::process::id()));
    let out = folia(&["appendix", "--top-degree-check", "--n", "2", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(report.appendix.map(|a| a.top_degree), Some((2, 2, 2)));
}
