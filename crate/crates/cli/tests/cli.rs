use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use planar_switch::report::{NormalFormReport, Report};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_planar-switch"));
    c.env("NO_COLOR", "1");
    c
}

fn systems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../systems")
}

fn system(name: &str) -> PathBuf {
    systems().join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn classify_singular_example() {
    let o = run(&["classify", "-i", system("singular_guas").to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.verdict.label(), "GUAS");
    assert_eq!(r.case.unwrap().label(), "S-1");
    assert_eq!(r.certificate.name(), "SingularCase");
    assert_eq!(r.tolerances.degenerate, 1e-9);
}

#[test]
fn unbounded_is_a_successful_result() {
    let o = run(&["classify", "-i", system("static_instability").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Unbounded"));
}

#[test]
fn both_diagonalizable_is_out_of_scope() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "d.json", r#"{"A": [[-1, 0], [0, -2]], "B": [[-1, 1], [1, -3]]}"#);
    let o = run(&["classify", "-i", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("diagonalizable"));
}

#[test]
fn non_hurwitz_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "n.json", r#"{"A": [[-1, 1], [0, -1]], "B": [[1, 0], [0, -3]]}"#);
    let o = run(&["classify", "-i", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("B is not Hurwitz: trace=-2, det=-3"), "{}", stderr(&o));
}

#[test]
fn parse_errors_carry_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", "{\"A\": [[-1, 1],\n  [0, -1]], \"B\": [[1, 0]]}");
    let o = run(&["classify", "-i", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2 column"), "{}", stderr(&o));
}

#[test]
fn missing_file_is_malformed_input() {
    let o = run(&["classify", "-i", "/nonexistent/system.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn report_round_trips_through_json() {
    for name in ["rotating_guas", "static_instability", "semidefinite_lyapunov", "r1_projective_guas"] {
        let o = run(&["classify", "-i", system(name).to_str().unwrap(), "--format", "json"]);
        let text = stdout(&o);
        let r: Report = serde_json::from_str(&text).unwrap();
        let again: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(r, again);
    }
}

#[test]
fn tolerance_flags_are_echoed() {
    let o = run(&[
        "classify",
        "-i",
        system("rotating_guas").to_str().unwrap(),
        "--format",
        "json",
        "--tol-degenerate",
        "1e-7",
        "--tol-ratio",
        "1e-6",
    ]);
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((r.tolerances.degenerate, r.tolerances.ratio), (1e-7, 1e-6));
}

#[test]
fn normal_form_of_examples() {
    let o = run(&["normal-form", "-i", system("singular_guas").to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: NormalFormReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.tau, 1.0);
    let id = [[1.0, 0.0], [0.0, 1.0]];
    for i in 0..2 {
        for j in 0..2 {
            assert!((r.t[i][j] - id[i][j]).abs() <= 1e-9);
        }
    }

    let o = run(&["normal-form", "-i", system("r1_rotating_guas").to_str().unwrap(), "--format", "json"]);
    let r: NormalFormReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.b_nf, [[-2.0, -1.0], [-1.0, -2.0]]);
}

#[test]
fn normal_form_of_conjugated_pair() {
    // T = [[2, 1], [1, 1]] applied to the R1 example
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "c.json", r#"{"A": [[-3, 4], [-1, 1]], "B": [[-1, -3], [0, -3]]}"#);
    let o = run(&["normal-form", "-i", p.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: NormalFormReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.residual_a < 1e-8 && r.residual_b < 1e-8);
    assert_eq!(r.case.label(), "R1");
}

#[test]
fn normal_form_refuses_commuting_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "c.json", r#"{"A": [[-1, 1], [0, -1]], "B": [[-2, 2], [0, -2]]}"#);
    let o = run(&["normal-form", "-i", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn worst_rotating_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.csv");
    let o = run(&[
        "worst",
        "-i",
        system("rotating_guas").to_str().unwrap(),
        "--half-turns",
        "5",
        "-o",
        out.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let measured = s["ratio_measured"].as_array().unwrap();
    assert_eq!(measured.len(), 5);
    for m in measured {
        assert!((m.as_f64().unwrap() - 0.049310368782674).abs() <= 1e-8 * 0.0493);
    }
    let csv = fs::read_to_string(out).unwrap();
    assert!(csv.starts_with("t,x1,x2,norm,active,event\n"));
    assert_eq!(csv.matches("switch").count(), 10);
}

#[test]
fn worst_non_rotating_summaries() {
    let o = run(&["worst", "-i", system("singular_guas").to_str().unwrap(), "--x0", "0,1", "-o", "/dev/null"]);
    assert_eq!(stdout(&o).trim(), "non-rotating; GUAS (singular case)");
    let o = run(&["worst", "-i", system("r1_projective_guas").to_str().unwrap(), "-o", "/dev/null"]);
    assert_eq!(stdout(&o).trim(), "non-rotating; GUAS (projective cone)");
}

#[test]
fn worst_refuses_inverse_orientation() {
    let o = run(&["worst", "-i", system("static_instability").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("static instability"));
}

#[test]
fn simulate_random_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&a, &b] {
        let o = run(&[
            "simulate",
            "-i",
            system("rotating_guas").to_str().unwrap(),
            "--policy",
            "random",
            "--seed",
            "42",
            "-o",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (x, y) = (fs::read(a).unwrap(), fs::read(b).unwrap());
    assert!(!x.is_empty());
    assert_eq!(x, y);
}

#[test]
fn simulate_constant_grows_for_static_instability() {
    let o = run(&[
        "simulate",
        "-i",
        system("static_instability").to_str().unwrap(),
        "--policy",
        "constant",
        "--u",
        "0.75",
        "--t-max",
        "40",
        "--dt",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    let norm: f64 = last.split(',').nth(3).unwrap().parse().unwrap();
    assert!(norm > 1e3);
    assert!(last.ends_with(",u=0.75,"));
}

#[test]
fn simulate_worst_matches_worst_command() {
    let o = run(&["simulate", "-i", system("rotating_guas").to_str().unwrap(), "--policy", "worst", "--t-max", "10", "--dt", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let norms: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    assert!(norms.last().unwrap() < &1e-3);
}

#[test]
fn simulate_rejects_bad_policy_parameters() {
    let f = system("rotating_guas");
    let o = run(&["simulate", "-i", f.to_str().unwrap(), "--policy", "constant"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["simulate", "-i", f.to_str().unwrap(), "--policy", "constant", "--u", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["simulate", "-i", f.to_str().unwrap(), "--policy", "random", "--dwell-min", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn batch_of_golden_systems() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["rotating_guas", "static_instability", "semidefinite_lyapunov"] {
        fs::copy(system(name), dir.path().join(format!("{name}.json"))).unwrap();
    }
    let o = run(&["batch", "-i", dir.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let t: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let verdicts: Vec<&str> = t["rows"].as_array().unwrap().iter().map(|r| r["report"]["verdict"].as_str().unwrap()).collect();
    assert_eq!(verdicts, ["GUAS", "UniformlyStableNotGUAS", "Unbounded"]);
    assert_eq!(t["summary"]["errors"], 0);
}

#[test]
fn batch_of_empty_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["batch", "-i", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
    assert!(stdout(&o).contains("errors=0"));
}

#[test]
fn batch_marks_malformed_rows() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(system("rotating_guas"), dir.path().join("a.json")).unwrap();
    write(dir.path(), "b.json", "{not json");
    fs::copy(system("static_instability"), dir.path().join("c.json")).unwrap();
    let o = run(&["batch", "-i", dir.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let t: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = t["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[1]["error"].as_str().unwrap().contains("malformed"));
    assert_eq!(rows[0]["report"]["verdict"], "GUAS");
    assert_eq!(rows[2]["report"]["verdict"], "Unbounded");
}

#[test]
fn text_output_has_no_color_codes_when_piped() {
    let o = Command::new(env!("CARGO_BIN_EXE_planar-switch"))
        .args(["classify", "-i", system("rotating_guas").to_str().unwrap()])
        .output()
        .unwrap();
    assert!(!stdout(&o).contains('\x1b'));
}

#[test]
fn output_file_replaces_existing_content() {
    let dir = tempfile::tempdir().unwrap();
    let out = write(dir.path(), "r.json", "stale");
    let o = run(&["classify", "-i", system("rotating_guas").to_str().unwrap(), "--format", "json", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r.verdict.label(), "GUAS");
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn usage_errors_are_not_out_of_scope() {
    assert_eq!(run(&["classify"]).status.code(), Some(1));
    assert_eq!(run(&["simulate", "-i", "x.json", "--policy", "sometimes"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}
