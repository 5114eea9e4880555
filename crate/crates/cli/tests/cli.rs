use std::path::Path;
use std::process::{Command, Output};

use dimwit::catalog::get_case;
use dimwit::classical::{enumerate_vertices, DEFAULT_CAP};
use dimwit::format::{behavior_to_string, witness_to_string};
use dimwit::quantum::{quantum_behavior, strategy_to_string};

fn dimwit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimwit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Output without the `#` header lines.
fn body(o: &Output) -> Vec<String> {
    stdout(o).lines().filter(|l| !l.starts_with('#')).map(String::from).collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn bound_of_wj() {
    let o = dimwit(&["bound", "--case", "WJ", "-d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body(&o), ["2"]);
    let o = dimwit(&["bound", "--case", "WD", "-d", "3", "--format", "csv"]);
    assert_eq!(body(&o), ["d0,d1,bound", "3,3,9/16"]);
}

#[test]
fn noise_of_drac() {
    let o = dimwit(&["noise", "--case", "DRAC"]);
    assert_eq!(o.status.code(), Some(0));
    let eta: f64 = body(&o)[0].parse().unwrap();
    assert!((eta - (1.0 - 1.0 / 3f64.sqrt())).abs() < 1e-12);
    assert_eq!(body(&o)[0], "0.422649730810");
}

#[test]
fn header_has_version_digest_and_seed() {
    let o = dimwit(&["eval", "--case", "WK", "--seed", "17"]);
    let text = stdout(&o);
    let head: Vec<&str> = text.lines().take(3).collect();
    assert_eq!(head[0], format!("# dimwit {}", env!("CARGO_PKG_VERSION")));
    assert!(head[1].starts_with("# input sha256 ") && head[1].len() == "# input sha256 ".len() + 64);
    assert_eq!(head[2], "# seed 17");
    let other = stdout(&dimwit(&["eval", "--case", "WJ"]));
    assert_ne!(other.lines().nth(1), Some(head[1]));
}

#[test]
fn member_vertex_and_quantum_point() {
    let dir = tempfile::tempdir().unwrap();
    let case = get_case("WJ").unwrap();
    let vs = enumerate_vertices(case.scenario(), [2, 2], DEFAULT_CAP).unwrap();
    let vertex = write(dir.path(), "vertex.toml", &behavior_to_string(&vs.behavior(7)));
    let o = dimwit(&["member", "--behavior", &vertex]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body(&o)[0], "Inside");

    let p = quantum_behavior(case.reference.as_ref().unwrap(), case.scenario()).unwrap();
    let quantum = write(dir.path(), "quantum.toml", &behavior_to_string(&p));
    let o = dimwit(&["member", "--behavior", &quantum, "-d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = body(&o);
    assert_eq!(lines[0], "Outside");
    assert!(lines.iter().any(|l| l.starts_with("bound")), "{lines:?}");
}

#[test]
fn facet_report() {
    let o = dimwit(&["facet", "--case", "APPENDIX_A_13", "-d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = body(&o);
    assert!(lines.contains(&"is_facet = true".to_string()));
    assert!(lines.contains(&"saturating_count = 20".to_string()));
}

#[test]
fn vertices_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let o = dimwit(&["vertices", "--case", "WK", "-d", "2", "-o", out.to_str().unwrap()]);
    assert_eq!(body(&o)[0], "vertices = 104");
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 105);
}

#[test]
fn seesaw_strategy_round_trips_through_eval() {
    let dir = tempfile::tempdir().unwrap();
    let case = get_case("WJ").unwrap();
    let w = write(dir.path(), "wj.toml", &witness_to_string(&case.witness));
    let s = dir.path().join("s.toml");
    let o = dimwit(&["seesaw", "--witness", &w, "-d", "2", "--restarts", "4", "--strategy-out", s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let found: f64 = body(&o)[0].parse().unwrap();
    assert!(found >= 2.0 + 2f64.sqrt() - 1e-4);
    let o = dimwit(&["eval", "--witness", &w, "--strategy", s.to_str().unwrap()]);
    assert_eq!(body(&o)[0], format!("{found:.12}"));
}

#[test]
fn eval_reference_file() {
    let dir = tempfile::tempdir().unwrap();
    let case = get_case("WD").unwrap();
    let s = write(dir.path(), "ref.toml", &strategy_to_string(case.reference.as_ref().unwrap()));
    let o = dimwit(&["eval", "--case", "WD", "--strategy", &s]);
    assert_eq!(body(&o), ["0.500000000000"]);
}

#[test]
fn csv_is_byte_identical() {
    let args = ["seesaw", "--case", "WK", "--restarts", "5", "--max-iters", "50", "--seed", "9", "--format", "csv"];
    let a = dimwit(&args);
    let mut threaded = vec!["--threads", "1"];
    threaded.extend_from_slice(&args);
    let b = dimwit(&threaded);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let sim = ["simulate", "--protocol", "singlet", "--x", "0,0,1", "--y", "0.6,0,-0.8", "-n", "200000", "--format", "csv"];
    assert_eq!(dimwit(&sim).stdout, dimwit(&sim).stdout);
}

#[test]
fn simulate_check() {
    let o = dimwit(&["simulate", "--x", "0,0,1", "--y", "0,1,0", "--x", "1,0,0", "--y", "-1,0,0", "-n", "100000", "--check", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body(&o).len(), 2);
}

#[test]
fn ceiling_demo() {
    let o = dimwit(&[
        "ceiling", "--prep", "1,0,0", "--prep", "-1,0,0", "--prep", "0,0,1", "--prep", "0,0,-1", "--obs", "1,0,0",
        "--obs", "0,0,1", "--eta", "0.5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(body(&o).contains(&"verdict = Inside".to_string()));
}

#[test]
fn reproduce_exit_codes() {
    let o = dimwit(&["reproduce", "--case", "APPENDIX_A_ALL", "--no-seesaw", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body(&o).len(), 1 + 2 * 13);
    // No qubit strategy reaches the entangled target, so this report fails.
    let o = dimwit(&["reproduce", "--case", "WD_ENT", "--no-seesaw"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn error_exit_codes() {
    assert_eq!(dimwit(&["bound"]).status.code(), Some(2));
    assert_eq!(dimwit(&["bound", "--case", "nope"]).status.code(), Some(2));
    assert_eq!(dimwit(&["bound", "--case", "WJ", "-d", "x"]).status.code(), Some(2));
    assert_eq!(dimwit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dimwit(&["member", "--behavior", "/nonexistent/b.toml"]).status.code(), Some(2));
    let o = dimwit(&["bound", "--case", "WD", "-d", "2", "--cap", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    assert_eq!(dimwit(&["vertices", "--case", "WJ", "-d", "3", "--cap", "10"]).status.code(), Some(3));
    assert_eq!(dimwit(&["noise", "--case", "WJ", "--bound", "4"]).status.code(), Some(1));
    assert_eq!(dimwit(&["seesaw", "--case", "WJ", "-d", "5"]).status.code(), Some(2));
}
