//! End-to-end runs of the binary against the fixtures, compared byte for
//! byte with stored machine reports.

use std::path::PathBuf;
use std::process::{Command, Output};

use poisson_fixset::poisson::jacobi_defect;
use poisson_fixset::problem::ProblemFile;
use poisson_fixset::report::parse_machine_block;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poisson-fixset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(args: &[&str], file: &str, code: i32) {
    let mut full = vec!["--machine"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let expected = std::fs::read_to_string(root().join("tests/golden").join(file)).unwrap();
    assert_eq!(stdout(&out), expected, "{args:?}");
}

#[test]
fn jacobi_reports() {
    golden(&["jacobi", &fixture("jacobi_violation.txt")], "jacobi_violation.txt", 1);
    golden(&["jacobi", &fixture("so3_involution.txt")], "jacobi_so3.txt", 0);
}

#[test]
fn action_check_rejects_anti_poisson_involution() {
    golden(
        &["action-check", &fixture("anti_poisson_plane.txt")],
        "action_check_anti_poisson.txt",
        1,
    );
}

#[test]
fn fixed_set_report() {
    golden(&["fixed-set", &fixture("symplectic_r4_z2.txt")], "fixed_set_r4.txt", 0);
}

#[test]
fn reduce_reports() {
    golden(&["reduce", &fixture("symplectic_r4_z2.txt")], "reduce_r4.txt", 0);
    golden(&["reduce", &fixture("so3_involution.txt")], "reduce_so3.txt", 0);
    golden(&["reduce", &fixture("cpn_torus.txt")], "reduce_cpn_torus.txt", 0);
}

#[test]
fn simplex_reports() {
    golden(
        &["simplex", &fixture("simplex_symbolic.txt")],
        "simplex_symbolic.txt",
        0,
    );
    golden(&["stratify", "--n", "2", "--seed", "5"], "stratify_n2_seed5.txt", 0);
}

#[test]
fn reduce_of_non_poisson_action_fails() {
    let out = run(&["--machine", "reduce", &fixture("anti_poisson_plane.txt")]);
    assert_eq!(out.status.code(), Some(1));
    let kv = parse_machine_block(&stdout(&out));
    assert!(kv.contains(&("poisson_action".into(), "FAIL".into())));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["jacobi", "/nonexistent/problem.txt"]).status.code(), Some(2));
    assert_eq!(run(&["simplex", "--n", "3", "--symbolic"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));

    let dir = std::env::temp_dir().join(format!("poisson-fixset-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "[chart]\ncoords = x y\n\n[bracket]\n{x,y} = x +* y\n").unwrap();
    let out = run(&["jacobi", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 5, column 12"));
}

#[test]
fn timing_goes_to_stderr_only() {
    let a = run(&["reduce", &fixture("so3_involution.txt")]);
    let b = run(&["reduce", &fixture("so3_involution.txt")]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("elapsed"));
    assert!(String::from_utf8_lossy(&a.stderr).contains("elapsed"));
}

#[test]
fn seed_flag_overrides_file() {
    let a = run(&["--machine", "reduce", "--seed", "9", &fixture("symplectic_r4_z2.txt")]);
    let kv = parse_machine_block(&stdout(&a));
    assert!(kv.contains(&("seed".into(), "9".into())));
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn induced_file_round_trips() {
    let out = run(&["reduce", &fixture("symplectic_r4_z2.txt")]);
    let text = stdout(&out);
    let induced: String = text
        .lines()
        .skip_while(|l| *l != "--- induced ---")
        .skip(1)
        .take_while(|l| *l != "--- end induced ---")
        .map(|l| format!("{l}\n"))
        .collect();
    let pf = ProblemFile::parse(&induced).unwrap();
    let p = pf.structure().unwrap();
    assert_eq!(p.chart().coordinate_names(), ["q1", "p1"]);
    assert_eq!(p.entry(0, 1).to_string(), "1");
    assert!(jacobi_defect(&p).is_empty() || jacobi_defect(&p).iter().all(|d| d.value.is_zero()));
    assert_eq!(ProblemFile::parse(&pf.to_string()).unwrap(), pf);
}
