use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn orbitsw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitsw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn reduce_s4_without_b_plus_is_out_of_scope() {
    let o = orbitsw(&["reduce", &fixture("s4.example"), "--b-plus", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: OutOfScope"), "{}", stdout(&o));
}

#[test]
fn sw_two_fixed_points_vanishes() {
    let o = orbitsw(&["sw", &fixture("twofp.example"), "--b-plus", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SW ≡ 0"));
}

#[test]
fn classify_signature_zero() {
    let o = orbitsw(&["classify", "--b2", "2", "--sigma", "0", "--spin", "false"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "CP² # ĈP²");
}

#[test]
fn classify_rejects_spin_with_signature() {
    let o = orbitsw(&["classify", "--b2", "2", "--sigma", "-2", "--spin", "true"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn empty_file_is_a_syntax_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.example");
    std::fs::write(&path, "").unwrap();
    let o = orbitsw(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("1:1"), "{}", stderr(&o));
}

#[test]
fn index_sum_violation_exits_one() {
    let o = orbitsw(&["validate", &fixture("bad_index.example")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("IndexSumNonzero"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(orbitsw(&["reduce", &fixture("s4.example")]).status.code(), Some(2));
    assert_eq!(orbitsw(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        orbitsw(&["reduce", &fixture("s4.example"), "--b-plus", "x"]).status.code(),
        Some(2)
    );
}

#[test]
fn dot_edges_match_trace_steps() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("trace.dot");
    let o = orbitsw(&[
        "reduce",
        &fixture("circle.example"),
        "--b-plus",
        "2",
        "--machine",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let steps: usize = stdout(&o)
        .lines()
        .find_map(|l| l.strip_prefix("steps="))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(steps, 4);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches(" -> ").count(), steps);
}

#[test]
fn machine_and_human_invariants_agree() {
    let file = fixture("boundary.example");
    let h = stdout(&orbitsw(&["invariants", &file, "--b-plus", "1"]));
    let m = stdout(&orbitsw(&["invariants", &file, "--b-plus", "1", "--machine"]));
    for (key, label) in [("chi", "χ(X)"), ("b1", "b₁(X)"), ("b2", "b₂(X)"), ("b_minus", "b₋(X)")] {
        let mv = m.lines().find_map(|l| l.strip_prefix(&format!("{key}="))).unwrap();
        let hv = h
            .lines()
            .find_map(|l| l.trim().strip_prefix(&format!("{label} = ")))
            .unwrap();
        assert_eq!(mv, hv, "{key}");
    }
}

#[test]
fn fixed_point_free_sum_over_coset() {
    let args = |xi0: &'static str| {
        orbitsw(&[
            "sw",
            &fixture("fpfree.example"),
            "--b-plus",
            "2",
            "--table",
            &fixture("fpfree.table"),
            "--xi0",
            xi0,
        ])
    };
    assert!(stdout(&args("0")).contains("SW = 3"));
    assert!(stdout(&args("1")).contains("SW = 11"));
    assert!(stdout(&args("-1")).contains("SW = 11"));
}

#[test]
fn fixed_point_free_without_table_fails() {
    let o = orbitsw(&["sw", &fixture("fpfree.example"), "--b-plus", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--table"));
}

#[test]
fn exit_codes_are_deterministic() {
    let file = fixture("circle.example");
    let a = orbitsw(&["reduce", &file, "--b-plus", "2", "--trace"]);
    let b = orbitsw(&["reduce", &file, "--b-plus", "2", "--trace"]);
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn summand_topology_flag_drives_verdict() {
    let o = orbitsw(&[
        "reduce",
        &fixture("circle.example"),
        "--b-plus",
        "2",
        "--summand",
        "0:1:1:false",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("SummandSphere"), "{}", stdout(&o));
}
