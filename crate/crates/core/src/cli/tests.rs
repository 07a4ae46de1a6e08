use super::*;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gcoh").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn groups_table() {
    let (code, out, _) = call(&["groups", "G83"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 17);
    assert!(lines[4].starts_with("3    Z_2"), "{}", lines[4]);
    let (_, out, _) = call(&["groups", "G83", "--max-deg", "4"]);
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn groups_json_and_latex() {
    let (code, out, _) = call(&["--format", "json", "groups", "G103"]);
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 22);
    assert_eq!(rows[12]["group"], "Z");
    let (code, out, _) = call(&["groups", "G83", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("\\begin{tabular}"));
    assert!(out.contains("\\mathbb{Z}_2") || out.contains("\\mathbb Z_2"), "{out}");
}

#[test]
fn unknown_names_and_bad_usage() {
    let (code, _, err) = call(&["groups", "Nope"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("no ring named `Nope`"));
    assert_eq!(call(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(call(&["groups"]).0, EXIT_INPUT);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn page_and_gysin() {
    let (code, out, _) = call(&["page", "V7_2"]);
    assert_eq!(code, 0);
    assert!(out.contains("d_2: (4,1) -> (6,0) ·2 mono"), "{out}");
    let (code, out, _) = call(&["gysin", "V7_2"]);
    assert_eq!(code, 0);
    assert!(out.contains("H^6 = Z_2"), "{out}");
    assert!(out.contains("H^11 = Z"));
    let (_, out, _) = call(&["gysin", "W8overG83"]);
    assert!(out.contains("ambiguous"), "{out}");
    let (code, out, _) = call(&["page", "V7_2", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(out.contains("\\begin{tabular}"));
}

#[test]
fn solve_exit_codes() {
    let (code, out, _) = call(&["solve", "g83"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("T_4 = 0, T_5 = Z_2, T_6 = 0, T_7 = 0"), "{out}");
    assert!(out.contains("H^13 = Z_2"));
    let file = tmp("free.gc", "problem free { n 8; betti [1,0,0,0,1,0,0,1,1,0,0,1,0,0,0,1]; }");
    let (code, out, _) = call(&["--file", &file, "solve", "free"]);
    assert_eq!(code, EXIT_SOLVER);
    assert!(out.starts_with("625 solution(s)"), "{out}");
    assert_eq!(call(&["--file", &file, "solve", "free", "--all"]).0, EXIT_OK);
}

#[test]
fn solve_explain() {
    let (code, out, _) = call(&["solve", "g83", "--explain"]);
    assert_eq!(code, 0);
    assert!(out.contains("rejected T_4 = 0, T_5 = 0, T_6 = 0, T_7 = 0: uct-mod2: fail at degree 6"), "{out}");
    assert!(out.contains("rejected T_4 = 0, T_5 = 0, T_6 = Z_2, T_7 = 0: sphere-assembly: fail at degree 5"));
    assert_eq!(out.lines().filter(|l| l.starts_with("rejected")).count(), 624);
}

#[test]
fn finite_presentation_scan() {
    let (code, out, _) = call(&["finite-presentation", "G103", "--scan-to", "34"]);
    assert_eq!(code, 0);
    assert_eq!(out, "extra relations in degrees 22..=34:\n  x9*x13\n  x12^2\n  x12*x13\n  x13^2\n");
    assert_eq!(call(&["finite-presentation", "G103", "--scan-to", "3"]).0, EXIT_INPUT);
}

#[test]
fn duality_and_mod2() {
    let (code, out, _) = call(&["duality", "G83"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.ends_with(" unimodular")), "{out}");
    let (code, out, _) = call(&["--format", "json", "mod2-dims", "G83"]);
    assert_eq!(code, 0);
    let dims: Vec<usize> = serde_json::from_str(&out).unwrap();
    assert_eq!(dims, vec![1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1]);
    // The Lai ring's top group is Z, but a ring with torsion on top is rejected.
    let file = tmp("torsion_top.gc", "ring T { gen a:2; rel 2*a; top 2; }");
    let (code, _, err) = call(&["--file", &file, "duality", "T"]);
    assert_eq!(code, EXIT_MISMATCH, "{err}");
}

#[test]
fn file_errors_carry_positions() {
    let file = tmp("bad.gc", "ring R {\n  gen a:2;\n  rel a + 1;\n  top 4;\n}");
    let (code, _, err) = call(&["--file", &file, "groups", "R"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("bad.gc:3:"), "{err}");
    let (code, _, err) = call(&["--file", "/nonexistent/x.gc", "check"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("/nonexistent/x.gc"));
}

#[test]
fn check_reports_mismatches() {
    let file = tmp("expect.gc", "expect G83 { 3: Z_2, 5: Z_2 } cite \"a deliberate mistake\";");
    let (code, out, _) = call(&["--file", &file, "check"]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.contains("degree 5: expected Z_2, found 0"), "{out}");
    assert!(out.contains("[a deliberate mistake]"));
}

fn tmp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("gcoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}
