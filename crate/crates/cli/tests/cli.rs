use std::io::Write;
use std::process::Command;

use t3ech_cli::{run, EXIT_INCONSISTENT, EXIT_INVALID, EXIT_OK, EXIT_USAGE};

fn t3ech(args: &[&str]) -> t3ech_cli::Outcome {
    run(std::iter::once("t3ech").chain(args.iter().copied()))
}

fn workspace(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn body(out: &str) -> Vec<&str> {
    out.lines().filter(|l| !l.starts_with('#')).collect()
}

const WORKSPACE: &str = r#"
[conventions]
h_identification = "e1-to-x"

[contact_forms.ellipse]
a1 = [{ kind = "cos", frequency = 1, numerator = 2 }]
a2 = [{ kind = "sin", frequency = 1, numerator = 3 }]

[manifolds.s2xs2]
q = [[0, 1], [1, 0]]
euler = 4
signature = 0
b2plus = 1
k = [-2, -2]
mv_image_basis = [[1, -1]]

[sw_tables.local]
manifold = "s2xs2"
entries = [
  { p = 1, r = 0, s = 0, value = 3, chamber = "negative" },
  { p = 0, r = 1, s = 0, value = 2 },
  { p = 0, r = 0, s = 1, value = -1 },
  { p = 1, r = 1, s = 0, value = 5 },
]
"#;

#[test]
fn census_of_lambda0_below_one_and_a_half_turns() {
    let out = t3ech(&["census", "--form", "lambda0", "--cutoff", "9.43"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    // 2π < 2π√2 < 9.43: the four axis classes and the four diagonals
    assert!(out.stdout.contains("families: 8\n"), "{}", out.stdout);
    assert!(out.stdout.contains("orbits: 16\n"));
    assert!(out.stdout.contains("6.28318530718"));
    assert!(out.stdout.contains("8.88576587632"));
    assert!(out.stdout.contains("bourgeois admissible: yes"));
}

#[test]
fn census_axis_classes_only() {
    let out = t3ech(&["census", "--form", "lambda0", "--cutoff", "7.5"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("families: 4\n"));
    assert!(out.stdout.contains("orbits: 8\n"));
}

#[test]
fn reports_start_with_the_conventions_header() {
    let out = t3ech(&["ech", "h", "--v", "1,0"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert!(lines[0].starts_with("# basis: (x,y,θ̄)"));
    assert!(lines[1].starts_with("# h-identification: e1-to-x"));
    assert!(lines[2].starts_with("# matrix convention: theta-row"));
    assert_eq!(body(&out.stdout), ["(1,0,0)  = x"]);
}

#[test]
fn surgery_prediction_example() {
    let out = t3ech(&["surgery", "predict", "--swl", "2,-1,3", "--p", "5", "--r", "4", "--s", "7"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(body(&out.stdout), ["16"]);
}

#[test]
fn product_formula_flags_realizability() {
    let out = t3ech(&["surgery", "product", "--swl", "2,-1,3", "--p", "5", "--r", "4", "--s", "7"]);
    assert_eq!(body(&out.stdout), ["16", "realizable: yes"]);
    let out = t3ech(&["surgery", "product", "--swl", "2,-1,3", "--p", "2", "--r", "4", "--s", "6"]);
    assert_eq!(body(&out.stdout), ["8", "realizable: no"]);
}

#[test]
fn ech_from_surgeries_example() {
    let out = t3ech(&["ech", "from-surgeries", "--grx", "1", "--gr110", "1", "--gr101", "1"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(body(&out.stdout), ["(0,0,1)  = θ̄"]);
}

#[test]
fn ech_act_rejects_non_contactomorphisms() {
    let out = t3ech(&["ech", "act", "--r", "1", "--s", "0", "--class", "1,0,0"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(body(&out.stdout), ["(1,0,1)  = x + θ̄"]);
    let out = t3ech(&["ech", "act", "--p", "2", "--r", "1", "--s", "1", "--class", "1,0,0"]);
    assert_eq!(out.code, EXIT_INVALID);
}

#[test]
fn complete_prints_both_matrices() {
    let out = t3ech(&["surgery", "complete", "--p", "1", "--r", "-2", "--s", "3"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(body(&out.stdout), ["h2: [[1,0,0],[0,1,0],[-2,3,1]]", "h1: [[1,0,2],[0,1,-3],[0,0,1]]", "luttinger: yes"]);
    let out = t3ech(&["surgery", "complete", "--p", "2", "--r", "4", "--s", "6"]);
    assert_eq!(out.code, EXIT_INVALID);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let ws = workspace(WORKSPACE);
    let path = ws.path().to_str().unwrap();
    for args in [
        vec!["census", "--form", "ellipse", "--cutoff", "40", path],
        vec!["census", "--form", "lambda0", "--cutoff", "30", "--out", "structured"],
        vec!["index", "lift-check", "--model", "s2xs2", "--a", "1,2", path],
    ] {
        let first = t3ech(&args);
        assert_eq!(first.code, EXIT_OK, "{args:?}: {}", first.stderr);
        assert_eq!(first, t3ech(&args));
    }
}

#[test]
fn binary_matches_library_and_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_t3ech");
    let out = Command::new(bin).args(["surgery", "predict", "--swl", "2,-1,3", "--p", "5", "--r", "4", "--s", "7"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8(out.stdout).unwrap().ends_with("16\n"));
    let out = Command::new(bin).arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let out = Command::new(bin).args(["surgery", "solve", "--base", "0", "--eq", "2,4,1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INCONSISTENT));
}

#[test]
fn unknown_command_is_a_usage_error() {
    let out = t3ech(&["frobnicate"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    assert_eq!(t3ech(&["census", "--form", "lambda0"]).code, EXIT_USAGE);
    assert_eq!(t3ech(&["--help"]).code, EXIT_OK);
}

#[test]
fn malformed_document_is_located() {
    let ws = workspace("[conventions]\nh_identification = \"e1-to-x\"\n[manifolds.m]\nq = [[1, 0], [0, 1]\n");
    let out = t3ech(&["index", "ech", "--model", "m", "--a", "1,0", "--workspace", ws.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);

    let ws = workspace("[conventions]\nh_identification = \"sideways\"\n");
    let out = t3ech(&["ech", "h", "--v", "1,1", ws.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("sideways"), "{}", out.stderr);

    let out = t3ech(&["ech", "invariant", "/nonexistent/workspace.toml"]);
    assert_eq!(out.code, EXIT_INVALID);
}

#[test]
fn inconsistent_gromov_system() {
    let out = t3ech(&["surgery", "solve", "--base", "0", "--eq", "1,0,1", "--eq", "0,1,0", "--eq", "1,1,0"]);
    assert_eq!(out.code, EXIT_INCONSISTENT);
    assert!(out.stderr.starts_with("inconsistent:"), "{}", out.stderr);
    for eq in ["#0", "#1", "#2"] {
        assert!(out.stderr.contains(eq), "{}", out.stderr);
    }
    let out = t3ech(&["surgery", "solve", "--base", "0", "--eq", "1,0,1", "--eq", "0,1,0"]);
    assert_eq!(body(&out.stdout), ["a = 1, b = 0"]);
    let out = t3ech(&["surgery", "solve", "--base", "0", "--eq", "1,1,1"]);
    assert_eq!(body(&out.stdout), ["underdetermined: (a,b) ∈ (1,0) + span{(1,1)}"]);
}

#[test]
fn sw_tables_feed_the_surgery_commands() {
    let ws = workspace(WORKSPACE);
    let path = ws.path().to_str().unwrap();
    let out = t3ech(&["surgery", "assemble", "--table", "local", path]);
    assert_eq!(body(&out.stdout), ["(2,-1,3)"]);
    let out = t3ech(&["surgery", "assemble", "--swx", "3", "--sw010", "2", "--sw001", "-1"]);
    assert_eq!(body(&out.stdout), ["(2,-1,3)"]);
    let out = t3ech(&["surgery", "predict", "--table", "local", "--p", "5", "--r", "4", "--s", "7", path]);
    assert_eq!(body(&out.stdout), ["16", "chamber (1,0,0): negative"]);
    let out = t3ech(&["surgery", "solve", "--table", "local", path]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(body(&out.stdout), ["underdetermined: (a,b) ∈ (0,0) + span{(0,1)}"]);

    let sparse = workspace("[sw_tables.t]\nentries = [{ p = 1, r = 0, s = 0, value = 1 }]\n");
    let out = t3ech(&["surgery", "solve", "--table", "t", sparse.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INVALID);
}

#[test]
fn index_commands() {
    let out = t3ech(&["index", "d", "--model", "k3", "--c1", &["0"; 22].join(",")]);
    assert_eq!(body(&out.stdout), ["d = 0"]);
    let out = t3ech(&["index", "d", "--model", "s2xs2", "--c1", "1,1"]);
    assert_eq!(out.code, EXIT_INVALID);
    let out = t3ech(&["index", "ech", "--model", "s2xs2", "--a", "1,0"]);
    assert_eq!(body(&out.stdout), ["I(A) = 2"]);
    let out = t3ech(&["index", "bridge", "--model", "s2xs2", "--a", "1,0"]);
    assert_eq!(body(&out.stdout), ["c1 = (4,2)", "d = 2", "I(A) = 2"]);
    let out = t3ech(&["index", "lift-check", "--model", "s2xs2", "--a", "0,0", "--v", "1,-1"]);
    assert_eq!(body(&out.stdout), ["v = (1,-1)  residual = -2  invariant: no", "all invariant: no"]);
}

#[test]
fn chamber_exact_and_real() {
    let out = t3ech(&["index", "chamber", "--omega-c1", "1", "--mu", "-710/113"]);
    assert!(body(&out.stdout)[0].starts_with("side: negative"), "{}", out.stdout);
    assert!(out.stdout.contains("decided: exact"));
    let out = t3ech(&["index", "chamber", "--omega-c1", "1", "--mu", "-6.283185307179586"]);
    assert_eq!(body(&out.stdout)[0], "side: wall");
    let out = t3ech(&["index", "chamber", "--omega-c1", "1", "--mu", "-6.2", "--tolerance", "0.5"]);
    assert_eq!(body(&out.stdout)[0], "side: wall");
    let out = t3ech(&["index", "chamber", "--omega-c1", "x", "--mu", "1"]);
    assert_eq!(out.code, EXIT_INVALID);
}

#[test]
fn structured_output_is_json() {
    let out = t3ech(&["census", "--form", "lambda0", "--cutoff", "9.43", "--out", "structured"]);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["command"], "census");
    assert_eq!(v["conventions"]["basis"], "(x,y,θ̄)");
    assert_eq!(v["result"]["families"].as_array().unwrap().len(), 8);
    assert_eq!(v["result"]["orbits"].as_array().unwrap().len(), 16);

    let out = t3ech(&["surgery", "predict", "--swl", "2,-1,3", "--p", "5", "--r", "4", "--s", "7", "--out", "structured"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["value"], 16);
}

#[test]
fn selftest_passes_at_desk_scale() {
    let out = t3ech(&["selftest", "--grid", "8"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("overall: PASS"));
    assert!(!out.stdout.contains("FAIL"));
}

#[test]
fn selftest_catches_a_swapped_identification() {
    let out = t3ech(&["selftest", "--grid", "8", "--inject-fault", "h-swap"]);
    assert_eq!(out.code, EXIT_INCONSISTENT);
    assert!(out.stdout.contains("FAIL  ECH group laws and naturality"), "{}", out.stdout);
    assert!(out.stdout.contains("overall: FAIL"));
}
