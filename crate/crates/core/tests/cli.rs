use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn equicoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equicoh")).args(args).output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = equicoh(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: stdout is not JSON: {e}"));
    (out.status.code().expect("exit code"), v)
}

fn fx(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

#[test]
fn su2_lie_cohomology() {
    let (code, v) = run(&["compute", &fx("su2.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([1, 0, 0, 1]));
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn broken_contraction_exits_3_with_witness() {
    let f = fx("broken_contraction.json");
    for cmd in ["compute", "gdiff-check"] {
        let (code, v) = run(&[cmd, &f]);
        assert_eq!(code, 3);
        assert_eq!(v["error"]["kind"], "math");
        assert_eq!(v["error"]["witness"]["generators"], serde_json::json!(["e1", "e2"]));
    }
}

#[test]
fn malformed_and_empty_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"kind\": ").unwrap();
    let (code, v) = run(&["compute", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "schema");
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(run(&["validate", empty.to_str().unwrap()]).0, 2);
    let missing = dir.path().join("nope.json");
    assert_eq!(run(&["compute", missing.to_str().unwrap()]).0, 2);
}

#[test]
fn schema_errors_point_at_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.json");
    std::fs::write(&p, r#"{"kind": "lie-cohomology", "payload": {"algebra": {"dim": 3, "brackets": [[0, 5, [[2, 1]]]]}}}"#).unwrap();
    let (code, v) = run(&["compute", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["pointer"], "/payload/algebra/brackets/0/1");
}

#[test]
fn validate_gates() {
    let (code, v) = run(&["validate", &fx("su2.json")]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    let (code, v) = run(&["validate", &fx("non_jacobi.json")]);
    assert_eq!(code, 3);
    let jacobi = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "jacobi").unwrap();
    assert_eq!(jacobi["passed"], false);
    assert_eq!(jacobi["detail"]["witness"]["identity"], "jacobi");

    assert_eq!(run(&["validate", &fx("su2_dual_momentum.json")]).0, 0);
}

#[test]
fn non_jacobi_compute_exits_3() {
    let (code, v) = run(&["compute", &fx("non_jacobi.json")]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["witness"]["generators"], serde_json::json!(["e1", "e2", "e3"]));
}

#[test]
fn poisson_subcommands() {
    let (code, v) = run(&["poisson-cohomology", &fx("su2_dual_poisson.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([3, 0, 0, 3]));
    let (code, v) = run(&["poisson-cohomology", &fx("su2_dual_poisson.json"), "--slice", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([1, 0, 0, 1]));
    let (code, v) = run(&["momentum-ss", &fx("su2_dual_momentum.json"), "--pages", "2", "--slice", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([0, 0, 0, 0]));
    let names: Vec<&str> = v["pages"].as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["slice-1: E1", "slice-1: E2", "slice-1: Einf"]);
}

#[test]
fn kind_mismatch_is_a_schema_error() {
    let (code, v) = run(&["gdiff-check", &fx("su2.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["pointer"], "/kind");
}

#[test]
fn unknown_example_exits_2() {
    let (code, v) = run(&["example", "poiss9"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["example"], "poiss9");
}

#[test]
fn poiss3_variants() {
    for (fprime, dims) in [("t*(t-1)", [5, 2, 2, 5]), ("1", [5, 0, 0, 5]), ("0", [5, 5, 5, 5])] {
        let (code, v) = run(&["example", "poiss3", "--roots", "0,1,2,3,4", "--fprime", fprime]);
        assert_eq!(code, 0);
        assert_eq!(v["dims"], serde_json::json!(dims), "f' = {fprime}");
    }
}

#[test]
fn output_is_byte_identical_and_timing_is_opt_in() {
    let a = equicoh(&["compute", &fx("equivariant_su2.json")]);
    let b = equicoh(&["compute", &fx("equivariant_su2.json")]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("timing_ms"));
    let (_, v) = run(&["--timing", "compute", &fx("equivariant_su2.json")]);
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn jobs_flag_does_not_change_output() {
    let one = equicoh(&["--jobs", "1", "example", "su2-dual"]);
    let four = equicoh(&["--jobs", "4", "example", "su2-dual"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn goldens() {
    let cases: &[(&str, &[&str])] = &[
        ("coh-inv.default.json", &["example", "coh-inv"]),
        ("poiss1.default.json", &["example", "poiss1"]),
        ("poiss1.slices=0..4.json", &["example", "poiss1", "--slices", "0..4"]),
        ("poiss2.default.json", &["example", "poiss2"]),
        ("poiss3.default.json", &["example", "poiss3"]),
        ("poiss3.default.csv", &["--format", "csv", "example", "poiss3"]),
        ("poiss3.roots=0,1,2,3,4.fprime=t(t-1).json", &["example", "poiss3", "--roots", "0,1,2,3,4", "--fprime", "t*(t-1)"]),
        ("poiss3.roots=0,1,2,3,4.fprime=1.json", &["example", "poiss3", "--roots", "0,1,2,3,4", "--fprime", "1"]),
        ("poiss3.roots=0,1,2,3,4.fprime=0.json", &["example", "poiss3", "--roots", "0,1,2,3,4", "--fprime", "0"]),
        ("poiss4.default.json", &["example", "poiss4"]),
        ("su2-dual.default.json", &["example", "su2-dual"]),
        ("torus.default.json", &["example", "torus"]),
        ("weil.default.json", &["example", "weil"]),
    ];
    for (file, args) in cases {
        let want = std::fs::read(fixture("golden").join(file)).unwrap();
        let got = equicoh(args);
        assert_eq!(got.status.code(), Some(0), "{file}");
        assert!(got.stdout == want, "{file} differs from the golden output");
    }
}

#[test]
fn every_example_passes_its_checks() {
    for name in equicoh::io::EXAMPLES {
        let (code, v) = run(&["example", name]);
        assert_eq!(code, 0, "{name}");
        for c in v["checks"].as_array().map(Vec::as_slice).unwrap_or(&[]) {
            assert_eq!(c["passed"], true, "{name}: {}", c["name"]);
        }
    }
}

#[test]
fn csv_format_for_task_files() {
    let out = equicoh(&["--format", "csv", "compute", &fx("su2.json")]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "table,r,p,q,dim\ndims,,0,,1\ndims,,1,,0\ndims,,2,,0\ndims,,3,,1\n");
}

#[test]
fn bundled_fixtures_run() {
    for (f, dims) in [
        ("su2_circle.json", Some(vec![1, 0, 1, 0])),
        ("su2_sym2.json", Some(vec![1, 0, 0, 1])),
        ("heisenberg.json", Some(vec![1, 2, 2, 1])),
        ("ce_su2.json", Some(vec![1, 0, 0, 1])),
        ("weil_su2.json", None),
        ("su2_dual_equivariant.json", None),
        ("circle_plane_equivariant.json", None),
        ("poiss3.json", Some(vec![5, 2, 2, 5])),
    ] {
        let (code, v) = run(&["compute", &fx(f)]);
        assert_eq!(code, 0, "{f}");
        if let Some(d) = dims {
            assert_eq!(v["dims"], serde_json::json!(d), "{f}");
        }
    }
}
