//! Runs the `ncproj` binary on presentation files written to a temporary
//! directory and checks reports, exit codes and determinism.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", self.stdout))
    }
}

fn ncproj(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ncproj")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files { dir: tempfile::tempdir().expect("temp dir") }
    }

    fn write(&self, name: &str, text: &str) -> String {
        let path: PathBuf = self.dir.path().join(name);
        std::fs::write(&path, text).expect("write input");
        path.display().to_string()
    }

    fn module(&self, name: &str, d: usize, gens: &str, rows: &[&str]) -> String {
        let mut text = format!("field: QQ\nd: {d}\nname: {name}\ngens: [{gens}]\nrels:\n");
        for r in rows {
            text.push_str(&format!("  [{r}]\n"));
        }
        self.write(&format!("{name}.pres"), &text)
    }
}

#[test]
fn hilbert_of_the_ring() {
    let f = Files::new();
    let r = f.module("R", 2, "0", &[]);
    let run = ncproj(&["hilbert", &r, "5"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = run.json();
    assert_eq!(v["command"], "hilbert");
    assert_eq!(v["result"]["dim"], 32);
    assert_eq!(v["certificate"]["dim_by_rank"], 32);
    assert_eq!(v["inputs"]["j"], 5);
}

#[test]
fn residue_field_has_zero_class() {
    let f = Files::new();
    let k = f.module("k", 2, "0", &["x0", "x1"]);
    let v = ncproj(&["k0", &k]).json();
    assert_eq!(v["result"]["k0"]["t"], 0);
    assert_eq!(v["result"]["fdim"], true);
}

#[test]
fn profile_of_a_cyclic_quotient() {
    let f = Files::new();
    let m = f.module("cyclic", 2, "0", &["x0"]);
    let v = ncproj(&["profile", &m]).json();
    assert_eq!(v["result"]["profile"]["i0"], 1);
    assert_eq!(v["result"]["profile"]["t"], serde_json::json!([1, 2, 4, 8, 16]));
    assert_eq!(v["result"]["profile"]["class"]["value"], "1/2");
}

#[test]
fn ring_and_twisted_sum_are_isomorphic() {
    let f = Files::new();
    let r = f.module("R", 2, "0", &[]);
    let pair = f.module("pair", 2, "1, 1", &[]);
    assert_eq!(ncproj(&["iso", &r, &pair]).json()["result"]["isomorphic"], true);
    let r3 = f.module("R3", 3, "0", &[]);
    let triple = f.module("triple", 3, "1, 1, 1", &[]);
    assert_eq!(ncproj(&["iso", &r3, &triple]).json()["result"]["isomorphic"], true);
    let single = f.module("single", 2, "1", &[]);
    assert_eq!(ncproj(&["iso", &r, &single]).json()["result"]["isomorphic"], false);
}

#[test]
fn zero_objects_are_isomorphic() {
    let f = Files::new();
    let k = f.module("k", 2, "0", &["x0", "x1"]);
    let square = f.module("square", 2, "0", &["x0 x0", "x0 x1", "x1 x0", "x1 x1"]);
    assert_eq!(ncproj(&["iso", &k, &square]).json()["result"]["isomorphic"], true);
}

#[test]
fn half_class_does_not_decompose_at_zero() {
    let f = Files::new();
    let m = f.module("shifted", 2, "1", &[]);
    let run = ncproj(&["decompose", &m, "0"]);
    assert_eq!(run.code, 1);
    let v = run.json();
    assert_eq!(v["error"]["kind"], "NotExpressibleAtTwist");
    assert!(v.get("result").is_none());
    assert!(!run.stderr.is_empty());
    let ok = ncproj(&["decompose", &m, "-1"]).json();
    assert_eq!(ok["result"]["multiplicity"], 1);
    let ring = f.module("R", 2, "0", &[]);
    assert_eq!(ncproj(&["decompose", &ring, "-3"]).json()["result"]["multiplicity"], 8);
}

#[test]
fn leavitt_relations() {
    let v = ncproj(&["leavitt-eval", "x0 x0*"]).json();
    assert_eq!(v["result"]["value"], "1");
    let v = ncproj(&["leavitt-eval", "x0 x1*"]).json();
    assert_eq!(v["result"]["value"], "0");
    assert_eq!(v["result"]["zero"], true);
    let v = ncproj(&["leavitt-eval", "x0* x0 + x1* x1 + x2* x2", "--d", "3"]).json();
    assert_eq!(v["result"]["value"], "1");
    let v = ncproj(&["leavitt-eval", "1", "--level", "1"]).json();
    assert_eq!(v["result"]["at_level"], "x0* x0 + x1* x1");
}

#[test]
fn leavitt_rejects_bad_letters() {
    let run = ncproj(&["leavitt-eval", "x5 x0*"]);
    assert_eq!(run.code, 2);
    let v = run.json();
    assert_eq!(v["error"]["kind"], "Parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("x5"));
}

#[test]
fn s_calc_idempotent_class() {
    let f = Files::new();
    let unit = ncproj(&["s-calc", "unit", "2", "1", "1"]);
    assert_eq!(unit.code, 0, "{}", unit.stderr);
    let e = unit.json()["result"]["element"].to_string();
    let path = f.write("e11.json", &e);
    let v = ncproj(&["s-calc", "k0", &path]).json();
    assert_eq!(v["result"]["k0"]["value"], "1/4");

    let not_idem = f.write("a.json", r#"{"d":2,"level":1,"entries":[[0,1,"1"]]}"#);
    let run = ncproj(&["s-calc", "k0", &not_idem]);
    assert_eq!(run.code, 1);
    assert_eq!(run.json()["error"]["kind"], "NotIdempotent");
}

#[test]
fn s_calc_witnesses() {
    let f = Files::new();
    let a = f.write("a.json", r#"{"d":2,"level":1,"entries":[[0,0,"1"],[0,1,"2"],[1,0,"1/2"],[1,1,"1"]]}"#);
    let v = ncproj(&["s-calc", "regular", &a]).json();
    assert_eq!(v["certificate"]["axa_equals_a"], true);
    let v = ncproj(&["s-calc", "simplicity", &a]).json();
    assert_eq!(v["certificate"]["reconstructs_one"], true);
    let b = f.write("b.json", r#"{"d":2,"level":0,"entries":[[0,0,"3"]]}"#);
    let v = ncproj(&["s-calc", "mul", &a, &b]).json();
    assert_eq!(v["result"]["element"]["entries"][1], serde_json::json!([0, 1, "6"]));
    let v = ncproj(&["s-calc", "trace", &a]).json();
    assert_eq!(v["result"]["normalized_trace"], "1");
    let v = ncproj(&["s-calc", "embed", &b, "--to", "2"]).json();
    assert_eq!(v["result"]["element"]["level"], 2);
}

#[test]
fn verify_ext1_reports_dims() {
    let run = ncproj(&["verify", "--suite", "ext1", "--d", "3"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = run.json();
    assert_eq!(v["result"]["passed"], true);
    let dims = v["result"]["criteria"][0]["data"]["dims"].as_array().unwrap();
    let first: Vec<(i64, i64)> = dims.iter().map(|r| (r["j"].as_i64().unwrap(), r["dim"].as_i64().unwrap())).collect();
    assert_eq!(&first[..3], &[(-1, 3), (0, 8), (1, 24)]);
    let text = ncproj(&["verify", "--suite", "ext1", "--d", "3", "--text"]).stdout;
    assert!(text.starts_with("PASS 12 ext1"), "{text}");
    assert!(text.contains("1944"));
}

#[test]
fn verify_runs_cheap_suites() {
    for suite in ["hilbert", "truncation", "decomposition", "vanishing"] {
        let run = ncproj(&["verify", "--suite", suite, "--d", "2"]);
        assert_eq!(run.code, 0, "{suite}: {}", run.stdout);
    }
}

#[test]
fn usage_errors_exit_two() {
    let run = ncproj(&["verify", "--d", "0"]);
    assert_eq!(run.code, 2);
    assert_eq!(run.json()["error"]["kind"], "Usage");
    assert_eq!(ncproj(&["verify", "--suite", "nonsense"]).code, 2);
    assert_eq!(ncproj(&["frobnicate"]).code, 2);
    assert_eq!(ncproj(&["hilbert", "/definitely/not/here.pres", "1"]).code, 2);
    assert_eq!(ncproj(&["leavitt-eval", "x0", "--field", "GF:4"]).code, 2);
}

#[test]
fn parse_errors_carry_positions() {
    let f = Files::new();
    let bad = f.write("bad.pres", "field: QQ\nd: 2\ngens: [0]\nrels:\n  [x0 +* x1]\n");
    let run = ncproj(&["hilbert", &bad, "1"]);
    assert_eq!(run.code, 2);
    let msg = run.json()["error"]["message"].as_str().unwrap().to_string();
    assert!(msg.contains("line 5"), "{msg}");

    let inhomogeneous = f.write("inh.pres", "field: QQ\nd: 2\ngens: [0, 1]\nrels:\n  [x0 x0, x1]\n  [x0 x1, x0 x0]\n");
    let run = ncproj(&["profile", &inhomogeneous]);
    assert_eq!(run.code, 2);
    let msg = run.json()["error"]["message"].as_str().unwrap().to_string();
    assert!(msg.contains("relation 2"), "{msg}");
}

#[test]
fn arity_flag_must_match_file() {
    let f = Files::new();
    let r = f.module("R", 2, "0", &[]);
    assert_eq!(ncproj(&["hilbert", &r, "2", "--d", "3"]).code, 2);
    assert_eq!(ncproj(&["hilbert", &r, "2", "--d", "2"]).code, 0);
}

#[test]
fn degree_cap_is_enforced() {
    let f = Files::new();
    let r = f.module("R", 2, "0", &[]);
    let run = ncproj(&["hilbert", &r, "9"]);
    assert_eq!(run.code, 1);
    assert_eq!(run.json()["error"]["kind"], "CapExceeded");
    assert_eq!(ncproj(&["hilbert", &r, "9", "--degree-cap", "10"]).json()["result"]["dim"], 512);
}

#[test]
fn prime_fields_are_selectable() {
    let f = Files::new();
    let m = f.write("m.pres", "field: GF(7)\nd: 2\ngens: [0]\nrels:\n  [x0 + 7 x1]\n");
    let v = ncproj(&["profile", &m]).json();
    assert_eq!(v["inputs"]["field"], "GF(7)");
    // 7 vanishes mod 7, so the relation is x0 alone
    assert_eq!(v["result"]["profile"]["class"]["value"], "1/2");
    let q = ncproj(&["hilbert", &m, "1", "--field", "QQ"]).json();
    assert_eq!(q["result"]["dim"], 1);
    let p = ncproj(&["hilbert", &m, "1", "--field", "GF:7"]).json();
    assert_eq!(p["result"]["dim"], 1);
}

#[test]
fn torsion_of_a_mixed_sum() {
    let f = Files::new();
    let m = f.module("mixed", 2, "0, 0", &["x0, 0", "x1, 0"]);
    let v = ncproj(&["torsion", &m]).json();
    assert_eq!(v["result"]["torsion"]["dimension"], 1);
    assert_eq!(v["result"]["quotient_profile"]["class"]["value"], "1");
    assert_eq!(v["certificate"]["quotient_torsion_dimension"], 0);
    let c = ncproj(&["qgr-class", &m]).json();
    assert_eq!(c["result"]["class"]["value"], "1");
    assert_eq!(c["certificate"]["agrees"], true);
}

#[test]
fn reports_are_deterministic() {
    let f = Files::new();
    let m = f.module("mixed", 2, "0, 1", &["x0 x1, x0", "x1 x1 x0, 0"]);
    for args in [
        vec!["profile", m.as_str()],
        vec!["torsion", m.as_str()],
        vec!["verify", "--suite", "splitting", "--seed", "7"],
        vec!["verify", "--suite", "flat", "--level-cap", "2"],
    ] {
        let a = ncproj(&args);
        let b = ncproj(&args);
        assert_eq!(a.code, 0, "{args:?}: {}", a.stdout);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn text_rendering() {
    let f = Files::new();
    let r = f.module("R", 2, "0", &[]);
    let run = ncproj(&["hilbert", &r, "3", "--text"]);
    assert_eq!(run.stdout.trim(), "hilbert:\n  dim: 8");
    let timed = ncproj(&["hilbert", &r, "3", "--timings"]).json();
    assert!(timed["timings"]["elapsed_us"].is_u64());
}
