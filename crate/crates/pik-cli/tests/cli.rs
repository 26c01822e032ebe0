use std::path::PathBuf;
use std::process::{Command, Output};

use pik_core::{eval, ExactMatrix, Precision, Term};
use serde_json::Value;
use tempfile::TempDir;

fn pik(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pik")).env_remove("PIK_K").args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Files {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, body: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    }
}

fn k(n: u32) -> Precision {
    Precision::new(n).unwrap()
}

#[test]
fn eval_prints_exact_json() {
    let f = Files::new();
    let o = pik(&["eval", &f.put("vv", "V ; V")]);
    assert_eq!(o.status.code(), Some(0));
    let m: ExactMatrix = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(m, eval(&Term::x(), k(2)).unwrap());

    let o = pik(&["eval", &f.put("one", "id(1)")]);
    let m: ExactMatrix = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(m.is_identity() && m.rows() == 1);

    let o = pik(&["eval", "--format", "text", &f.put("h", "H"), "-k", "3"]);
    assert!(stdout(&o).starts_with("# approximate"));
    assert!(stdout(&o).contains("0.707107"));
}

#[test]
fn errors_exit_two() {
    let f = Files::new();
    let h = f.put("h", "H");
    let o = pik(&["eval", &h]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("requires k >= 3"));
    assert_eq!(pik(&["eval", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(pik(&["-k", "1", "eval", &h]).status.code(), Some(2));
    assert_eq!(pik(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pik(&["suite", "nope"]).status.code(), Some(2));
    assert_eq!(pik(&["eval", &f.put("bad", "V ; (V")]).status.code(), Some(2));
    assert_eq!(pik(&["eval", &f.put("ill", "V ; id(3)")]).status.code(), Some(2));
}

#[test]
fn precision_from_env_and_flag() {
    let f = Files::new();
    let h = f.put("h", "H ; H");
    let id = f.put("id", "id(2)");
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_pik"));
        c.env_remove("PIK_K");
        if let Some(v) = env {
            c.env("PIK_K", v);
        }
        c.args(args).output().unwrap().status.code()
    };
    assert_eq!(run(Some("3"), &["eq", &h, &id]), Some(0));
    assert_eq!(run(None, &["eq", &h, &id]), Some(2));
    // the flag wins
    assert_eq!(run(Some("2"), &["-k", "4", "eq", &h, &id]), Some(0));
    assert_eq!(run(Some("4"), &["-k", "2", "eq", &h, &id]), Some(2));
}

#[test]
fn phase_witness_is_printed() {
    let f = Files::new();
    let o = pik(&["eq", "--phase", &f.put("a", "scale(3, V)"), &f.put("b", "V")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("zeta^3"));
}

#[test]
fn synth_reads_matrix_json() {
    let f = Files::new();
    let t = Term::sequence(3, vec![Term::sum(Term::V, Term::Id(1)), Term::sum(Term::Id(1), Term::V)]);
    let u = eval(&t, k(2)).unwrap();
    let path = f.put("u.json", &serde_json::to_string(&u).unwrap());
    let o = pik(&["synth", &path]);
    assert_eq!(o.status.code(), Some(0));
    let back = pik_core::syntax::parse(&stdout(&o), k(2)).unwrap();
    assert_eq!(eval(&back, k(2)).unwrap(), u);

    let o = pik(&["synth", "--stats", &path]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["gate_count"].as_u64().unwrap() > 0);
    assert!(v["max_den_exp_seen"].as_u64().is_some());

    let bad = f.put("bad.json", r#"{"k":2,"rows":1,"cols":1,"entries":[[{"k":2,"den_exp":0,"coeffs":[2,0]}]]}"#);
    assert_eq!(pik(&["synth", &bad]).status.code(), Some(2));
}

#[test]
fn qft_outputs() {
    let o = pik(&["-k", "6", "qft", "-n", "8", "--stats"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["approx_cp"], 3);
    assert_eq!(v["native_cp"], 25);
    let o = pik(&["-k", "3", "qft", "-n", "3", "--emit"]);
    assert_eq!(o.status.code(), Some(0));
    let t = pik_core::syntax::parse(&stdout(&o), k(3)).unwrap();
    assert_eq!(t.dom().unwrap(), 8);
    assert_eq!(pik(&["-k", "3", "qft", "-n", "4"]).status.code(), Some(2));
}

#[test]
fn term_transformers_print_parseable_terms() {
    let f = Files::new();
    let src = f.put("t", "T (+) V ; swap(2, 2)");
    for cmd in ["conj", "dagger"] {
        let o = pik(&["-k", "3", cmd, &src]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        pik_core::syntax::parse(&stdout(&o), k(3)).unwrap();
    }
    let o = pik(&["sigma", "2", "3"]);
    let s = pik_core::syntax::parse(&stdout(&o), k(2)).unwrap();
    assert!(s.is_additive_permutation());

    let o = pik(&["-k", "3", "embed", "--from-k", "4", &src]);
    assert_eq!(o.status.code(), Some(0));
    let t = pik_core::syntax::parse(&stdout(&o), k(3)).unwrap();
    assert_eq!(t.dom().unwrap(), 8);
    assert_eq!(pik(&["-k", "4", "embed", "--from-k", "4", &src]).status.code(), Some(2));
}

#[test]
fn channel_equality_ignores_global_phase() {
    let f = Files::new();
    let (a, b, c) = (f.put("a", "scale(1, V)"), f.put("b", "V"), f.put("c", "X"));
    assert_eq!(pik(&["channel", "eq", &a, &b]).status.code(), Some(0));
    assert_eq!(pik(&["channel", "eq", &a, &c]).status.code(), Some(1));
}

#[test]
fn suites_emit_versioned_reports() {
    for args in [
        vec!["-k", "4", "suite", "axioms"],
        vec!["-k", "3", "suite", "catalysis", "--trials", "10", "--seed", "5"],
        vec!["suite", "staton", "--trials", "2"],
        vec!["channel", "staton", "--trials", "2", "--sequential"],
        vec!["suite", "completeness", "--trials", "10"],
        vec!["-k", "3", "suite", "coherence", "--trials", "10"],
    ] {
        let o = pik(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["schema"], "pik-report-1");
        assert!(v["failures"].as_array().unwrap().is_empty());
    }
    // same seed, same report
    let a = stdout(&pik(&["-k", "3", "suite", "catalysis", "--trials", "8", "--seed", "11"]));
    let b = stdout(&pik(&["-k", "3", "suite", "catalysis", "--trials", "8", "--seed", "11", "--sequential"]));
    assert_eq!(a, b);
    // catalysis needs k >= 3
    assert_eq!(pik(&["suite", "catalysis"]).status.code(), Some(2));
}
