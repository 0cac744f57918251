use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use hopfcoh::bimodule::HopfBimodule;
use hopfcoh::spec_file::{bundled, BimoduleSpec, LoadedAlgebra};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(format!("{name}.json"))
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcoh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn last_line(o: &Output) -> String {
    stdout(o).lines().last().unwrap_or_default().to_string()
}

#[test]
fn check_bundled_files() {
    for name in ["kc2_q", "kc2_gf2", "ks3_q", "ks3_dual_q", "taft2_q", "taft3_gf7"] {
        let o = run(&["check", data(name).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn broken_counit_names_the_axiom() {
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(data("kc2_q")).unwrap()).unwrap();
    v["counit"] = serde_json::json!(["1", "0"]);
    let path = scratch("broken_counit.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let o = run(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("counit"), "{}", stderr(&o));
    assert!(stdout(&o).contains("FAIL counit"));
}

#[test]
fn malformed_input_exits_2() {
    let path = scratch("malformed.json");
    std::fs::write(&path, "{\"field\": \"Q\", \"dim\": ").unwrap();
    assert_eq!(run(&["check", path.to_str().unwrap()]).status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(data("kc2_q")).unwrap()).unwrap();
    let mut bad = v.clone();
    bad["mul"][0][2] = serde_json::json!(7);
    std::fs::write(&path, bad.to_string()).unwrap();
    assert_eq!(run(&["check", path.to_str().unwrap()]).status.code(), Some(2));
    let mut bad = v;
    bad["counit"][0] = serde_json::json!("1/0");
    std::fs::write(&path, bad.to_string()).unwrap();
    assert_eq!(run(&["check", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["check", "/nonexistent/file.json"]).status.code(), Some(2));
    let kc2 = data("kc2_q");
    assert_eq!(run(&["cohomology", kc2.to_str().unwrap(), "--theory", "x"]).status.code(), Some(2));
    assert_eq!(run(&["verify", kc2.to_str().unwrap(), "--suite", "x"]).status.code(), Some(2));
}

#[test]
fn cohomology_tables() {
    let o = run(&["cohomology", data("kc2_gf2").to_str().unwrap(), "--theory", "b", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(last_line(&o), "H^n: 1 1 1 1");
    let o = run(&["cohomology", data("kc2_q").to_str().unwrap(), "--theory", "b", "--max-degree", "3"]);
    assert_eq!(last_line(&o), "H^n: 1 0 0 0");
    let taft = data("taft2_q");
    let gs = run(&["cohomology", taft.to_str().unwrap(), "--theory", "gs", "--max-degree", "2"]);
    let h4 = run(&["cohomology", taft.to_str().unwrap(), "--theory", "h4", "--max-degree", "2"]);
    assert_eq!(last_line(&gs), "H^n: 1 0 3");
    assert_eq!(last_line(&gs), last_line(&h4));
}

#[test]
fn cohomology_json_round_trips() {
    let o = run(&["cohomology", data("kc2_gf2").to_str().unwrap(), "--theory", "h4", "--max-degree", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["field"], "GF(2)");
    assert_eq!(v["theory"], "h4");
    assert_eq!(v["dims"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["module"], serde_json::Value::Null);
    let reps = v["representatives"].as_array().unwrap();
    assert_eq!(reps.iter().map(|r| r.as_array().unwrap().len()).collect::<Vec<_>>(), vec![1, 1, 1]);
    let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn coefficient_files() {
    let LoadedAlgebra::Rational(h) = bundled("kc2_q").unwrap() else { panic!() };
    let r = HopfBimodule::regular(Arc::new(h));
    let hh = r.under_tensor(&r).unwrap();
    let alg = data("kc2_q").canonicalize().unwrap();
    let path = scratch("kc2_under_square.json");
    std::fs::write(&path, BimoduleSpec::from_bimodule(&hh, alg.to_str().unwrap()).to_json()).unwrap();
    let f = data("kc2_q");
    // H⁰ law: Hom_H(H⊗̲H, H) is one-dimensional over kC₂
    let o = run(&["cohomology", f.to_str().unwrap(), "--theory", "h4", "--max-degree", "1", "--module", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(last_line(&o).starts_with("H^n: 1 "), "{}", stdout(&o));
    // the same bimodule over a different algebra file is rejected
    let g = data("kc2_gf2");
    let o = run(&["cohomology", g.to_str().unwrap(), "--theory", "h4", "--max-degree", "1", "--module", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn resource_guard_exits_3() {
    let o = run(&["cohomology", data("taft3_gf7").to_str().unwrap(), "--theory", "gs", "--max-degree", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("(p=0, q=2)"), "{}", stderr(&o));
    let o = run(&["cohomology", data("kc2_q").to_str().unwrap(), "--theory", "h4", "--max-degree", "2", "--max-entries", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn cup_table_mod_2() {
    let o = run(&["cup", data("kc2_gf2").to_str().unwrap(), "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("[0.0] ⌣ [2.0] = [2.0]"));
    assert!(text.contains("[1.0] ⌣ [2.0] = [3.0]"));
    assert!(!text.contains(" not a coboundary"));
    let o = run(&["cup", data("kc2_gf2").to_str().unwrap(), "--max-degree", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let products = v["products"].as_array().unwrap();
    assert_eq!(products.len(), 10);
    // symmetric in characteristic 2
    for p in products {
        let swapped = products.iter().find(|q| q["left"] == p["right"] && q["right"] == p["left"]).unwrap();
        assert_eq!(p["coordinates"], swapped["coordinates"]);
        assert_eq!(p["commutator"], "coboundary");
    }
}

#[test]
fn verify_reports_match_across_threads() {
    let f = data("kc2_gf2");
    let one = run(&["verify", f.to_str().unwrap(), "--suite", "all", "--threads", "1"]);
    let many = run(&["verify", f.to_str().unwrap(), "--suite", "all", "--threads", "8"]);
    assert_eq!(one.status.code(), Some(0), "{}", stdout(&one));
    assert_eq!(stdout(&one), stdout(&many));
    assert!(last_line(&one).ends_with(" 0 failed"));
    let o = run(&["verify", f.to_str().unwrap(), "--suite", "axioms", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["lines"].as_array().unwrap().iter().all(|l| l["pass"] == true));
}

#[test]
fn verify_rejects_a_broken_algebra() {
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(data("kc2_gf2")).unwrap()).unwrap();
    v["antipode"] = serde_json::json!([]);
    let path = scratch("no_antipode.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let o = run(&["verify", path.to_str().unwrap(), "--suite", "axioms"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("antipode"), "{}", stderr(&o));
}
