use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn arborize(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arborize")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TRIANGLE: &str = r#"{"n": 3, "edges": [{"u": 0, "v": 1}, {"u": 1, "v": 2}, {"u": 0, "v": 2}]}"#;
const K4: &str = r#"{"n": 4, "edges": [{"u":0,"v":1},{"u":0,"v":2},{"u":0,"v":3},{"u":1,"v":2},{"u":1,"v":3},{"u":2,"v":3}]}"#;

#[test]
fn counterexample_t2_m8_refutes() {
    let o = arborize(&["counterexample", "--t", "2", "--m", "8"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("120/7"), "{out}");
    assert!(out.contains("= 17\n"), "{out}");
    assert!(out.contains("REFUTED"), "{out}");
    let o = arborize(&["counterexample", "--t", "2", "--m", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("NOT REFUTED"));
}

#[test]
fn fractional_triangle_with_certificate() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "triangle.json", TRIANGLE);
    let cert = dir.path().join("lp.json");
    let o = arborize(&["fractional", "--input", s(&g), "--format", "json", "--cert-out", s(&cert)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "3/2");
    assert_eq!(v["certificate"]["objective_dual"], "3/2");
    let o = arborize(&["certify", "--input", s(&g), "--cert", s(&cert)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("VERIFIED: LP optimum 3/2"));

    // raise a dual value: dual infeasible, objective mismatch
    let mut lp: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    lp["dual"][0] = Value::String("1/1".into());
    let bad = write(&dir, "bad.json", &lp.to_string());
    let o = arborize(&["certify", "--input", s(&g), "--cert", s(&bad)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("REJECTED"));
}

#[test]
fn decomposition_certificates_round_trip_and_tampering_is_caught() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.json", K4);
    for cmd in ["arboricity", "pseudoarboricity", "paf"] {
        let cert = dir.path().join(format!("{cmd}.json"));
        let o = arborize(&[cmd, "--input", s(&g), "--cert-out", s(&cert)]);
        assert_eq!(code(&o), 0, "{cmd}: {}", stderr(&o));
        let o = arborize(&["certify", "--input", s(&g), "--cert", s(&cert)]);
        assert_eq!(code(&o), 0, "{cmd}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("VERIFIED"));
    }
    // K4 has arboricity 2; force every edge into class 0
    let cert = dir.path().join("arboricity.json");
    let mut c: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    for entry in c["assignment"].as_array_mut().unwrap() {
        entry["classes"] = serde_json::json!([0]);
    }
    let bad = write(&dir, "tampered.json", &c.to_string());
    let o = arborize(&["certify", "--input", s(&g), "--cert", s(&bad), "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verified"], false);
    assert_eq!(v["class"], 0);
    assert!(v["violation"].as_str().unwrap().contains("class 0"), "{v}");
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "broken.json", "{\"n\": 3,\n \"edges\": [{\"u\": 0, \"v\": 1},\n");
    let o = arborize(&["stats", "--input", s(&g)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let g = write(&dir, "schema.json", r#"{"n": 3, "edges": [{"u": 0, "v": 1, "mult": -1}]}"#);
    let o = arborize(&["stats", "--input", s(&g)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("edges[0].mult"), "{}", stderr(&o));

    let g = write(&dir, "loop.json", r#"{"n": 2, "edges": [{"u": 1, "v": 1}]}"#);
    assert_eq!(code(&arborize(&["stats", "--input", s(&g)])), 2);
    assert_eq!(code(&arborize(&["stats"])), 2);
    assert_eq!(code(&arborize(&["frobnicate"])), 2);
    assert_eq!(code(&arborize(&["search", "--target", "x"])), 2);
}

#[test]
fn refusals_exit_3() {
    let dir = TempDir::new().unwrap();
    let k6: Vec<String> =
        (0..6).flat_map(|u| (u + 1..6).map(move |v| format!("{{\"u\":{u},\"v\":{v}}}"))).collect();
    let g = write(&dir, "k6.json", &format!("{{\"n\": 6, \"edges\": [{}]}}", k6.join(",")));
    let o = arborize(&["exact", "--input", s(&g)]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    let o = arborize(&["search", "--max-vertices", "9"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("about"), "{}", stderr(&o));
    let o = arborize(&["fractional", "--input", s(&g), "--budget", "forest-cap=10"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn exact_budget_reports_non_exact() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.json", K4);
    let o = arborize(&["exact", "--input", s(&g), "--budget", "nodes=1", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exact"], false);
    let o = arborize(&["exact", "--input", s(&g), "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["exact"].as_bool(), v["value"].as_u64()), (Some(true), Some(2)));
}

#[test]
fn orientation_feasible_and_infeasible() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.json", K4);
    let o = arborize(&["orient", "--input", s(&g), "--in-cap", "1", "--out-cap", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("INFEASIBLE"), "{}", stdout(&o));
    let caps = write(&dir, "caps.json", r#"{"g": {"default": 2}, "h": {"default": 1, "overrides": {"0": 3}}}"#);
    let o = arborize(&["orient", "--input", s(&g), "--caps", s(&caps), "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["arcs"].as_array().unwrap().len(), 6);
    let o = arborize(&["orient", "--input", s(&g), "--branchings", "2", "--format", "dot"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("digraph G {"));
}

#[test]
fn decompose_emits_verifiable_branchings() {
    let dir = TempDir::new().unwrap();
    let arcs: Vec<String> = (0..12).map(|v| format!("{{\"u\":{v},\"v\":{}}}", (v + 1) % 12)).collect();
    let g = write(&dir, "c12.json", &format!("{{\"directed\": true, \"n\": 12, \"edges\": [{}]}}", arcs.join(",")));
    let cert = dir.path().join("b.json");
    let o = arborize(&["decompose", "--input", s(&g), "--stats", "--cert-out", s(&cert)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("2 classes"), "{}", stdout(&o));
    assert!(stdout(&o).contains("stats: d = 1"), "{}", stdout(&o));
    let o = arborize(&["certify", "--input", s(&g), "--cert", s(&cert)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let k4 = write(&dir, "k4.json", K4);
    assert_eq!(code(&arborize(&["decompose", "--input", s(&k4), "--mode", "asymptotic"])), 2);
    let o = arborize(&["decompose", "--input", s(&k4), "--mode", "asymptotic", "--seed", "3", "--cert-out", s(&cert)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(code(&arborize(&["certify", "--input", s(&k4), "--cert", s(&cert)])), 0);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.json", K4);
    let runs: [&[&str]; 5] = [
        &["stats", "--input", s(&g), "--format", "json"],
        &["fractional", "--input", s(&g), "--format", "json"],
        &["decompose", "--input", s(&g), "--mode", "asymptotic", "--seed", "11", "--stats"],
        &["gadget", "--t", "3", "--format", "json"],
        &["search", "--max-vertices", "5", "--max-mult", "8", "--format", "json"],
    ];
    for args in runs {
        let a = arborize(args);
        let b = arborize(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(code(&a), code(&b));
    }
}

#[test]
fn output_flag_and_dot() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "triangle.json", TRIANGLE);
    let out = dir.path().join("report.dot");
    let o = arborize(&["arboricity", "--input", s(&g), "--format", "dot", "--output", s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let dot = fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("graph G {") && dot.contains("label=\"1\""), "{dot}");
}

#[test]
fn search_meets_target_and_resumes() {
    let dir = TempDir::new().unwrap();
    let resume = dir.path().join("progress.txt");
    let args = ["search", "--t", "2", "--max-vertices", "6", "--max-mult", "10", "--format", "json", "--resume", s(&resume)];
    let first = arborize(&args);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    let v: Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(v["meets_target"], true);
    assert_eq!(v["ratio"], "9/8");
    assert_eq!(v["dual"]["feasible"], true);
    assert_eq!(fs::read_to_string(&resume).unwrap().lines().count() as u64, v["classes"].as_u64().unwrap());

    // drop the tail of the progress file; the checkpoint then covers more
    // lines than remain and the run is refused as inconsistent
    let text = fs::read_to_string(&resume).unwrap();
    let keep: Vec<&str> = text.lines().take(10).collect();
    fs::write(&resume, keep.join("\n") + "\n").unwrap();
    assert_eq!(code(&arborize(&args)), 2);

    // a clean restart from an empty directory resumes to the same report
    fs::remove_file(&resume).unwrap();
    fs::remove_file(dir.path().join("progress.txt.best")).unwrap();
    let again = arborize(&args);
    let resumed = arborize(&args);
    assert_eq!(again.stdout, first.stdout);
    assert_eq!(resumed.stdout, first.stdout);
    assert!(stderr(&resumed).contains("already done"), "{}", stderr(&resumed));
}

#[test]
fn restricted_search_on_g2() {
    let dir = TempDir::new().unwrap();
    let o = arborize(&["gadget", "--t", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "15/7");
    let g = write(&dir, "g2.json", &v["graph"].to_string());
    let o = arborize(&["search", "--restrict", s(&g), "--target", "15/14", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["ratio"], "15/14");
    assert_eq!(r["evaluated"], 1);
}

#[test]
fn reproduce_targets() {
    for t in ["gt-ratios", "forest-bounds", "k3star", "blowup-scaling"] {
        let o = arborize(&["reproduce", "--target", t]);
        assert_eq!(code(&o), 0, "{t}: {}", stdout(&o));
        assert!(stdout(&o).starts_with(&format!("PASS {t}")));
    }
    assert_eq!(code(&arborize(&["reproduce", "--target", "nonsense"])), 2);
}
