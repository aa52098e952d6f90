use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use tandem::rewrite::{RewriteOp, RewriteTrace};
use tandem::strings::is_square_free;
use tandem::TDString;

fn tandem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tandem"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn dist_example() {
    let o = tandem(&["dist", "0121", "0101211"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("2", 0));
}

#[test]
fn exist_negative() {
    let o = tandem(&["exist", "0110", "01010"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("no", 1));
}

#[test]
fn gen_squarefree() {
    let o = tandem(&["gen-squarefree", "5"]);
    assert_eq!(code(&o), 0);
    let w = TDString::parse(&stdout(&o)).unwrap();
    assert_eq!(w.len(), 5);
    assert!(is_square_free(&w));
    assert_eq!(code(&tandem(&["gen-squarefree", "0"])), 2);
}

#[test]
fn malformed_input_names_field() {
    let o = tandem(&["dist", "01", "0?1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid T"));
}

#[test]
fn budget_exhaustion() {
    let o = tandem(&["--budget", "3", "exist", "0", "0000000000"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("budget exhausted", 3));
}

#[test]
fn max_k_bound() {
    let o = tandem(&["dist", "0121", "0101211", "--max-k", "1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn dist_json_trace_replays() {
    let o = tandem(&["--json", "dist", "0121", "0101211"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["distance"], 2);
    assert_eq!(v["verdict"], "reachable");
    let trace: RewriteTrace = serde_json::from_value(v["trace"].clone()).unwrap();
    assert!(trace.validate(&TDString::parse("0121").unwrap()).is_ok());
}

#[test]
fn alt_exist_witness_file_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let o = tandem(&["--json", "alt-exist", "0120", "00120120", "--witness", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "yes");
    assert_eq!(v["f"][0], serde_json::json!([1, 1]));
    let o = tandem(&["verify-trace", path.to_str().unwrap()]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("valid", 0));
}

#[test]
fn alt_exist_reason_code() {
    let o = tandem(&["--json", "alt-exist", "012", "0120"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["reason"], "residue-mismatch");
}

#[test]
fn verify_trace_reports_failing_step() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let ops = vec![RewriteOp::duplication(2, 2), RewriteOp::duplication(9, 1)];
    let doc = serde_json::json!({"source": "0121", "target": "0121211", "ops": ops});
    fs::write(&path, doc.to_string()).unwrap();
    let o = tandem(&["--json", "verify-trace", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["step"], 1);
    fs::write(&path, "{\"source\": \"01\"}").unwrap();
    assert_eq!(code(&tandem(&["verify-trace", path.to_str().unwrap()])), 2);
}

#[test]
fn reduce_writes_pair_file() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let out = dir.path().join("pair.json");
    fs::write(&inst, r#"{"t":2,"p":1,"X":"xy","B":["ab","cd","e"],"I":[[1]],"L":"L"}"#).unwrap();
    let o = tandem(&["reduce", "--instance", inst.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["S"], "ecdabxyL");
    assert_eq!(v["T"], "ecdaabbxxyyLeccddabxyLccddaabbxxyLeccddabxyL");
    let s_hat = TDString::parse(v["s_hat"].as_str().unwrap()).unwrap();
    assert!(is_square_free(&s_hat));
    fs::write(&inst, r#"{"t":2,"p":2,"X":"xy","B":["ab","cd","e"],"I":[[1],[2]],"L":"L"}"#).unwrap();
    let o = tandem(&["reduce", "--instance", inst.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("p = 2"));
}

#[test]
fn strings_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let (s, t) = (dir.path().join("s"), dir.path().join("t"));
    fs::write(&s, "0121\n").unwrap();
    fs::write(&t, "0101211\n").unwrap();
    let o = tandem(&["--file", "dist", s.to_str().unwrap(), t.to_str().unwrap()]);
    assert_eq!(stdout(&o), "2");
}

#[test]
fn roots_listing() {
    let o = tandem(&["roots", "0101211"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("0121", 0));
}

#[test]
fn check_sixary_reports_sequence() {
    let o = tandem(&["--json", "check-6ary"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["confirmed"], false);
    assert_eq!(code(&o), 1);
}

#[test]
fn deterministic_output() {
    let a = tandem(&["--json", "dist", "0120", "0112012200"]);
    let b = tandem(&["--json", "dist", "0120", "0112012200"]);
    assert_eq!(a.stdout, b.stdout);
}
