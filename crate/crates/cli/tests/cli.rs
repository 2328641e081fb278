use serde_json::Value;
use std::process::{Command, Output};

fn qc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qc")).args(args).output().expect("qc runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn run_all_passes_on_a1_four() {
    let o = qc(&["run", "all", "--type", "A1", "--ell", "4", "--bound", "3", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], "qc-report/1");
    let suites: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert_eq!(suites, ["drinfeld", "pbw", "rel-zeta", "rel-epsilon", "theta", "center", "frob"]);
}

#[test]
fn excluded_orders_exit_two() {
    let o = qc(&["run", "rel-zeta", "--type", "A1", "--ell", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("must exceed"));
    assert_eq!(qc(&["run", "bogus"]).status.code(), Some(2));
    assert_eq!(qc(&["run", "pbw", "--type", "Z9"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_without_timing() {
    let args = ["run", "theta", "--type", "A2", "--ell", "6", "--seed", "3", "--no-timing"];
    assert_eq!(qc(&args).stdout, qc(&args).stdout);
    let timed = json(&qc(&["run", "pbw", "--type", "A1", "--samples", "5"]));
    assert!(timed.get("timing_ms").is_some());
}

#[test]
fn counting_csv_identity_column() {
    let o = qc(&["run", "counting", "--types", "A1..G2", "--ell", "2..24", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let headers = rows.headers().unwrap().clone();
    let id = headers.iter().position(|h| h == "identity").unwrap();
    let skip = headers.iter().position(|h| h == "skipped").unwrap();
    let mut n = 0;
    for r in rows.records() {
        let r = r.unwrap();
        if r[skip].is_empty() {
            assert_eq!(&r[id], "true");
            n += 1;
        }
    }
    assert!(n > 50);
}

#[test]
fn frob_commands() {
    let o = qc(&["frob", "crosscheck", "--type", "A1", "--ell", "4", "--bound", "2", "--json", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "pass");
    let dir = std::env::temp_dir().join(format!("qc-table-{}.csv", std::process::id()));
    let path = dir.to_str().unwrap();
    let o = qc(&["frob", "table", "--types", "A1,A2,B2,G2", "--ell", "2..24", "--csv", path]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dir).unwrap();
    assert!(text.starts_with("type,ell,"));
    std::fs::remove_file(dir).ok();
}

#[test]
fn t_element_reports_its_orientation() {
    let o = qc(&["center", "t-element", "--type", "A1", "--ell", "4", "--lambda", "1", "--emit", "element,iota"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["conventions"]["iota_orientation"], "flip-exponent");
    assert_eq!(v["iota"].as_array().unwrap().len(), 2);
    assert!(v["element"].as_str().unwrap().contains("k[2]"));
}

#[test]
fn module_and_root_system() {
    let v = json(&qc(&["module", "--type", "A2", "--lambda", "1,0", "--ell", "5"]));
    assert_eq!(v["modules"][0]["dimension"], 3);
    let v = json(&qc(&["root-system", "--type", "B2"]));
    assert_eq!(v["beta_sequence"].as_array().unwrap().len(), 4);
    let v = json(&qc(&["root-system", "--type", "A", "--rank", "3"]));
    assert_eq!(v["system"]["label"], "A3");
}
