use std::io::Write;
use std::process::{Command, Output};

use bifix_core::{CodeSet, Generator};
use serde_json::Value;

fn bifix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bifix")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = bifix(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
    v["result"].clone()
}

fn temp_file(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn enumerate_degree_three() {
    let r = json(&["code", "enumerate", "--gen", "fixpoint:a->ab,b->a@a", "--degree", "3"]);
    assert_eq!(r["count"], 13);
    let codes: Vec<CodeSet> = serde_json::from_value(r["codes"].clone()).unwrap();
    assert_eq!(codes.len(), 13);
    assert!(codes.iter().all(|x| x.len() == 4 && x.is_bifix()));
}

#[test]
fn scalar_commands() {
    assert_eq!(stdout(&bifix(&["count", "--hall", "4", "2"])), "71\n");
    assert_eq!(stdout(&bifix(&["group", "hall", "--degree", "3", "--rank", "2"])), "13\n");
    assert_eq!(stdout(&bifix(&["period", "cft", "--word", "abaab"])), "3\n");
    assert_eq!(stdout(&bifix(&["period", "least", "--word", "abaab"])), "3\n");
    assert_eq!(stdout(&bifix(&["period", "rep", "--prefix", "ab", "--suffix", "a"])), "2\n");
}

#[test]
fn analysis_report() {
    let r = json(&["code", "analyze", "--gen", "fibonacci", "--words", "a,bab,baab"]);
    assert_eq!(r["degree"], 2);
    assert_eq!(r["cardinality"], 3);
    let kernel: CodeSet = serde_json::from_value(r["kernel"].clone()).unwrap();
    assert_eq!(kernel, CodeSet::from(&["a"][..]));
    let derived: CodeSet = serde_json::from_value(r["derived"].clone()).unwrap();
    assert_eq!(derived, CodeSet::from(&["a", "b"][..]));
}

#[test]
fn code_files() {
    let f = temp_file("# Giuseppina\naa\nabaaba abab\nbaab, baba\n");
    let path = f.path().to_str().unwrap();
    let r = json(&["syntactic", "fgroup", "--gen", "fibonacci", "--code", path]);
    assert_eq!(r["points"].as_array().unwrap().len(), 4);
    let r = json(&["code", "analyze", "--gen", "fibonacci", "--code", path]);
    assert_eq!(r["degree"], 4);
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "syntactic", "green", "--words", "a,bab,baab", "--gen", "fibonacci"];
    assert_eq!(bifix(&args).stdout, bifix(&args).stdout);
    let args = ["--json", "measure", "--gen", "tribonacci", "--depth", "4"];
    assert_eq!(bifix(&args).stdout, bifix(&args).stdout);
}

#[test]
fn measures() {
    let r = json(&["measure", "--gen", "fibonacci", "--words", "a,ba"]);
    assert_eq!(r["probability"]["exact"], "1");
    assert_eq!(r["average_length"]["exact"], "5/2-1/2*sqrt5");
    let r = json(&["measure", "--gen", "pal:(ab)^w", "--depth", "3"]);
    assert_eq!(r["flavor"], "right");
}

#[test]
fn generator_round_trip() {
    let r = json(&["factors", "--gen", "pal:c,(ab)^w", "--depth", "3"]);
    assert_eq!(r["depth"], 3);
    assert_eq!(r["factors"]["1"].as_array().unwrap().len(), 3);
    let g: Generator = "pal:c,(ab)^w".parse().unwrap();
    assert_eq!(g.to_string(), "pal:c,(ab)^w");
}

#[test]
fn exit_codes() {
    let usage = bifix(&["code", "analyze", "--gen", "fibonacci"]);
    assert_eq!(usage.status.code(), Some(2));
    let usage = bifix(&["code", "analyze", "--gen", "nonsense", "--words", "a"]);
    assert_eq!(usage.status.code(), Some(2));
    let dot = bifix(&["--dot", "count", "--hall", "2", "2"]);
    assert_eq!(dot.status.code(), Some(2));
    let domain = bifix(&["code", "analyze", "--gen", "fibonacci", "--words", "a,bab"]);
    assert_eq!(domain.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("NotMaximal"));
    let window = bifix(&["--max-depth", "8", "factors", "--gen", "fibonacci", "--depth", "4", "--returns", "babaab"]);
    assert_eq!(window.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&window.stderr).contains("Window"));
}

#[test]
fn depth_grows_automatically() {
    let r = json(&["factors", "--gen", "fibonacci", "--returns", "babaab"]);
    assert_eq!(r["right"].as_array().unwrap().len(), 2);
}

#[test]
fn dot_exports() {
    for args in [
        vec!["--dot", "automaton", "coset", "--words", "a,bab,baab"],
        vec!["--dot", "automaton", "incidence", "--words", "aa,ab,ba"],
        vec!["--dot", "group", "fold", "--words", "a,bab,baab"],
    ] {
        let o = bifix(&args);
        assert!(o.status.success());
        let out = stdout(&o);
        assert!(out.starts_with("digraph") || out.starts_with("graph"));
    }
}

#[test]
fn seeded_folds_agree() {
    let base = json(&["group", "fold", "--words", "aa,abaaba,abab,baab,baba"]);
    for seed in ["1", "2", "3"] {
        let r = json(&["--seed", seed, "group", "fold", "--shuffle", "--words", "aa,abaaba,abab,baab,baba"]);
        assert_eq!(r, base);
    }
}

#[test]
fn config_file() {
    let cfg = temp_file("depth = 5\n");
    let r = json(&["--config", cfg.path().to_str().unwrap(), "factors", "--gen", "fibonacci"]);
    assert_eq!(r["depth"], 5);
    let bad = temp_file("colour = red\n");
    let o = bifix(&["--config", bad.path().to_str().unwrap(), "count", "--hall", "2", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn forced_periodicity() {
    let f = temp_file("aa\nbb\n");
    let r = json(&["period", "forced", "--forbidden", f.path().to_str().unwrap()]);
    assert_eq!(r["all_ultimately_periodic"], true);
    assert_eq!(r["cycles"], serde_json::json!(["ab"]));
}

#[test]
fn verify_subset() {
    let o = bifix(&["verify", "2", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
    assert_eq!(bifix(&["verify", "99"]).status.code(), Some(2));
}
