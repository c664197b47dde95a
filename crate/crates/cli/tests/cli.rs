use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_choquet-rn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    let report = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (out.status.code().unwrap(), report)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("choquet-rn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn integrates_the_classical_pair() {
    let (code, r) = json(&["integrate", "--input", &data("f2.json"), "--set", "a,b"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["integral"], "8/3");
    let layers = r["results"]["breakdown"]["layers"].as_array().unwrap();
    assert_eq!(layers.len(), 2);
    assert_eq!(layers[0]["contribution"], "5/3");
    assert_eq!(layers[1]["contribution"], "1");
    let (_, single) = json(&["integrate", "--input", &data("f2.json"), "--set", "b"]);
    assert_eq!(single["results"]["integral"], "5/3");
}

#[test]
fn solve_refutes_at_the_singleton() {
    let (code, r) = json(&["solve", "--input", &data("f3.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["passed"], false);
    assert_eq!(r["results"]["certificate"]["solvable"], false);
    assert_eq!(r["results"]["certificate"]["witness"]["set"], "1");
    let chains = r["results"]["certificate"]["chains"].as_array().unwrap();
    assert_eq!(chains.len(), 2);
}

#[test]
fn nonuniqueness_example() {
    let (code, r) = json(&["example", "ex-3-6"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["f1"]["verification"]["holds"], true);
    assert_eq!(r["results"]["f2"]["verification"]["holds"], true);
    assert_eq!(r["results"]["f1"]["verification"]["sets_checked"], 16);
    assert_eq!(r["results"]["equal_ae"]["equal"], false);
    assert_eq!(r["results"]["equal_ae"]["measure"], "1");
    assert_eq!(r["results"]["property_sigma"]["holds"], false);
}

#[test]
fn countable_example_glues_the_identity() {
    let (code, r) = json(&["example", "ex-4-4", "--n", "8"]);
    assert_eq!(code, 0);
    let f = &r["results"]["sigma_finite"]["glue"]["f"];
    for x in 0..=8 {
        assert_eq!(f[x.to_string()], x.to_string());
    }
    let v = &r["results"]["sigma_finite"]["verification"];
    assert_eq!(v["sets_checked"], 512);
    assert_eq!(v["holds"], true);
}

#[test]
fn classical_example_end_to_end() {
    let (code, r) = json(&["example", "classical"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["integrate"]["integral"], "8/3");
    let family = r["results"]["classical"]["family"].as_array().unwrap();
    let alphas: Vec<&str> = family.iter().map(|b| b["alpha"].as_str().unwrap()).collect();
    assert_eq!(alphas, ["0", "2", "5"]);
    assert_eq!(r["results"]["classical"]["f"]["b"], "5");
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["suite", "--seed", "11", "--count", "40", "--format", "json"],
        vec!["solve", "--input", &data("f3.json"), "--format", "json"],
        vec!["example", "ex-3-6", "--format", "text"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), b.status.code());
    }
    let a = run(&["suite", "--seed", "1", "--count", "20", "--format", "json"]);
    let b = run(&["suite", "--seed", "2", "--count", "20", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
}

#[test]
fn echoed_specs_replay_to_the_same_run() {
    let cases: Vec<Vec<String>> = vec![
        vec!["integrate".into(), "--input".into(), data("f2.json"), "--set".into(), "a".into()],
        vec!["check-decomposition".into(), "--input".into(), data("f1.json")],
        vec!["props".into(), "--input".into(), data("f1.json")],
        vec!["verify".into(), "--input".into(), data("f2.json")],
        vec!["solve".into(), "--input".into(), data("f3.json")],
        vec!["sigma-finite".into(), "--input".into(), data("countable.json")],
    ];
    for (k, args) in cases.iter().enumerate() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, first) = json(&args);
        let path = scratch(&format!("echo{k}.json"));
        std::fs::write(&path, serde_json::to_string(&first["spec"]).unwrap()).unwrap();
        let mut replay = args.clone();
        replay[2] = path.to_str().unwrap();
        let (code2, second) = json(&replay);
        assert_eq!(code, code2);
        assert_eq!(first["verdicts"], second["verdicts"]);
        assert_eq!(first["results"], second["results"]);
        assert_eq!(first["spec"], second["spec"]);
    }
    // examples echo a spec that the ordinary commands accept
    let (_, ex) = json(&["example", "classical"]);
    let path = scratch("classical.json");
    std::fs::write(&path, serde_json::to_string(&ex["spec"]).unwrap()).unwrap();
    let (code, r) = json(&["classical", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"], ex["results"]["classical"]);
}

fn leaves(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => m.values().for_each(|x| leaves(x, out)),
        Value::Array(a) => a.iter().for_each(|x| leaves(x, out)),
        Value::String(s) => out.push(s.clone()),
        other => out.push(other.to_string()),
    }
}

#[test]
fn text_and_json_carry_the_same_facts() {
    for args in [
        vec!["classical", "--input", &data("f2.json")],
        vec!["solve", "--input", &data("f3.json")],
        vec!["example", "ex-3-6"],
    ] {
        let (_, r) = json(&args);
        let text = String::from_utf8(run(&args).stdout).unwrap();
        let mut facts = Vec::new();
        leaves(&r["results"], &mut facts);
        leaves(&r["spec"], &mut facts);
        for fact in facts {
            assert!(text.contains(&fact), "{fact:?} missing from text output");
        }
        for v in r["verdicts"].as_array().unwrap() {
            assert!(text.contains(v["name"].as_str().unwrap()));
        }
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    let out = run(&["verify", "--input", &data("malformed.json")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4 column"));
    assert_eq!(run(&["example", "ex-9-9"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--input", "/nonexistent/spec.json"]).status.code(), Some(3));
    assert_eq!(run(&["comonotone", "--input", &data("f1.json")]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--input", &data("f2.json")]).status.code(), Some(0));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn invalid_tables_and_names_are_input_errors() {
    let path = scratch("decreasing.json");
    std::fs::write(
        &path,
        r#"{"atoms": ["a", "b"], "measures": {"mu": {"type": "explicit", "table": {"a": "2", "b": "1", "a,b": "1"}}}}"#,
    )
    .unwrap();
    let out = run(&["props", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("measures.mu"), "{err}");
    let out = run(&["verify", "--input", &data("f2.json"), "--f", "missing"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn out_flag_writes_the_report() {
    let path = scratch("report.json");
    let out = run(&["verify", "--input", &data("f2.json"), "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["verdicts"][0]["holds"], true);
}

#[test]
fn dyadic_and_derive_read_the_family() {
    let (code, r) = json(&["dyadic", "--input", &data("f2.json"), "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["f_n"]["a"], "2");
    assert_eq!(r["results"]["f_n"]["b"], "3");
    let (code, r) = json(&["derive", "--input", &data("f1.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["f"]["2"], "2");
    assert_eq!(r["results"]["f"]["1"], "1");
}
