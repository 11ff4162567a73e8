use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn luckbits(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_luckbits")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = luckbits(&full);
    assert!(o.status.success(), "{args:?} failed: {}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_str().unwrap().to_string()
}

#[test]
fn describe_lottery_run() {
    let v = json(&["describe", "--seq", "22,23,24,25,26,27", "--domain", "1..49"]);
    assert_eq!(v["command"], "describe");
    assert_eq!(v["engine_version"], env!("CARGO_PKG_VERSION"));
    let p = &v["payload"];
    assert_eq!(p["code"], "arith(22, +1, 6)");
    assert_eq!(p["code_tree"]["kind"], "arith_seq");
    let u = p["unexpectedness"].as_f64().unwrap();
    assert!((u - 15.07).abs() < 0.01, "{u}");
    let prob = p["probability"].as_f64().unwrap();
    assert!((prob - (-u).exp2()).abs() < 1e-15);
    assert_eq!(p["probability_clamped"], false);
}

#[test]
fn describe_single_value_clamps() {
    let v = json(&["describe", "--seq", "7", "--domain", "1..49"]);
    assert_eq!(v["payload"]["unexpectedness"].as_f64(), Some(0.0));
    assert!(v["payload"]["unexpectedness_raw"].as_f64().unwrap() < 0.0);
    assert_eq!(v["payload"]["probability"].as_f64(), Some(1.0));
    assert_eq!(v["payload"]["probability_clamped"], true);
}

#[test]
fn describe_table_uses_four_decimals() {
    let o = luckbits(&["describe", "--seq", "22,23,24,25,26,27", "--domain", "1..49"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("C      18.6147"), "{out}");
    assert!(out.contains("U      15.0735"), "{out}");
}

#[test]
fn describe_rejects_bad_input_with_one_line() {
    for args in [
        &["describe", "--seq", "1,2", "--domain", "5..9"][..],
        &["describe", "--seq", "1,x", "--domain", "1..9"],
        &["describe", "--seq", "1", "--domain", "9..1"],
        &["describe", "--seq", "1", "--domain", "1-9"],
        &["describe", "--seq", "1,1,1,1,1,1,1,1,1,1,1,1,1", "--domain", "1..9"],
    ] {
        let o = luckbits(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr(&o);
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn describe_negative_domain() {
    let v = json(&["describe", "--seq", "-3,-1,1", "--domain", "-5..5"]);
    assert_eq!(v["payload"]["code"], "arith(-3, +2, 3)");
}

#[test]
fn nearmiss_examples() {
    let value = |args: &[&str]| json(args)["payload"]["value"].as_f64().unwrap();
    let d = value(&["nearmiss", "--geometry", "discrete", "--l0", "100", "--delta", "5", "--v", "10"]);
    assert!((d - 12.3219).abs() < 5e-5);
    let c = value(&["nearmiss", "--geometry", "continuous", "--l0", "100", "--delta", "5", "--v", "10"]);
    assert!((c - 13.3219).abs() < 5e-5);
    let k4 = value(&["nearmiss", "--geometry", "discrete", "--l0", "100", "--delta", "5", "--v", "10", "--k", "4"]);
    assert_eq!(k4, d - 2.0);
}

#[test]
fn nearmiss_report_has_terms_and_eta() {
    let v = json(&["nearmiss", "--l0", "360", "--l2", "90", "--delta", "5", "--v", "10"]);
    let p = &v["payload"];
    assert_eq!(p["mode"], "l2");
    assert_eq!(p["eta_star"].as_f64(), Some(0.0));
    let sum: f64 = p["terms"].as_array().unwrap().iter().map(|t| t["value"].as_f64().unwrap()).sum();
    assert!((sum - p["value"].as_f64().unwrap()).abs() < 1e-9);
    assert_eq!(v["inputs"]["l2"].as_f64(), Some(90.0));
}

#[test]
fn nearmiss_expectation_baseline() {
    let v = json(&["nearmiss", "--l0", "360", "--l2", "90", "--delta", "5", "--v", "10", "--baseline", "expectation"]);
    assert_eq!(v["payload"]["mode"], "l3");
    let o = luckbits(&[
        "nearmiss",
        "--geometry",
        "continuous",
        "--l0",
        "100",
        "--delta",
        "5",
        "--v",
        "10",
        "--baseline",
        "expectation",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn nearmiss_constraint_violations_exit_2() {
    for args in [
        &["nearmiss", "--l0", "100", "--delta", "0.5", "--v", "10"][..],
        &["nearmiss", "--l0", "100", "--delta", "5", "--v", "10", "--k", "0"],
        &["nearmiss", "--l0", "100", "--l2", "200", "--delta", "5", "--v", "10"],
        &["nearmiss", "--geometry", "continuous", "--l0", "100", "--delta", "0.5", "--v", "10"],
        &["nearmiss", "--geometry", "continuous", "--l0", "100", "--l2", "3", "--delta", "5", "--v", "10"],
        &["nearmiss", "--geometry", "continuous", "--l0", "1e9", "--delta", "5", "--v", "10", "--alpha", "1e-3"],
        &["nearmiss", "--l0", "100", "--delta", "5"],
    ] {
        let o = luckbits(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn nearmiss_clamp_scores_at_threshold() {
    let v = json(&["nearmiss", "--geometry", "continuous", "--l0", "100", "--delta", "0.5", "--v", "10", "--clamp"]);
    let p = &v["payload"];
    let at_alpha = json(&["nearmiss", "--geometry", "continuous", "--l0", "100", "--delta", "1", "--v", "10"]);
    assert_eq!(p["value"], at_alpha["payload"]["value"]);
    assert!(p["notes"][0].as_str().unwrap().contains("precision threshold"));
}

#[test]
fn quiet_prints_headline_only() {
    let o = luckbits(&["--quiet", "nearmiss", "--l0", "100", "--delta", "5", "--v", "10"]);
    assert_eq!(stdout(&o), "12.3219\n");
    let o = luckbits(&["stories", "--quiet"]);
    assert_eq!(stdout(&o), "congruent: 19/21; mismatches: S5.2, S9.1\n");
}

#[test]
fn stories_shipped_reference() {
    let o = luckbits(&["stories"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.trim_end().ends_with("congruent: 19/21; mismatches: S5.2, S9.1"));
    assert_eq!(out.lines().filter(|l| l.ends_with(" NO")).count(), 2);

    let v = json(&["stories"]);
    let p = &v["payload"];
    assert_eq!(p["congruent"], 19);
    assert_eq!(p["total"], 21);
    assert_eq!(p["mismatches"], serde_json::json!(["S5.2", "S9.1"]));
}

#[test]
fn stories_custom_files() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    let o = luckbits(&["stories", "--file", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("congruent: 0/0; mismatches: none"));

    // a custom dataset is reported, not held to the shipped reference
    let one = dir.path().join("one.json");
    std::fs::write(
        &one,
        r#"[{"id": "S1", "choices": [{"index": 1, "rule": "delta_min", "options": [
            {"label": "near", "value": 2, "unit": "m", "majority_pct": 30, "paper_predicted": true},
            {"label": "far", "value": 9, "unit": "m", "majority_pct": 70, "paper_predicted": false}]}]}]"#,
    )
    .unwrap();
    let o = luckbits(&["stories", "--file", one.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("congruent: 0/1; mismatches: S1.1"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"[{"id": "S1", "choices": [{"index": 1, "rule": "foo", "options": []}]}]"#).unwrap();
    let o = luckbits(&["stories", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = luckbits(&["stories", "--file", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn assess_wheel_scene() {
    let v = json(&["assess", "--scene", &fixture("wheel_scene.json")]);
    let p = &v["payload"];
    assert_eq!(p["chosen"]["mode"], "l2");
    assert_eq!(p["chosen"]["eta_star"].as_f64(), Some(0.0));
    assert_eq!(p["chosen"]["counterfactual_id"], "near_miss");
    assert!((p["chosen"]["value"].as_f64().unwrap() - 12.3219).abs() < 5e-5);
    let baselines: Vec<f64> = p["baselines"].as_array().unwrap().iter().map(|b| b["value"].as_f64().unwrap()).collect();
    assert_eq!(baselines, vec![9.0, 2.0]);

    let o = luckbits(&["assess", "--scene", &fixture("wheel_scene.json")]);
    let out = stdout(&o);
    assert!(out.contains("E(1-p)") && out.contains("du/D"), "{out}");
}

#[test]
fn assess_actual_only_gives_l1() {
    let v = json(&["assess", "--scene", &fixture("actual_only.json")]);
    assert_eq!(v["payload"]["chosen"]["mode"], "l1");
    assert_eq!(v["payload"]["chosen"]["value"].as_f64(), Some(6.0));
    assert_eq!(v["payload"]["baselines"], serde_json::json!([]));
}

#[test]
fn assess_picks_most_intense_counterfactual() {
    let v = json(&["assess", "--scene", &fixture("missed_train.json")]);
    let chosen = &v["payload"]["chosen"];
    assert_eq!(chosen["counterfactual_id"], "caught_train");
    assert_eq!(chosen["value"].as_f64(), Some(12.0));
    assert_eq!(v["payload"]["readings"].as_array().unwrap().len(), 3);
}

#[test]
fn assess_schema_errors_exit_2() {
    let o = luckbits(&["assess", "--scene", &fixture("bad_scene.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown field"));
    let o = luckbits(&["assess", "--scene", "/nonexistent/scene.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_output_round_trips() {
    let o = luckbits(&["--format", "json", "assess", "--scene", &fixture("missed_train.json")]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let report: luckbits_core::luck::SceneAssessment = serde_json::from_value(v["payload"].clone()).unwrap();
    assert_eq!(report.chosen.counterfactual_id.as_deref(), Some("caught_train"));
    let o = luckbits(&["--format", "json", "stories"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let report: luckbits_core::scenarios::PredictionReport = serde_json::from_value(v["payload"].clone()).unwrap();
    assert!(report.is_reference_outcome());
}
