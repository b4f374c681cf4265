use std::process::{Command, Output};

use serde_json::Value;

fn springer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_springer")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn exit_codes() {
    assert_eq!(springer(&["--no-cache", "flatness", "--type", "B2", "--order", "2"]).status.code(), Some(0));
    assert_eq!(springer(&["--no-cache", "equivariance", "--type", "A2"]).status.code(), Some(1));
    assert_eq!(springer(&["--no-cache", "roots", "Q9"]).status.code(), Some(2));
    assert_eq!(springer(&["--no-cache", "run", "no-such-check"]).status.code(), Some(2));
    assert_eq!(springer(&["--no-cache", "shift", "--cochar", "1"]).status.code(), Some(2));
    assert_eq!(springer(&["--no-cache", "flatness", "--order", "-1"]).status.code(), Some(2));
    assert_eq!(springer(&["--no-cache", "--type", "A3", "--rank", "2", "roots"]).status.code(), Some(2));
    assert_eq!(springer(&["--bogus"]).status.code(), Some(2));
}

#[test]
fn roots_table_marks_r_plus_prime() {
    let out = springer(&["--no-cache", "roots", "G2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["results"][0]["witness"]["length_lemma"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows.iter().filter(|r| r["in_r_plus_prime"] == true).count(), 4);
}

#[test]
fn chevalley_sl2_square_is_q() {
    let out = springer(&["--no-cache", "chevalley", "--type", "A1", "--mode", "flag"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("s1*s1 = (q1) e"));
}

#[test]
fn family_and_rank_combine() {
    let v = json(&springer(&["--no-cache", "--format", "json", "--type", "B", "--rank", "2", "roots"]));
    assert_eq!(v["params"]["type"], "B2");
    let v = json(&springer(&["--no-cache", "--format", "json", "--rank", "2", "roots"]));
    let kinds: Vec<_> = v["results"].as_array().unwrap().iter().map(|r| r["type"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["A2", "B2", "C2", "G2"]);
}

#[test]
fn config_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("springer.toml");
    std::fs::write(&cfg, "format = \"json\"\nno_cache = true\norder = 1\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let v = json(&springer(&["--config", cfg, "flatness", "--type", "A2"]));
    assert_eq!(v["order"], 1);
    let v = json(&springer(&["--config", cfg, "flatness", "--type", "A2", "--order", "2"]));
    assert_eq!(v["order"], 2);
    let text = springer(&["--config", cfg, "--format", "text", "roots", "A1"]);
    assert!(String::from_utf8_lossy(&text.stdout).starts_with("PASS roots"));
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--format", "json", "shift", "--cochar", "1;0", "--order", "2", "--window", "5"];
    let golden = springer(&[&["--no-cache"][..], &args].concat());
    let miss = springer(&[&["--cache-dir", cache][..], &args].concat());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let hit = springer(&[&["--cache-dir", cache][..], &args].concat());
    assert_eq!(golden.status.code(), Some(0));
    assert_eq!(golden.stdout, miss.stdout);
    assert_eq!(golden.stdout, hit.stdout);
    let v = json(&golden);
    let w = &v["results"][0]["witness"];
    assert_eq!(w["convention"], "Reciprocal");
    assert!(w["window"].as_array().unwrap().len() >= 3);
}

#[test]
fn timings_are_opt_in() {
    let plain = json(&springer(&["--no-cache", "--format", "json", "roots", "A1"]));
    assert!(plain.get("wall_ms").is_none());
    let timed = json(&springer(&["--no-cache", "--timings", "--format", "json", "roots", "A1"]));
    assert!(timed["wall_ms"].is_u64());
}

/// Every object the schema names as required is present, and no key appears
/// that the schema does not list.
#[test]
fn reports_follow_published_schema() {
    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let defs = &schema["$defs"];
    fn conforms(defs: &Value, def: &str, v: &Value) {
        let d = &defs[def];
        let obj = v.as_object().unwrap_or_else(|| panic!("{def} is not an object"));
        for key in d["required"].as_array().unwrap() {
            assert!(obj.contains_key(key.as_str().unwrap()), "{def} lacks {key}");
        }
        for key in obj.keys() {
            assert!(d["properties"].get(key).is_some(), "{def} has unlisted key {key}");
        }
    }
    let suite = json(&springer(&["--no-cache", "--format", "json", "check-hecke", "--type", "A2"]));
    conforms(defs, "suite", &suite);
    for report in suite["reports"].as_array().unwrap() {
        conforms(defs, "check", report);
        for r in report["results"].as_array().unwrap() {
            conforms(defs, "result", r);
            assert!(["pass", "fail", "skipped"].contains(&r["status"].as_str().unwrap()));
        }
    }
    let single = json(&springer(&["--no-cache", "--format", "json", "cm-spectral", "--type", "A2"]));
    conforms(defs, "check", &single);
    assert_eq!(single["status"], "skipped");
}
