use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use copieslab_core::format::{parse_poset, parse_structures};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_copieslab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("copieslab-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (out.status.code().unwrap(), v)
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn collapse_on_binary_three_points_passes() {
    let (code, v) = report(&["collapse", "--arities", "2", "--size", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["seed"], 0);
    let levels = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "diagram contracts to three levels")
        .unwrap();
    assert_eq!(levels["data"]["levels"], 3);
}

#[test]
fn verify_claim_exhaustive_passes() {
    let (code, v) = report(&["verify-claim", "--lambda", "2", "--arities", "2"]);
    assert_eq!(code, 0);
    let pairs = &v["checks"].as_array().unwrap()[1];
    assert_eq!(pairs["data"]["mode"], "exhaustive");
    assert_eq!(pairs["data"]["pairs"], 81);
}

#[test]
fn malformed_structure_exits_two_with_line() {
    let dir = scratch("malformed");
    let path = dir.join("bad.txt");
    fs::write(&path, "language 2\ndomain 2\n\nrel 0 { (0,1) (1,x) }\n").unwrap();
    let out = run(&["aut", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.txt:4:"), "{err}");
}

#[test]
fn poset_cycle_exits_two() {
    let dir = scratch("cycle");
    let path = dir.join("p.txt");
    fs::write(&path, "poset 2\nle 0 1\nle 1 0\n").unwrap();
    let out = run(&["sq", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p.txt:3:"));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let args = ["verify-claim", "--lambda", "3", "--arities", "1,2", "--samples", "12", "--seed", "7"];
    let (_, a) = report(&args);
    let (_, b) = report(&args);
    assert_eq!(a["config"]["seed"], 7);
    assert!(a.get("timing").is_some());
    assert_eq!(without_timing(a), without_timing(b));
}

#[test]
fn hierarchy_witnesses_round_trip() {
    let (code, v) = report(&["hierarchy", "--arities", "1,2", "--size", "2"]);
    assert_eq!(code, 0);
    let mut seen = 0;
    for c in v["checks"].as_array().unwrap() {
        for w in c["witnesses"].as_array().unwrap() {
            let parsed = parse_structures(w.as_str().unwrap()).unwrap();
            assert_eq!(parsed.len(), 1);
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn witness_pair_classifies_as_reported() {
    let dir = scratch("classify");
    let (_, v) = report(&["collapse", "--arities", "2", "--size", "2"]);
    let strict = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "equality is strictly finer than relation 1")
        .unwrap();
    let text: String = strict["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w.as_str().unwrap())
        .collect();
    let path = dir.join("pair.txt");
    fs::write(&path, text).unwrap();
    let (code, c) = report(&["classify", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let holding = &c["checks"][0]["data"]["holding"];
    assert!(!holding.as_array().unwrap().contains(&Value::from(0)));
    assert!(holding.as_array().unwrap().contains(&Value::from(1)));
}

#[test]
fn poset_witnesses_round_trip() {
    let dir = scratch("ro");
    let path = dir.join("v.txt");
    fs::write(&path, "poset 3\nle 0 1\nle 0 2\n").unwrap();
    let (code, v) = report(&["ro", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    for w in v["checks"][0]["witnesses"].as_array().unwrap() {
        parse_poset(w.as_str().unwrap()).unwrap();
    }
}

#[test]
fn collapse_dot_has_three_nodes() {
    let dir = scratch("dot");
    let path = dir.join("d.dot");
    let out = run(&["collapse", "--size", "2", "--dot", path.to_str().unwrap()]);
    assert!(out.status.success());
    let dot = fs::read_to_string(&path).unwrap();
    assert_eq!(dot.matches("[label=\"∼").count(), 3);
    assert_eq!(dot.matches(" -> ").count(), 2);
}

#[test]
fn copies_dot_of_diamond_poset() {
    let dir = scratch("hasse");
    let p = dir.join("d.txt");
    fs::write(&p, "poset 4\nle 0 1\nle 0 2\nle 1 3\nle 2 3\n").unwrap();
    let dot = dir.join("h.dot");
    let out = run(&["homog", p.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(dot).unwrap().matches(" -> ").count(), 4);
}

#[test]
fn report_file_matches_stdout() {
    let dir = scratch("out");
    let path = dir.join("r.json");
    let out = run(&["--json", "rigid", "--size", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let file: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    let stdout: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(without_timing(file), without_timing(stdout));
}

#[test]
fn corpus_cache_survives_corruption() {
    let dir = scratch("cache");
    let cache = dir.join("c");
    let args = ["corpus", "--arities", "1,1", "--size", "2", "--cache-dir", cache.to_str().unwrap()];
    let first = run(&args);
    assert!(String::from_utf8_lossy(&first.stderr).contains("miss"));
    let file = fs::read_dir(&cache).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&file).unwrap();
    fs::write(&file, text.replacen("\n0 1\n", "\n0 9\n", 1)).unwrap();
    let second = run(&args);
    assert!(String::from_utf8_lossy(&second.stderr).contains("regenerated"));
    assert_eq!(first.stdout, second.stdout);
    let third = run(&args);
    assert!(String::from_utf8_lossy(&third.stderr).contains("hit"));
}

#[test]
fn up_to_iso_hierarchy_is_refused() {
    let out = run(&["hierarchy", "--size", "2", "--up-to-iso"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_overrun_names_the_requirement() {
    let out = run(&["corpus", "--arities", "2", "--size", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("requires 25"));
}

#[test]
fn acceptance_subset() {
    let (code, v) = report(&["accept", "--criterion", "2,15"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
}

#[test]
fn version_flag() {
    let out = run(&["--version"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains(env!("CARGO_PKG_VERSION")));
}
