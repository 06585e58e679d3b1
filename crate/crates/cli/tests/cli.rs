use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hypergrass"));
    c.env_remove("HYPERGRASS_CONFIG");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn example_matrix() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples/example1.json").display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hypergrass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn enumerate_two_by_six() {
    let v = json(&run(&["enumerate", "--k", "2", "--n", "6", "--format", "json"]));
    assert_eq!(v.as_array().unwrap().len(), 26);
    let csv = run(&["enumerate", "--k", "2", "--n", "6", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 27);
}

#[test]
fn eval_example_matrix() {
    let v = json(&run(&["eval", "--matrix", &example_matrix()]));
    let minors = v["minors"].as_array().unwrap();
    assert_eq!(minors.len(), 6);
    let value = |s: [u32; 2]| minors.iter().find(|m| m["subset"] == serde_json::json!(s)).unwrap()["exact"].clone();
    assert_eq!(value([3, 4]), "1/3");
    assert_eq!(value([1, 4]), "2/3");
    assert_eq!(value([1, 2]), "1/1");
    assert_eq!(v["arrangement"]["partition"]["blocks"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["enumerate", "--k", "2", "--n", "6", "--frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["teleport"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["enumerate", "--k", "6", "--n", "6"]).status.code(), Some(1));
    assert_eq!(run(&["grid", "--n", "8", "--k", "3", "--omega", "56178243", "--W", "145"]).status.code(), Some(1));
    assert_eq!(run(&["poset", "--n", "6", "--J", "1,2;1,x"]).status.code(), Some(3));
    assert_eq!(run(&["witness", "--n", "5", "--J", "1,3;1,4;2,4;2,5;3,5", "--W", "1,5", "--format", "csv"]).status.code(), Some(3));
}

#[test]
fn running_example_commands() {
    let g = json(&run(&["grid", "--n", "8", "--k", "3", "--omega", "56178243", "--W", "3,5,6"]));
    assert_eq!(g["swapping_distance"], 4);
    assert_eq!(g["grid"]["omega_h"], serde_json::json!([1, 2, 4, 6, 7, 8, 3, 5]));
    let d = json(&run(&["cubedist", "--n", "8", "--k", "3", "--omega", "56178243", "--W", "356"]));
    assert!(d["distance"].as_u64().unwrap() <= 4);
    let w = json(&run(&["witness", "--n", "8", "--k", "3", "--omega", "56178243", "--W", "125", "--seed", "3"]));
    assert_eq!(w["second_block"], serde_json::json!([[1, 2, 5]]));
}

#[test]
fn poset_and_dual_graph_dot() {
    let p = run(&["poset", "--n", "6", "--J", "1,2;1,3;1,4;1,5;2,5;2,6", "--format", "dot"]);
    let text = String::from_utf8(p.stdout).unwrap();
    assert!(text.starts_with("digraph poset {"));
    assert!(text.contains("\"46\" -> \"36\""));
    let g = run(&["dual-graph", "--k", "2", "--n", "4", "--format", "dot"]);
    let text = String::from_utf8(g.stdout).unwrap();
    assert!(text.starts_with("graph dual {"));
    assert_eq!(text.matches(" -- ").count(), 4);
}

#[test]
fn verify_writes_report_and_summary_deterministically() {
    let a = scratch("a.json");
    let b = scratch("b.json");
    let args = ["verify", "ball-bound", "--k", "2", "--n", "6", "--trials", "20", "--seed", "5"];
    let one = bin().args(args).args(["--jobs", "1", "--out"]).arg(&a).status().unwrap();
    let four = bin().args(args).args(["--jobs", "4", "--out"]).arg(&b).status().unwrap();
    assert!(one.success() && four.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let summary = std::fs::read_to_string(a.with_extension("csv")).unwrap();
    assert!(summary.lines().nth(1).unwrap().starts_with("ball-bound,"));
    assert!(summary.trim_end().ends_with(",true"));
}

#[test]
fn config_file_and_failing_verification() {
    let cfg = scratch("tight.toml");
    std::fs::write(&cfg, "[limits]\nepsilon_cap_exp = 1\n").unwrap();
    // one halving of epsilon is not enough for every neighbour
    let o = bin()
        .env("HYPERGRASS_CONFIG", &cfg)
        .args(["verify", "second-largest-sufficiency", "--k", "3", "--n", "6"])
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["passed"], false);
    assert_eq!(o.status.code(), Some(2));

    let bad = scratch("bad.toml");
    std::fs::write(&bad, "colour = \"red\"\n").unwrap();
    let o = bin().env("HYPERGRASS_CONFIG", &bad).args(["enumerate", "--k", "2", "--n", "4"]).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
}
