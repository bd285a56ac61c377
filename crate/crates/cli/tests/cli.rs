use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn tropex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn read(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Runs a subcommand writing to `dir/name`, asserting exit 0.
fn produce(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = dir.path().join(name);
    let mut all = args.to_vec();
    all.extend(["--out", p(&out)]);
    let o = tropex(&all);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    out
}

#[test]
fn limit_of_the_half_line() {
    let dir = TempDir::new().unwrap();
    let out = produce(
        &dir,
        "l.json",
        &[
            "limit",
            "--graph",
            p(&data("line_half.json")),
            "--fan",
            p(&data("p2.json")),
        ],
    );
    let doc = read(&out);
    assert_eq!(doc["$schema"], "schemas/limit.schema.json");
    assert_eq!(doc["base_change_order"], 2);
    assert_eq!(
        doc["dilated"]["vertices"][1]["pos"],
        serde_json::json!(["1", "1"])
    );
}

#[test]
fn secondary_of_degree_one() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("s.json");
    let o = tropex(&["secondary", "--d", "1", "--report", p(&report)]);
    assert!(o.status.success());
    assert_eq!(read(&report)["count"], 1);
}

#[test]
fn tropicalize_then_balance() {
    let dir = TempDir::new().unwrap();
    let curve = produce(
        &dir,
        "c.json",
        &["tropicalize", "--poly", p(&data("t_plus_x_plus_y.json"))],
    );
    let bal = produce(&dir, "b.json", &["balance", "--curve", p(&curve)]);
    let doc = read(&bal);
    assert_eq!(doc["balanced"], true);
    assert_eq!(doc["defects"], serde_json::json!([]));
}

#[test]
fn every_output_round_trips_through_validate() {
    let dir = TempDir::new().unwrap();
    let (g, f) = (data("line_half.json"), data("p2.json"));
    let (g, f) = (p(&g), p(&f));
    let heights = dir.path().join("h.json");
    std::fs::write(&heights, r#"["0","1","4","1","3","4"]"#).unwrap();
    let curve = produce(
        &dir,
        "curve.json",
        &["tropicalize", "--poly", p(&data("t_plus_x_plus_y.json"))],
    );
    let runs: Vec<(&str, Vec<&str>)> = vec![
        ("refine", vec!["refine", "--a", f, "--b", f]),
        ("star", vec!["star", "--fan", f, "--ray", "1"]),
        ("minimize", vec!["minimize", "--graph", g, "--fan", f]),
        ("dilation", vec!["dilation", "--graph", g]),
        ("balance", vec!["balance", "--curve", p(&curve)]),
        ("limit", vec!["limit", "--graph", g, "--fan", f]),
        ("expand", vec!["expand", "--graph", g, "--fan", f]),
        ("xg", vec!["xg", "--graph", g, "--fan", f]),
        ("surjections", vec!["surjections", "--graph", g, "--fan", f]),
        ("modspace", vec!["modspace", "--lines", "1", "--fan", f]),
        ("secondary", vec!["secondary", "--d", "2"]),
        (
            "subdivision",
            vec!["secondary", "--d", "2", "--heights", p(&heights)],
        ),
    ];
    for (name, args) in runs {
        let out = produce(&dir, &format!("{name}.json"), &args);
        let o = tropex(&["validate", "--input", p(&out)]);
        assert!(
            o.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&o.stdout)
        );
    }
    let o = tropex(&["validate", "--input", p(&curve)]);
    assert!(o.status.success());
}

#[test]
fn outputs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let fan = data("p2.json");
    let args = ["modspace", "--lines", "1", "--fan", p(&fan)];
    let a = std::fs::read(produce(&dir, "a.json", &args)).unwrap();
    let b = std::fs::read(produce(&dir, "b.json", &args)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn tampered_document_fails_validation() {
    let dir = TempDir::new().unwrap();
    let out = produce(
        &dir,
        "l.json",
        &[
            "limit",
            "--graph",
            p(&data("line_half.json")),
            "--fan",
            p(&data("p2.json")),
        ],
    );
    let mut doc = read(&out);
    doc["base_change_order"] = 3.into();
    std::fs::write(&out, doc.to_string()).unwrap();
    let o = tropex(&["validate", "--input", p(&out)]);
    assert_eq!(o.status.code(), Some(2));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["valid"], false);
}

#[test]
fn unbalanced_curve_exits_with_report() {
    let dir = TempDir::new().unwrap();
    let curve = produce(
        &dir,
        "c.json",
        &["tropicalize", "--poly", p(&data("t_plus_x_plus_y.json"))],
    );
    let mut doc = read(&curve);
    doc["ray_weights"][0] = 2.into();
    std::fs::write(&curve, doc.to_string()).unwrap();
    let out = dir.path().join("b.json");
    let o = tropex(&["balance", "--curve", p(&curve), "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(read(&out)["balanced"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(tropex(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(tropex(&["refine", "--a", "x.json"]).status.code(), Some(64));
    assert_eq!(
        tropex(&["dilation", "--graph", "/nonexistent/g.json"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        tropex(&["secondary", "--d", "1", "--threads", "0"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(tropex(&["--help"]).status.code(), Some(0));

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let o = tropex(&["dilation", "--graph", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["error"], "Parse");

    let o = tropex(&["secondary", "--d", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_embedding_is_rejected() {
    let dir = TempDir::new().unwrap();
    let mut g = read(&data("line_half.json"));
    g["vertices"][1]["pos"] = serde_json::json!(["-1", "5"]);
    let path = dir.path().join("g.json");
    std::fs::write(&path, g.to_string()).unwrap();
    let o = tropex(&["limit", "--graph", p(&path), "--fan", p(&data("p2.json"))]);
    assert_eq!(o.status.code(), Some(2));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["error"], "InvalidInput");
}
