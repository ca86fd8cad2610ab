use std::path::PathBuf;
use std::process::{Command, Output};

use cocycle_cli::input::InputDocument;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn cocycle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cocycle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("output is JSON")
}

fn count(doc: &Value, kind: &str, r: u64, fields: &[(&str, Value)]) -> Option<u64> {
    doc["tables"]
        .as_array()
        .unwrap()
        .iter()
        .find(|rec| {
            rec["kind"] == kind && rec["r"] == r && fields.iter().all(|(f, v)| &rec[*f] == v)
        })
        .map(|rec| rec["value"].as_u64().unwrap())
}

#[test]
fn cocycle_circle_has_an_immortal_level_class() {
    let path = fixture("circle.json");
    let out = cocycle(&[
        "cocycle",
        path.to_str().unwrap(),
        "--theta",
        "1/2",
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(count(&doc, "l", 0, &[]), Some(1));
    assert_eq!(count(&doc, "nu+", 0, &[("k", "inf".into())]), Some(1));
    assert_eq!(count(&doc, "nu-", 0, &[("k", "inf".into())]), Some(1));
    let bars = doc["bars"].as_array().unwrap();
    assert!(bars.iter().any(|b| b["direction"] == "pair"
        && b["death_value"] == "inf"
        && b["lower_death_value"] == "inf"));
    assert_eq!(doc["check"]["passed"], true);
}

#[test]
fn bad_triangle_fails_validation() {
    let path = fixture("invalid/badtriangle.json");
    let out = cocycle(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    let bad: Vec<&Value> = doc["diagnostics"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|d| d["ok"] == false)
        .collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["kind"], "cocycle");
    assert_eq!(bad[0]["vertices"], serde_json::json!(["0", "1", "2"]));
}

#[test]
fn sublevel_edge() {
    let path = fixture("edge.json");
    let out = cocycle(&["sublevel", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(
        count(&doc, "mu", 0, &[("i", 1.into()), ("j", 1.into())]),
        Some(1)
    );
    assert_eq!(
        count(&doc, "mu", 0, &[("i", 0.into()), ("j", "inf".into())]),
        Some(1)
    );
    let bars = doc["bars"].as_array().unwrap();
    assert_eq!(bars.len(), 1);
    assert_eq!(bars[0]["birth_value"], "0/1");
    assert_eq!(bars[0]["death_value"], "inf");
}

#[test]
fn level_at_a_single_value() {
    let path = fixture("edge.json");
    let out = cocycle(&["level", path.to_str().unwrap(), "--at", "1/3", "--check"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["levels"].as_array().unwrap().len(), 1);
    assert_eq!(doc["levels"][0]["s"], "1/3");
    assert_eq!(count(&doc, "l", 0, &[]), Some(1));
}

#[test]
fn out_flag_writes_the_same_document() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.json");
    let path = fixture("triangle.json");
    let to_file = cocycle(&[
        "level",
        path.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    let stdout = cocycle(&["level", path.to_str().unwrap()]);
    assert_eq!(std::fs::read(&target).unwrap(), stdout.stdout);
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let unknown = write(
        "unknown.json",
        r#"{"vertices": ["a"], "simplices": [["a", "b"]]}"#,
    );
    let out = cocycle(&["validate", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("E_SCHEMA") && err.contains("[a,b]"), "{err}");

    let bad = write(
        "bad.json",
        r#"{"vertices": ["a"], "simplices": [["a"]], "cochain0": {"a": "0.1x"}}"#,
    );
    let out = cocycle(&["sublevel", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E_PARSE"));

    let tied = write(
        "tied.json",
        r#"{"vertices": ["a", "b"], "simplices": [["a", "b"]], "cochain0": {"a": "1", "b": "1"}}"#,
    );
    let out = cocycle(&["level", tied.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E_INPUT"));

    let circle = fixture("circle.json");
    let out = cocycle(&["cocycle", circle.to_str().unwrap(), "--theta", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fixtures_round_trip() {
    for name in [
        "edge.json",
        "circle.json",
        "triangle.json",
        "two_circles.json",
        "invalid/badtriangle.json",
    ] {
        let doc = InputDocument::from_path(&fixture(name)).unwrap();
        assert_eq!(
            InputDocument::from_json(&doc.to_json()).unwrap(),
            doc,
            "{name}"
        );
    }
}

#[test]
fn circle_fixture_reads_as_documented() {
    let doc = InputDocument::from_path(&fixture("circle.json")).unwrap();
    assert_eq!(doc.vertices.len(), 3);
    assert_eq!(doc.cocycle.as_ref().unwrap().len(), 3);
    assert!(doc
        .cocycle
        .as_ref()
        .unwrap()
        .values()
        .all(|v| *v == 1.into()));
    assert_eq!(doc.alpha, Some(3.into()));
}
