use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use homstat::model_io::{parse_structure, regular_k5, serialize_structure, AnalysisReport, StateDocument};
use nalgebra::Vector3;

fn homstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homstat")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = homstat(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generated_documents_round_trip() {
    let text = ok(&["gen", "k5"]);
    assert_eq!(serialize_structure(&parse_structure(&text).unwrap()), text);
    assert_eq!(text, serialize_structure(&regular_k5(Vector3::zeros())));
    let prism = ok(&["gen", "prism"]);
    assert_eq!(serialize_structure(&parse_structure(&prism).unwrap()), prism);
}

#[test]
fn axial_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = dir.path().join("k5.json");
    let state = dir.path().join("state.json");
    ok(&["gen", "k5", "--center", "0.1,-0.2,0.05", "--out", path(&k5)]);
    let report: AnalysisReport =
        serde_json::from_str(&ok(&["axial", path(&k5), "--state-out", path(&state)])).unwrap();
    assert_eq!((report.counts.cycles, report.counts.s, report.counts.m), (6, 1, 0));
    assert!(report.all_axial());
    assert_eq!(report.oracle_forces.len(), 10);

    let checked: AnalysisReport = serde_json::from_str(&ok(&["check", path(&k5), path(&state)])).unwrap();
    assert!(checked.max_relative_residual.unwrap() < 1e-12);

    // hand-edited per-bar resultants that do not balance
    let mut bars = StateDocument::parse(&fs::read_to_string(&state).unwrap()).unwrap();
    bars.bars = checked.bars.iter().map(|b| homstat::model_io::report::BarEntry { bar: b.id, bivector: b.bivector }).collect();
    bars.cycles.clear();
    bars.bars[3].bivector[0] += 0.01;
    let bad = dir.path().join("bad.json");
    fs::write(&bad, bars.to_json()).unwrap();
    let out = homstat(&["check", path(&k5), path(&bad), "--format", "text"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("max relative node residual"));
}

#[test]
fn tree_root_changes_the_basis_not_the_counts() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = dir.path().join("k5.json");
    ok(&["gen", "k5", "--out", path(&k5)]);
    let a: AnalysisReport = serde_json::from_str(&ok(&["cycles", path(&k5)])).unwrap();
    let b: AnalysisReport = serde_json::from_str(&ok(&["cycles", path(&k5), "--tree-root", "3"])).unwrap();
    assert_eq!(a.counts, b.counts);
    assert_eq!(b.tree.root, homstat::NodeId(3));
    assert_ne!(a.tree.bars, b.tree.bars);
    assert!(!homstat(&["cycles", path(&k5), "--tree-root", "99"]).status.success());
}

#[test]
fn exports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = dir.path().join("k5.json");
    ok(&["gen", "k5", "--center", "0.2,0.1,-0.1", "--out", path(&k5)]);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        ok(&["export", path(&k5), "--axial", "--shared-anchor", "--out", path(out)]);
    }
    for f in ["form.obj", "force.obj"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap());
    }
    // six triangles, one per basis cycle, all starting at the origin
    let force = fs::read_to_string(a.join("force.obj")).unwrap();
    let blocks: Vec<&str> = force.split("\no ").skip(1).collect();
    assert_eq!(blocks.len(), 6);
    for block in blocks {
        assert_eq!(block.lines().filter(|l| l.starts_with("v ")).count(), 3);
        assert!(block.contains("\nv 0 0 0\n#h 0\n"));
    }
}

#[test]
fn prism_force_diagram_and_empty_state() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("prism.json");
    ok(&["gen", "prism", "--out", path(&p)]);
    let out = dir.path().join("all");
    ok(&["export", path(&p), "--axial", "--all-bars", "--out", path(&out)]);
    let force = fs::read_to_string(out.join("force.obj")).unwrap();
    assert_eq!(force.matches("\n# triangle\n").count(), 12);

    let form_only = dir.path().join("form");
    ok(&["export", path(&p), "--out", path(&form_only)]);
    assert!(form_only.join("form.obj").exists() && !form_only.join("force.obj").exists());

    // untwisted prism has no self-stress, so nothing to draw
    let flat = dir.path().join("flat.json");
    ok(&["gen", "prism", "--twist", "0", "--out", path(&flat)]);
    let none = dir.path().join("none");
    ok(&["export", path(&flat), "--axial", "--out", path(&none)]);
    assert!(!none.join("force.obj").exists());
}

#[test]
fn bad_documents_name_the_culprit() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    fs::write(&f, r#"{"format": "homstat-structure/1", "nodes": [{"id": 0, "x": 0, "y": 0, "z": 0}, {"id": 1, "x": 1, "y": 0, "z": 0}], "bars": [{"id": 5, "tail": 0, "head": 2}]}"#).unwrap();
    let out = homstat(&["cycles", path(&f)]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("bar b5 references unknown node n2"));
    fs::write(&f, "{ nope").unwrap();
    assert!(String::from_utf8_lossy(&homstat(&["cycles", path(&f)]).stderr).contains("invalid structure document"));
}
