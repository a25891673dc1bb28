use std::path::Path;
use std::process::{Command, Output};

use kahler_core::zoo::{zoo, zoo_entry, to_manifest};

fn kahler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kahler")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn classify_json(target: &str, path: &Path) -> Output {
    kahler(&[
        "classify",
        target,
        "--points",
        "6",
        "--dirs",
        "8",
        "--planes",
        "8",
        "--seed",
        "3",
        "--json",
        path.to_str().unwrap(),
    ])
}

#[test]
fn json_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for spec in zoo() {
        let a = dir.path().join(format!("{}-a.json", spec.name));
        let b = dir.path().join(format!("{}-b.json", spec.name));
        assert_eq!(classify_json(&spec.name, &a).status.code(), Some(0), "{}", spec.name);
        assert_eq!(classify_json(&spec.name, &b).status.code(), Some(0), "{}", spec.name);
        let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
        assert!(!a.is_empty());
        assert_eq!(a, b, "{}", spec.name);
    }
}

#[test]
fn json_report_has_expected_shape() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fs.json");
    assert_eq!(classify_json("fs_cp2", &path).status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    assert_eq!(v["verdict"]["class"], "einstein");
    assert_eq!(v["expected_class_matches"], true);
    assert_eq!(v["points"].as_array().unwrap().len(), 6);
    assert!((v["verdict"]["einstein"]["lambda"].as_f64().unwrap() - 6.0).abs() < 1e-8);
}

#[test]
fn classifies_a_manifest_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("product.kahler");
    std::fs::write(&path, to_manifest(&zoo_entry("product_cp1_cp1_unequal").unwrap())).unwrap();
    let o = kahler(&["classify", path.to_str().unwrap(), "--points", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("class: ricci-parallel"), "{out}");
    assert!(out.contains("expected class matches: true"), "{out}");
}

#[test]
fn input_errors_exit_with_one() {
    assert_eq!(kahler(&["classify", "no_such_manifold"]).status.code(), Some(1));
    assert_eq!(kahler(&["classify", "fs_cp2", "--points", "0"]).status.code(), Some(1));
    assert_eq!(kahler(&["experiment", "rotation", "no_such_manifold"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.kahler");
    std::fs::write(&path, "name = bad\nn = 2\npotential = x1^2 + x3^2\ndomain = [-1, 1]\n").unwrap();
    let o = kahler(&["classify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("x3"));
}

#[test]
fn zoo_list_names_every_fixture() {
    let o = kahler(&["zoo", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for spec in zoo() {
        assert!(out.contains(&spec.name), "{out}");
    }
}

#[test]
fn identities_and_experiments_run() {
    let o = kahler(&["verify-identities", "perturbed_flat", "--points", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = kahler(&["experiment", "rotation", "perturbed_flat", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rel error"));

    let o = kahler(&["experiment", "transport", "fs_cp1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("predicted"));
}
