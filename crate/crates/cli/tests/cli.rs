use std::process::{Command, Output};

fn foldtile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foldtile")).args(args).output().expect("run foldtile")
}

#[test]
fn enumerate_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fbo_a.json");
    let o = foldtile(&["enumerate", "--base", "fbo", "--edge", "a", "--method", "both", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["cases"][0]["records"].as_array().unwrap().len(), 2);
    assert_eq!(v["cases"][0]["summary"]["raw"], 4);
}

#[test]
fn each_method_gives_the_same_class_count() {
    for m in ["symmetry", "graphiso", "both"] {
        let o = foldtile(&["enumerate", "--base", "bo", "--edge", "b", "--method", m, "--out", "-"]);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["cases"][0]["summary"]["classes"], 12, "{m}");
    }
}

#[test]
fn csv_table_has_all_records() {
    let o = foldtile(&["tables", "--format", "csv"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 123);
    assert!(text.lines().any(|l| l.starts_with("FBO-a-1,fbo,a,D8,16,")));
}

#[test]
fn json_table_round_trips_through_core() {
    let o = foldtile(&["tables", "--format", "json"]);
    assert!(o.status.success());
    let doc = foldtile_core::report::TablesDocument::from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(doc.cases.len(), 6);
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.svg");
    let o = foldtile(&["render", "--record", "BO-c-12", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("BO-c-12"));
}

#[test]
fn failures_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.svg");
    assert!(!foldtile(&["render", "--record", "BO-c-999", "--out", out.to_str().unwrap()]).status.success());
    assert!(!foldtile(&["render", "--record", "nonsense", "--out", out.to_str().unwrap()]).status.success());
    assert!(!foldtile(&["enumerate", "--base", "xo", "--edge", "a", "--out", "-"]).status.success());
    assert!(!foldtile(&["tables", "--format", "xml"]).status.success());
    let missing = dir.path().join("no/such/dir/out.json");
    assert!(!foldtile(&["enumerate", "--base", "bo", "--edge", "a", "--out", missing.to_str().unwrap()]).status.success());
}

#[test]
fn selftest_passes() {
    let o = foldtile(&["selftest"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(o.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 8);
}
