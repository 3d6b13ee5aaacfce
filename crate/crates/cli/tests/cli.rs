use std::path::PathBuf;
use std::process::{Command, Output};

fn orbifolder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbifolder")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn spec_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("orbifolder-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn catalog_info_reports_e8_cubed() {
    let o = orbifolder(&["catalog", "info", "A3", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["roots"], 720);
    let leech = orbifolder(&["catalog", "info", "A24"]);
    assert!(stdout(&leech).contains("roots        0"));
}

#[test]
fn catalog_list_has_every_lattice() {
    let out = stdout(&orbifolder(&["catalog", "list"]));
    let lattices = out.lines().filter(|l| l.ends_with(" roots")).count();
    assert_eq!(lattices, 24);
}

#[test]
fn analyze_identity_on_a1_24() {
    let path = spec_file("identity", r#"{"lattice": "A23"}"#);
    let o = orbifolder(&["analyze", path.to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["identification"]["resolved"], 15);
    assert_eq!(v["orbifold_dim"], 72);
}

#[test]
fn analyze_rejects_h_outside_fixed_space() {
    let path = spec_file("moving", r#"{"gram": [[2, 0], [0, 2]], "matrix": [[0, 1], [1, 0]], "h": ["1/2", "0"]}"#);
    let o = orbifolder(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not fixed"));
}

#[test]
fn search_leech_k_finds_entry_4() {
    let o = orbifolder(&["search", "--lattice", "A24", "--fixture", "leech_k", "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["classes"][0]["report"]["identification"]["resolved"], 4);
    assert_eq!(v["comparison"]["ok"], true);
}

#[test]
fn table_reproduce_single_cell() {
    let o = orbifolder(&["table", "reproduce", "--family", "B", "--cells", "A3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let bad = orbifolder(&["table", "reproduce", "--family", "Z"]);
    assert_eq!(bad.status.code(), Some(2));
}
