use std::path::Path;
use std::process::{Command, Output};

fn dtors(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtors"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn enumerate_to(dir: &Path, name: &str, ctx: &[&str]) -> String {
    let path = dir.join(name);
    let path_s = path.to_str().unwrap().to_owned();
    let mut args = vec!["enumerate"];
    args.extend_from_slice(ctx);
    args.extend_from_slice(&["--out", &path_s]);
    let o = dtors(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path_s
}

#[test]
fn counts() {
    let o = dtors(&["enumerate", "--n", "3", "--d", "2", "--count-only"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "25\n"));
    let o = dtors(&["enumerate", "--n", "1", "--d", "7", "--count-only"]);
    assert_eq!(stdout(&o), "2\n");
    // 64 classes, fixed by filtering all 2^13 subsets.
    let o = dtors(&["enumerate", "--kupisch", "1,2,2,3", "--d", "2", "--count-only"]);
    assert_eq!(stdout(&o), "64\n");
}

#[test]
fn exit_codes() {
    let o = dtors(&["enumerate", "--kupisch", "1,2,4", "--d", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 2"));
    assert_eq!(dtors(&["enumerate", "--d", "2"]).status.code(), Some(1));
    assert_eq!(dtors(&["enumerate", "--n", "2"]).status.code(), Some(1));
    assert_eq!(dtors(&["bogus"]).status.code(), Some(1));
    assert_eq!(
        dtors(&["closure", "--n", "3", "--d", "2", "--gens", "0,0,9"]).status.code(),
        Some(1)
    );
    let o = dtors(&["enumerate", "--n", "4", "--d", "3", "--max-classes", "100", "--count-only"]);
    assert_eq!(o.status.code(), Some(3));
    let o = dtors(&["hasse", "--in", "/nonexistent/classes.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(dtors(&["--help"]).status.code(), Some(0));
}

#[test]
fn closure_and_check() {
    let o = dtors(&["closure", "--n", "3", "--d", "2", "--gens", "0,0,0;1,1,1"]);
    assert_eq!(stdout(&o), "[[0,0,0],[0,0,1],[0,1,1],[1,1,1]]\n");
    let o = dtors(&["closure", "--n", "3", "--d", "2", "--gens", ""]);
    assert_eq!(stdout(&o), "[]\n");

    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("class.json");
    std::fs::write(&f, "[[1,1,2],[1,1,3],[1,2,2],[1,2,3],[2,2,2],[1,3,3],[2,2,3],[2,3,3],[3,3,3]]")
        .unwrap();
    let o = dtors(&[
        "check", "--kupisch", "1,2,2,3", "--d", "2", "--class-file", f.to_str().unwrap(),
    ]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "true\n"));
    let o = dtors(&["check", "--n", "2", "--d", "2", "--members", "0,0,0;1,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("false\n"));
    std::fs::write(&f, "[[1,1").unwrap();
    let o = dtors(&["check", "--n", "4", "--d", "2", "--class-file", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn hasse_and_props() {
    let dir = tempfile::tempdir().unwrap();
    let chain = enumerate_to(dir.path(), "chain.json", &["--n", "1", "--d", "1"]);
    let o = dtors(&["hasse", "--in", &chain]);
    assert_eq!(
        stdout(&o),
        "digraph hasse {\n  0 [label=\"0\"];\n  1 [label=\"1\"];\n  1 -> 0;\n}\n"
    );
    let o = dtors(&["props", "--in", &chain]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["is_lattice"], true);
    assert_eq!(v["join_semidistributive"], true);
    assert_eq!(v["meet_semidistributive"], true);
    assert_eq!(v["hasse_regular"], true);
    assert!(v["witness"].is_null());

    let a21 = enumerate_to(dir.path(), "a21.json", &["--n", "2", "--d", "1"]);
    let o = dtors(&["hasse", "--in", &a21]);
    let dot = stdout(&o);
    assert_eq!(dot.matches("->").count(), 5);
    assert_eq!(dtors(&["hasse", "--in", &a21]).stdout, o.stdout);
    let o = dtors(&["hasse", "--in", &a21, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["hasse"].as_array().unwrap().len(), 5);

    let a33 = enumerate_to(dir.path(), "a33.json", &["--n", "3", "--d", "3"]);
    let o = dtors(&["hasse", "--in", &a33, "--labels", "full"]);
    assert_eq!(stdout(&o).matches("label=").count(), 46);
    let o = dtors(&["props", "--in", &a33, "--workers", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["hasse_regular"], false);
    assert_eq!(v["meet_semidistributive"], false);
    assert_eq!(v["witness"]["law"], "meet");
    for d in ["3", "4", "5"] {
        assert!(v["degree_multiset"].get(d).is_some());
    }
    assert_eq!(dtors(&["props", "--in", &a33, "--workers", "1"]).stdout, o.stdout);
    let o = dtors(&["props", "--in", &a33, "--max-nodes", "10"]);
    assert_eq!(o.status.code(), Some(3));
    let o = dtors(&["props", "--in", &a33, "--max-nodes", "10", "--force"]);
    assert_eq!(o.status.code(), Some(0));

    let a22 = enumerate_to(dir.path(), "a22.json", &["--n", "2", "--d", "2"]);
    let o = dtors(&["props", "--in", &a22]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["join_semidistributive"], true);
    assert_eq!(v["meet_semidistributive"], true);
}

#[test]
fn incomplete_input_is_inconsistent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("partial.json");
    let doc = r#"{"format_version":"1","context":{"kind":"auslander","n":2,"d":1},"classes":[[],[[0,0],[0,1],[1,1]]],"count":2}"#;
    std::fs::write(&path, doc).unwrap();
    let o = dtors(&["hasse", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let doc = r#"{"format_version":"1","context":{"kind":"auslander","n":2,"d":1},"classes":[[],[[0,1]],[[0,0],[0,1],[1,1]]],"count":3}"#;
    std::fs::write(&path, doc).unwrap();
    let o = dtors(&["props", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
