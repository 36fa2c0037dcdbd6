use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn binmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binmat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn copy_dir(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for entry in fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            fs::copy(entry.path(), target).unwrap();
        }
    }
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn passing_check_exits_zero_and_writes_schema_1_json() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let o = binmat(&[
        "verify",
        "run",
        "table-3a",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS table-3a"));
    let v = read_json(&json);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["results"][0]["check_id"], "table-3a");
    assert_eq!(v["results"][0]["status"], "pass");
    let fp = v["results"][0]["details"]["blocks"][0]["classes"][0]["fingerprint"]
        .as_str()
        .unwrap();
    assert!(fp
        .chars()
        .all(|c| c.is_ascii_digit() || ('a'..='f').contains(&c)));
}

#[test]
fn failing_check_exits_one() {
    let o = binmat(&["verify", "run", "corollary-3.1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL corollary-3.1"));
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(code(&binmat(&["verify", "run", "nonexistent"])), 2);
    assert_eq!(code(&binmat(&["catalog", "show", "nonexistent"])), 2);
    assert_eq!(code(&binmat(&["iso", "E5", "no/such/file.mat"])), 2);
    assert_eq!(
        code(&binmat(&["--fixtures", "/no/such/dir", "catalog", "list"])),
        2
    );
    assert_eq!(code(&binmat(&["frobnicate"])), 2);
}

#[test]
fn reports_are_deterministic_apart_from_runtime() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for i in 0..2 {
        let p = dir.path().join(format!("{i}.json"));
        let o = binmat(&["verify", "run", "claim-5", "--json", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        let mut v = read_json(&p);
        for r in v["results"].as_array_mut().unwrap() {
            r["runtime"] = Value::from(0.0);
        }
        reports.push(v);
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn corrupted_r17_fails_table_5_and_extremality() {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&fixtures_dir(), dir.path());
    let r17 = dir.path().join("matroids/R17.mat");
    let text = fs::read_to_string(&r17).unwrap();
    // One entry of the last row; R17 stays simple with 17 elements.
    let bad = text.replace("\n001111110010\n", "\n001111110110\n");
    assert_ne!(bad, text);
    fs::write(&r17, bad).unwrap();
    let root = dir.path().to_str().unwrap();
    for id in ["table-5", "r17-extremal"] {
        let json = dir.path().join(format!("{id}.json"));
        let o = binmat(&[
            "--fixtures",
            root,
            "verify",
            "run",
            id,
            "--json",
            json.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 1, "{id}: {}", stdout(&o));
        assert_eq!(read_json(&json)["results"][0]["status"], "fail");
    }
    // Checks that do not involve R17 are unaffected.
    assert_eq!(
        code(&binmat(&["--fixtures", root, "verify", "run", "table-1a"])),
        0
    );
}

#[test]
fn catalog_show_round_trips_through_a_file() {
    let o = binmat(&["catalog", "show", "P9"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("# expected {\"rank\":4,\"size\":9"));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p9.mat");
    fs::write(&p, &out).unwrap();
    assert_eq!(code(&binmat(&["iso", p.to_str().unwrap(), "P9"])), 0);
    assert_eq!(code(&binmat(&["iso", p.to_str().unwrap(), "K5e"])), 1);
}

#[test]
fn catalog_list_names_every_entry() {
    let out = stdout(&binmat(&["catalog", "list"]));
    for name in ["prism", "E5", "P9", "R17", "Z", "PG32"] {
        assert!(
            out.lines()
                .any(|l| l.split_whitespace().next() == Some(name)),
            "{name}"
        );
    }
}

#[test]
fn minor_and_iso_queries() {
    let o = binmat(&["minor", "E5", "K33"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["minor"], true);
    assert_eq!(v["map"].as_object().unwrap().len(), 9);
    assert_eq!(code(&binmat(&["minor", "R17", "prism"])), 1);
    assert_eq!(code(&binmat(&["iso", "D3_K5e", "D3"])), 0);
    assert_eq!(code(&binmat(&["iso", "E6", "E6star"])), 1);
}
