mod common;

use std::fs;

use common::{cases, golden_dir, run_bin};

/// Set `TIGHTLAB_BLESS=1` to rewrite the golden files.
#[test]
fn golden_outputs_match() {
    let bless = std::env::var_os("TIGHTLAB_BLESS").is_some();
    let mut failures = Vec::new();
    for case in cases() {
        let (out, code) = run_bin(&case.args);
        let path = golden_dir().join(format!("{}.{}", case.name, case.ext));
        if code != case.exit_code {
            failures.push(format!("{}: exit {code}, expected {}", case.name, case.exit_code));
        }
        if bless {
            fs::write(&path, &out).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(expected) if expected == out => {}
            Ok(_) => failures.push(format!("{}: output differs from {}", case.name, path.display())),
            Err(e) => failures.push(format!("{}: {e}", case.name)),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn text_mode_reports_errors_on_one_line() {
    let (out, code) = run_bin(&["dim".into(), "--ring".into(), common::fixture("unit.ring")]);
    assert_eq!(code, 2);
    assert_eq!(out, "error[E_UNIT_IDEAL]: the defining ideal is the unit ideal\n");
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dim.json");
    let args: Vec<String> = ["dim", "--ring", &common::instance("example_q.ring"), "--json", "--out", path.to_str().unwrap()]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let (out, code) = run_bin(&args);
    assert_eq!((out.as_str(), code), ("", 0));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["result"]["krull_dim"], 2);
    assert_eq!(doc["schema"], 1);
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(run_bin(&["no-such-command".into()]).1, 1);
    assert_eq!(run_bin(&["dim".into()]).1, 1);
}
