//! Golden invocations shared by the golden and acceptance targets.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn instance(name: &str) -> String {
    root().join("instances").join(name).to_string_lossy().into_owned()
}

pub fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Case {
    pub name: &'static str,
    pub args: Vec<String>,
    pub exit_code: i32,
    /// File extension of the golden output.
    pub ext: &'static str,
}

fn case(name: &'static str, exit_code: i32, args: &[&str]) -> Case {
    let args = args
        .iter()
        .map(|a| match a.strip_prefix("@") {
            Some(f) if f.ends_with(".ring") && !f.starts_with("fixtures/") => instance(f),
            Some(f) => fixture(f.trim_start_matches("fixtures/")),
            None => a.to_string(),
        })
        .collect();
    let ext = if name.starts_with("sweep") { "csv" } else { "json" };
    Case { name, args, exit_code, ext }
}

pub fn cases() -> Vec<Case> {
    let ex = "@example_q.ring";
    let f7 = "@fermat3_f7.ring";
    vec![
        case("example_gb", 0, &["gb", "--ring", ex, "--json"]),
        case("example_gb_lex", 0, &["gb", "--ring", ex, "--order", "lex", "--json"]),
        case("example_dim", 0, &["dim", "--ring", ex, "--json"]),
        case("example_height", 0, &["height", "--ring", ex, "--json"]),
        case("example_min_primes", 0, &["min-primes", "--ring", ex, "--json"]),
        case("example_claimed_primes", 0, &["min-primes", "--ring", ex, "--components", "@fixtures/example_components.txt", "--json"]),
        case("example_equiheight", 0, &["equiheight", "--ring", ex, "--json"]),
        case("example_jacobian", 0, &["jacobian", "--ring", ex, "--json"]),
        case("example_fitting", 0, &["fitting", "--ring", ex, "--json"]),
        case("example_jacobian_ideal", 0, &["jacobian-ideal", "--ring", ex, "--json"]),
        case("example_rank_at", 0, &["rank-at", "--ring", ex, "--prime", "<x, y>", "--json"]),
        case("example_regular_at", 0, &["regular-at", "--ring", ex, "--prime", "<x, y>", "--json"]),
        case("example_sing_locus", 0, &["sing-locus", "--ring", ex, "--json"]),
        case("fermat_frob_power", 0, &["frob-power", "--ring", f7, "--ideal", "<x, y>", "--e", "1", "--json"]),
        case("fermat_tc_certify", 0, &["tc-certify", "--ring", f7, "--u", "z^2", "--ideal", "<x, y>", "--c", "x^2", "--e-max", "2", "--json"]),
        case("fermat_tc_refute", 0, &["tc-refute", "--ring", f7, "--u", "1", "--ideal", "<x, y>", "--json"]),
        case("fermat_frob_closure", 0, &["frob-closure", "--ring", "@fermat3_f5.ring", "--u", "z^2", "--ideal", "<x, y>", "--json"]),
        case("fermat_harness", 0, &["harness", "--ring", f7, "--ideal", "<x, y>", "--candidates", "z^2, z, x*z", "--e-max", "2", "--json"]),
        case("fermat_krull", 0, &["krull-check", "--ring", f7, "--delta", "1", "--u", "z", "--ideal", "<x, y>", "--json"]),
        case("cusp_truncate", 0, &["truncate", "--ring", "@cusp_f7.ring", "--degree", "2", "--json"]),
        case("cusp_sing_locus", 0, &["sing-locus", "--ring", "@cusp_f7.ring", "--json"]),
        case("error_missing_c", 1, &["tc-certify", "--ring", f7, "--u", "z^2", "--ideal", "<x, y>", "--json"]),
        case("error_unit_ideal", 2, &["dim", "--ring", "@fixtures/unit.ring", "--json"]),
        case("error_bad_component", 3, &["min-primes", "--ring", f7, "--components", "@fixtures/bad_components.txt", "--json"]),
        case("sweep_family", 0, &["sweep", "--ring", "@fermat3_family.ring", "--primes", "3,7,13", "--e-max", "2", "--no-timing"]),
        case("sweep_empty", 0, &["sweep", "--ring", "@fermat3_family.ring", "--no-timing"]),
    ]
}

/// Runs the binary; returns stdout and the exit status.
pub fn run_bin(args: &[String]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_tightlab")).args(args).output().expect("binary runs");
    (String::from_utf8(out.stdout).expect("UTF-8 output"), out.status.code().unwrap_or(-1))
}
