use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn rings_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../rings")
}

fn ring_file(name: &str) -> String {
    rings_dir().join(name).display().to_string()
}

fn fwdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fwdiff")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn cusp_origin_is_not_regular() {
    let cusp = ring_file("cusp.ring");
    let out = fwdiff(&["regular", "-i", &cusp, "--point", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in ["verdict: NotRegular", "fiber_dim: 2", "d: 1", "r: 0", "seed: 0"] {
        assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
    }
}

#[test]
fn zp2_affine_line_is_free_of_rank_two() {
    let out = fwdiff(&["present", "-i", &ring_file("zp2x.ring"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["free_rank"], 2);
    assert_eq!(v["result"]["free"], true);
    assert_eq!(v["module"]["generators"], serde_json::json!(["w(x)", "w(p)"]));
}

#[test]
fn axioms_report_full_pass() {
    let out = fwdiff(&["axioms", "--p", "3", "--nvars", "2", "--trials", "500", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("500/500 pass"));
    assert!(stdout(&out).contains("seed: 7"));
}

#[test]
fn json_has_the_documented_top_level_keys() {
    let v = json(&fwdiff(&["fiber", "-i", &ring_file("node.ring"), "--point", "0,0", "--json"]));
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "meta", "module", "result", "ring"]);
    assert_eq!(v["meta"]["tool"], "fwdiff");
    assert_eq!(v["meta"]["seed"], 0);
    assert_eq!(v["result"]["fiber_dim"], 2);
}

#[test]
fn unknown_verdict_exits_one() {
    let out = fwdiff(&["regular", "-i", &ring_file("zp2x.ring"), "--point", "0", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["verdict"], "Unknown");
    let flat = fwdiff(&["regular", "-i", &ring_file("zp2x.ring"), "--point", "0", "--flat", "--json"]);
    assert_eq!(flat.status.code(), Some(0));
    assert_eq!(json(&flat)["result"]["verdict"], "Regular");
}

#[test]
fn oracle_refuses_infinite_rings() {
    let out = fwdiff(&["oracle", "-i", &ring_file("line.ring")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_agrees_on_torsion_ring() {
    let out = fwdiff(&["oracle", "-i", &ring_file("z4_torsion.ring"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["match"], true);
    assert_eq!(v["result"]["brute_dim"], v["result"]["presented_dim"]);
}

#[test]
fn point_off_scheme_is_input_error() {
    let out = fwdiff(&["fiber", "-i", &ring_file("cusp.ring"), "--point", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_is_input_error() {
    let out = fwdiff(&["present", "-i", "/nonexistent/nothing.ring"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_flags_are_input_errors() {
    assert_eq!(fwdiff(&["present"]).status.code(), Some(2));
    assert_eq!(fwdiff(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn parse_error_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.ring");
    fs::write(&path, "base: Fp(5)\nvars: x, y\nrel: y^2 - z\n").unwrap();
    let out = fwdiff(&["present", "-i", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3, column 12"), "{err}");
    assert!(err.contains("unknown variable z"), "{err}");
}

#[test]
fn wrong_base_tag_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.ring");
    fs::write(&path, "base: Qp(5)\nvars: x\n").unwrap();
    let out = fwdiff(&["present", "-i", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn every_ring_file_parses_and_round_trips() {
    let mut seen = 0;
    for entry in fs::read_dir(rings_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "ring") {
            let text = fs::read_to_string(&path).unwrap();
            let parsed = fwdiff_cli::parse_ring(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            let again = fwdiff_cli::parse_ring(&parsed.print()).unwrap();
            assert_eq!(again, parsed, "{}", path.display());
            assert_eq!(again.print(), parsed.print());
            seen += 1;
        }
    }
    assert!(seen >= 10);
}

#[test]
fn every_ring_file_presents() {
    for entry in fs::read_dir(rings_dir()).unwrap() {
        let path = entry.unwrap().path();
        let out = fwdiff(&["present", "-i", path.to_str().unwrap(), "--json"]);
        assert_eq!(out.status.code(), Some(0), "{}", path.display());
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["regular", "-i", &ring_file("cusp.ring"), "--point", "1,1", "--json", "--seed", "11"];
    let runs: Vec<Vec<u8>> = (0..3).map(|_| fwdiff(&args).stdout).collect();
    assert!(!runs[0].is_empty());
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(json(&fwdiff(&args))["meta"]["seed"], 11);
}

#[test]
fn prime_locus_on_the_plane() {
    let out = fwdiff(&["regular", "-i", &ring_file("plane.ring"), "--prime", "y", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!((r["r"].as_u64(), r["d"].as_u64(), r["fiber_dim"].as_u64()), (Some(1), Some(1), Some(2)));
    assert_eq!(r["verdict"], "Regular");
}
