use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn ll_coarse(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ll-coarse"))
        .args(args)
        .env("LL_COARSE_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn dist_prints_word_distance() {
    let cache = TempDir::new().unwrap();
    let out = ll_coarse(
        cache.path(),
        &["dist", "--from", r#"{"cursor":0,"lamps":[]}"#, "--to", r#"{"cursor":2,"lamps":[0,1,2,3]}"#],
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "8\n");
}

#[test]
fn walk_file_has_one_line_per_vertex() {
    let cache = TempDir::new().unwrap();
    let target = cache.path().join("n.walk");
    let out = ll_coarse(cache.path(), &["walk", "--kind", "N", "--steps", "1000", "--out", target.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&target).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 1001 + 1);
    assert_eq!(lines[0], r#"{"kind":"N","n":null,"steps":1000}"#);
    assert_eq!(lines[1], r#"{"cursor":0,"lamps":[]}"#);
    assert!(lines[1002].starts_with(r#"{"milestones":{"c0":0,"c1":1,"#));
}

#[test]
fn cache_serves_prefix_and_matches_fresh_output() {
    let cache = TempDir::new().unwrap();
    let long = ll_coarse(cache.path(), &["walk", "--kind", "N", "--steps", "1000"]);
    assert!(long.status.success());
    assert!(cache.path().join("N_-_1000.walk").is_file());

    let from_cache = ll_coarse(cache.path(), &["walk", "--kind", "N", "--steps", "500"]);
    let fresh = ll_coarse(cache.path(), &["--no-cache", "walk", "--kind", "N", "--steps", "500"]);
    assert_eq!(from_cache.stdout, fresh.stdout);
    assert!(from_cache.stderr.is_empty());
}

#[test]
fn corrupt_cache_entry_is_regenerated_with_warning() {
    let cache = TempDir::new().unwrap();
    let first = ll_coarse(cache.path(), &["walk", "--kind", "I", "--n", "1"]);
    assert!(first.status.success());
    let entry = fs::read_dir(cache.path()).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&entry).unwrap();
    fs::write(&entry, &text[..text.len() / 2]).unwrap();

    let second = ll_coarse(cache.path(), &["walk", "--kind", "I", "--n", "1"]);
    assert!(second.status.success());
    assert!(String::from_utf8_lossy(&second.stderr).contains("warning"));
    assert_eq!(second.stdout, first.stdout);
    assert_eq!(fs::read_to_string(&entry).unwrap(), text);
}

#[test]
fn profile_is_byte_identical_across_runs() {
    let cache = TempDir::new().unwrap();
    let args = ["profile", "--kind", "N", "--index-limit", "2000", "--m-max", "4"];
    let a = ll_coarse(cache.path(), &args);
    let b = ll_coarse(cache.path(), &args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), "M,D\n0,0\n1,1\n2,6\n3,31\n4,32\n");
}

#[test]
fn separate_reports_json_verdict() {
    let cache = TempDir::new().unwrap();
    let out = ll_coarse(cache.path(), &["separate", "--kind", "N", "--radius", "12", "--probe-n", "2"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "separated-in-ball");
    assert_eq!(report["R"], 12);

    let control = ll_coarse(cache.path(), &["separate", "--radius", "12", "--probe-n", "2"]);
    let report: serde_json::Value = serde_json::from_slice(&control.stdout).unwrap();
    assert_eq!(report["verdict"], "connected-in-ball");
}

#[test]
fn verify_exit_codes() {
    let cache = TempDir::new().unwrap();
    let good = ll_coarse(cache.path(), &["verify", "--suite", "group"]);
    assert_eq!(good.status.code(), Some(0));
    assert_eq!(stdout(&good).matches("[PASS]").count(), 2);

    let bad = ll_coarse(cache.path(), &["verify", "--suite", "group", "--corrupt-metric"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("[FAIL]"));
}

#[test]
fn verify_all_status_reflects_its_report() {
    let cache = TempDir::new().unwrap();
    let out = ll_coarse(cache.path(), &["verify", "--suite", "all"]);
    let text = stdout(&out);
    let lines = text.lines().filter(|l| l.starts_with("[PASS]") || l.starts_with("[FAIL]")).count();
    assert_eq!(lines, 10);
    let expected = if text.contains("[FAIL]") { 1 } else { 0 };
    assert_eq!(out.status.code(), Some(expected));
}

#[test]
fn usage_and_resource_errors() {
    let cache = TempDir::new().unwrap();
    let bad_input = ll_coarse(cache.path(), &["dist", "--from", r#"{"cursor":0,"lamps":[2,1]}"#, "--to", "{}"]);
    assert_eq!(bad_input.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_input.stderr).contains("--from"));

    let missing_n = ll_coarse(cache.path(), &["walk", "--kind", "I"]);
    assert_eq!(missing_n.status.code(), Some(2));

    let zero_n = ll_coarse(cache.path(), &["walk", "--kind", "C", "--n", "0"]);
    assert_eq!(zero_n.status.code(), Some(2));

    let big = ll_coarse(cache.path(), &["ball", "--radius", "13"]);
    assert_eq!(big.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&big.stderr).contains("cap 12"));

    let members = ll_coarse(cache.path(), &["ball", "--radius", "8", "--max-members", "100"]);
    assert_eq!(members.status.code(), Some(3));

    let limit = ll_coarse(cache.path(), &["profile", "--index-limit", "20000"]);
    assert_eq!(limit.status.code(), Some(3));
}

#[test]
fn ball_sphere_sizes() {
    let cache = TempDir::new().unwrap();
    let out = ll_coarse(cache.path(), &["ball", "--radius", "2"]);
    assert_eq!(stdout(&out), "distance,count\n0,1\n1,3\n2,6\n");
}
