use std::fs;
use std::process::Command;

fn mlab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mlab"))
}

fn catalog(file: &str) -> String {
    format!("{}/../../catalog/{file}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn multiplier_s4() {
    let out = mlab()
        .args(["multiplier", &catalog("core.grp"), "--group", "S4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "S4: [2]");
}

#[test]
fn bogomolov_abelian_all_trivial() {
    let out = mlab()
        .args(["bogomolov", &catalog("abelian.grp")])
        .output()
        .unwrap();
    assert!(out.status.success());
    for line in String::from_utf8_lossy(&out.stdout).lines() {
        assert!(line.ends_with(": []"), "{line}");
    }
}

#[test]
fn parse_error_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.grp");
    fs::write(&bad, "group X\nperm (1 1 2)\nend\n").unwrap();
    let out = mlab()
        .args(["multiplier", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("repeated point"));
}

#[test]
fn usage_error_exits_2() {
    let out = mlab().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_group_exits_2() {
    let out = mlab()
        .args(["multiplier", &catalog("core.grp"), "--group", "Nope"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suite_json_deterministic_and_passing() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("small.grp");
    fs::write(&f, "group S3\nperm (1 2)\nperm (1 2 3)\nend\n").unwrap();
    let run = || {
        let out = mlab()
            .args(["suite", f.to_str().unwrap(), "--json"])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let a = run();
    let b = run();
    assert_eq!(a, b);
    let reports: serde_json::Value = serde_json::from_slice(&a).unwrap();
    for r in reports.as_array().unwrap() {
        assert_ne!(r["status"], "FAIL");
        for key in ["group", "check", "params", "status", "witness", "invariants"] {
            assert!(r.get(key).is_some(), "missing key {key}");
        }
    }
}

#[test]
fn cache_round_trip_via_env() {
    let cache_dir = tempfile::tempdir().unwrap();
    let run = || {
        let out = mlab()
            .env("MLAB_CACHE_DIR", cache_dir.path())
            .args(["multiplier", &catalog("core.grp"), "--group", "D4"])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8_lossy(&out.stdout).trim().to_string()
    };
    let fresh = run();
    assert!(fs::read_dir(cache_dir.path()).unwrap().count() > 0);
    let cached = run();
    assert_eq!(fresh, cached);
    assert_eq!(fresh, "D4: [2]");
}

#[test]
fn max_order_env_caps_construction() {
    let out = mlab()
        .env("MLAB_MAX_ORDER", "4")
        .args(["multiplier", &catalog("core.grp"), "--group", "S4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
