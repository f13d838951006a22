use std::process::{Command, Output};

fn tga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tga"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn table_csv_matches_golden_bytes() {
    let out = tga(&["table", "cayley_dickson", "4", "--csv"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        include_str!("../testdata/cayley_dickson_4.csv")
    );
}

#[test]
fn table_json_round_trips_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cd3.json");
    let out = tga(&[
        "table",
        "cayley_dickson",
        "3",
        "--json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let check = tga(&["check", path.to_str().unwrap(), "proper"]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(stdout(&check), "proper1: holds\nproper2: holds\n");
}

#[test]
fn check_exit_codes() {
    assert_eq!(
        tga(&["check", "cayley_dickson:3", "associative"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        tga(&["check", "clifford:4", "associative", "proper"])
            .status
            .code(),
        Some(0)
    );
    let bad = tga(&["check", "nonsense:3"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error"));
}

#[test]
fn mul_prints_element_json() {
    let out = tga(&["mul", "cayley_dickson:2", "i1", "i2", "--verify"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["coeffs"][3], "1/1");
    assert_eq!(v["mode"], "exact");
}

#[test]
fn blade_mul_worked_example() {
    let out = tga(&["blade", "mul", "e134", "e23"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "-e124\n");
}

#[test]
fn normscan_is_reproducible() {
    let a = tga(&["normscan", "4", "--seed", "9", "--samples", "50", "--json"]);
    let b = tga(&["normscan", "4", "--seed", "9", "--samples", "50", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["samples"], 50);
    assert_eq!(v["seed"], 9);
}

#[test]
fn zerodiv_expect_none_fails_on_witness() {
    assert_eq!(
        tga(&["zerodiv", "hadamard:2", "--expect-none"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        tga(&["zerodiv", "cayley_dickson:2", "--expect-none"])
            .status
            .code(),
        Some(0)
    );
}
