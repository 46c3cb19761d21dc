//! End-to-end runs of the `goppa` binary. Stdout is compared with files in
//! tests/golden; set UPDATE_GOLDEN=1 to rewrite them.

use std::path::PathBuf;
use std::process::{Command, Output};

fn goppa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goppa"))
        .args(args)
        .env_remove("GOPPA_WORKERS")
        .output()
        .expect("spawn goppa")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn golden(name: &str, args: &[&str]) -> String {
    let out = goppa(args);
    assert_eq!(out.status.code(), Some(0), "{args:?} failed: {}", stderr(&out));
    let got = stdout(&out);
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "output of {args:?} differs from {name}");
    got
}

#[test]
fn bound_plain() {
    let out = golden("bound_5_7.txt", &["bound", "--n", "5", "--r", "7"]);
    assert!(out.lines().any(|l| l.split_whitespace().eq(["bound", "29991"])));
}

#[test]
fn bound_json() {
    let out = golden("bound_5_7.json", &["--format", "json", "bound", "--n", "5", "--r", "7"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["bound"], "29991");
    assert_eq!(v["q"], "32");
    assert_eq!(v["fixed_orbit_count"], "3");
}

#[test]
fn bound_csv() {
    let out = golden("bound_5_7.csv", &["bound", "--n", "5", "--r", "7", "--format", "csv"]);
    assert_eq!(out.lines().nth(1), Some("5,7,32,3,149943,29991"));
}

#[test]
fn table_with_rejected_row() {
    let out = golden("table_7.txt", &["table", "--n", "7", "--r", "3,5,11,13,17,19"]);
    assert!(out.contains("rejected"));
    for want in ["469", "935870030557051"] {
        assert!(out.contains(want), "missing {want}");
    }
}

#[test]
fn table_csv_omits_rejected_rows() {
    let out = goppa(&["table", "--n", "7", "--r", "3,5,11", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "n,r,q,fixed_orbits,pgl_orbits,bound\n\
         7,5,128,1,3277,469\n\
         7,11,128,31,6551090213899171,935870030557051\n"
    );
    assert!(stderr(&out).contains("r = 3 rejected"));
}

#[test]
fn orbits_listing() {
    let out = golden("orbits_8_5.txt", &["orbits", "--q", "8", "--r", "5"]);
    assert!(out.starts_with("PGL-orbits on I_5 over GF(2^3): 13 orbits covering 6552 points"));
    assert_eq!(out.lines().filter(|l| l.contains("size    504")).count(), 13);
}

#[test]
fn orbits_on_elements() {
    let out = golden(
        "orbits_8_5_pgammal_elements.csv",
        &["orbits", "--n", "3", "--r", "5", "--group", "pgammal", "--domain", "elements", "--format", "csv"],
    );
    let sizes: u64 = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(sizes, 6552 * 5);
}

#[test]
fn verify_suites() {
    let out = golden("verify_bijection_3_5.txt", &["verify", "--suite", "bijection", "--n", "3", "--r", "5"]);
    assert!(out.ends_with("3 of 3 checks passed\n"));
    let out = golden("verify_orbit_count_3_5.txt", &["verify", "--suite", "orbit-count", "--n", "3", "--r", "5"]);
    assert!(out.contains("PASS  PGL-orbits on I_r: 13"));
    let out = golden(
        "verify_fixed_orbits_3_5.json",
        &["verify", "--suite", "fixed-orbits", "--n", "3", "--r", "5", "--samples", "10", "--format", "json"],
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn failing_checks_exit_2() {
    // r = 3 divides q(q^2 - 1) at q = 4, so the orbit formula does not apply.
    let out = goppa(&["verify", "--suite", "orbit-count", "--n", "2", "--r", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("FAIL"));
    // --strict refuses the same parameters up front.
    let out = goppa(&["verify", "--suite", "orbit-count", "--n", "2", "--r", "3", "--strict"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn goppa_code() {
    let out = golden("goppa_3_2.txt", &["goppa", "--n", "3", "--r", "2", "--alpha", "0x8", "--generator"]);
    assert!(out.contains("extended  length    9  dimension   2  distance 6"));
}

#[test]
fn field_info() {
    let out = golden("field_info_5.txt", &["field-info", "--n", "5"]);
    assert!(out.contains("x^5+x^2+1"));
    let out = goppa(&["field-info", "--modulus", "x^3+x+1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["size"], "8");
    assert_eq!(v["x_order"], 7);
}

#[test]
fn invalid_input_exits_1() {
    let cases: &[&[&str]] = &[
        &["bound", "--n", "4", "--r", "7"],
        &["bound", "--n", "5"],
        &["bound", "--n", "5", "--r", "5"],
        &["verify", "--suite", "nope", "--n", "3", "--r", "5"],
        &["orbits", "--q", "6", "--r", "5"],
        &["goppa", "--n", "3", "--r", "2", "--alpha", "0x1"],
        &["goppa", "--n", "3", "--r", "2", "--alpha", "zz"],
        &["field-info", "--modulus", "x^4+1"],
        &["--max-field-bits", "20", "field-info", "--n", "3"],
        &["--max-domain-bits", "10", "orbits", "--q", "8", "--r", "5"],
    ];
    for args in cases {
        let out = goppa(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
        assert!(stdout(&out).is_empty(), "{args:?} wrote to stdout");
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn bad_worker_count_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_goppa"))
        .args(["bound", "--n", "5", "--r", "7"])
        .env("GOPPA_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_deterministic_across_worker_counts() {
    let args = ["verify", "--suite", "fixed-orbits", "--n", "3", "--r", "5", "--samples", "20", "--seed", "7"];
    let runs: Vec<Vec<u8>> = ["1", "3"]
        .iter()
        .map(|w| {
            Command::new(env!("CARGO_BIN_EXE_goppa"))
                .args(args)
                .env("GOPPA_WORKERS", w)
                .output()
                .unwrap()
                .stdout
        })
        .collect();
    assert!(!runs[0].is_empty());
    assert_eq!(runs[0], runs[1]);
}
