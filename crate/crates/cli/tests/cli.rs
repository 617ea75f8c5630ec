use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pkcong"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn pk_exact_dump() {
    let out = run(&["pk", "--k", "1", "--exact", "--limit", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0 1\n1 1\n2 2\n3 3\n4 5\n5 7\n");
    let out = run(&["pk", "--k", "2", "--exact", "--limit", "3"]);
    assert_eq!(stdout(&out).lines().last(), Some("3 10"));
}

#[test]
fn pk_residue_dump() {
    let out = run(&["pk", "--k", "1", "--modulus", "5", "--limit", "9"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().any(|l| l == "9 0"));
    let out = run(&[
        "pk",
        "--k",
        "3",
        "--modulus",
        "25",
        "--limit",
        "4",
        "--format",
        "json",
    ]);
    // p_3(0..=4) = 1, 3, 9, 22, 51.
    let want = ["1", "3", "9", "22", "1"];
    for (n, line) in stdout(&out).lines().enumerate() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["n"], n);
        assert_eq!(v["value"], want[n]);
    }
}

#[test]
fn pk_flag_errors() {
    assert_eq!(code(&run(&["pk", "--k", "1", "--limit", "3"])), 2);
    assert_eq!(
        code(&run(&["pk", "--k", "1", "--modulus", "6", "--limit", "3"])),
        2
    );
    assert_eq!(
        code(&run(&["pk", "--k", "1", "--modulus", "9", "--limit", "3"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "pk",
            "--k",
            "1",
            "--modulus",
            "5",
            "--exact",
            "--limit",
            "3"
        ])),
        2
    );
    assert_eq!(
        code(&run(&["pk", "--k", "0", "--exact", "--limit", "3"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "pk", "--k", "1", "--exact", "--limit", "3", "--bogus"
        ])),
        2
    );
}

#[test]
fn certify_outcomes() {
    let out = run(&["certify", "--ell", "5", "--m", "1", "--k", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("certified p_1(5n+4)"));

    let out = run(&["certify", "--ell", "11", "--m", "2", "--k", "95", "--json"]);
    assert_eq!(code(&out), 0);
    let cert = pkcong::certifier::Certificate::from_line(stdout(&out).trim_end()).unwrap();
    assert_eq!(
        (cert.claim.modulus().value(), cert.claim.k, cert.claim.a),
        (121, 95, 9)
    );
    assert!(pkcong::certifier::recheck(&cert).unwrap());

    let out = run(&["certify", "--ell", "5", "--m", "2", "--k", "2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("HypothesisViolated"));

    // k = 3 meets no finite condition mod 5.
    let out = run(&["certify", "--ell", "5", "--m", "1", "--k", "3", "--json"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim_end()).unwrap();
    assert_eq!(v["note"], "hypotheses not established");
}

#[test]
fn certify_flag_errors() {
    assert_eq!(
        code(&run(&["certify", "--ell", "4", "--m", "1", "--k", "1"])),
        2
    );
    assert_eq!(
        code(&run(&["certify", "--ell", "3", "--m", "1", "--k", "1"])),
        2
    );
    assert_eq!(
        code(&run(&["certify", "--ell", "5", "--m", "0", "--k", "1"])),
        2
    );
    assert_eq!(code(&run(&["certify", "--ell", "5", "--m", "1"])), 2);
}

#[test]
fn verify_outcomes() {
    let out = run(&[
        "verify", "--ell", "7", "--m", "1", "--k", "1", "--a", "5", "--nmax", "500",
    ]);
    assert_eq!(code(&out), 0);

    let out = run(&[
        "verify", "--ell", "5", "--m", "1", "--k", "1", "--a", "3", "--nmax", "20", "--json",
    ]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim_end()).unwrap();
    assert_eq!(v["counterexample"]["n"], 0);
    assert_eq!(v["counterexample"]["argument"], 3);
    assert_eq!(v["counterexample"]["value"], 3);

    let out = run(&[
        "verify", "--ell", "5", "--m", "1", "--k", "1", "--a", "4", "--nmax", "0", "--json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim_end()).unwrap();
    assert_eq!(v["checked"], 1);

    assert_eq!(
        code(&run(&[
            "verify", "--ell", "5", "--m", "1", "--k", "1", "--a", "5", "--nmax", "3"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "verify", "--ell", "5", "--m", "1", "--k", "1", "--a", "-1", "--nmax", "3"
        ])),
        2
    );
}

fn families(json: &str) -> Vec<(u64, u64, u64)> {
    json.lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            (
                v["modulus"].as_u64().unwrap(),
                v["k"].as_u64().unwrap(),
                v["a"].as_u64().unwrap(),
            )
        })
        .collect()
}

#[test]
fn search_tables() {
    let out = run(&[
        "search",
        "--ell-max",
        "13",
        "--m-max",
        "1",
        "--k-max",
        "12",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        families(&stdout(&out)),
        vec![
            (5, 1, 4),
            (5, 2, 3),
            (7, 1, 5),
            (7, 4, 6),
            (11, 1, 6),
            (11, 3, 7),
            (11, 5, 8),
            (11, 7, 9),
            (11, 8, 4),
            (13, 10, 8)
        ]
    );

    let out = run(&[
        "search",
        "--ell-max",
        "5",
        "--m-max",
        "2",
        "--k-max",
        "25",
        "--json",
    ]);
    let got = families(&stdout(&out));
    for fam in [(25, 11, 14), (25, 6, 19), (25, 1, 24)] {
        assert!(got.contains(&fam), "{fam:?} missing");
    }

    let out = run(&[
        "search",
        "--ell-max",
        "5",
        "--m-max",
        "1",
        "--k-max",
        "1",
        "--json",
    ]);
    assert_eq!(families(&stdout(&out)), vec![(5, 1, 4)]);

    assert_eq!(
        code(&run(&[
            "search",
            "--ell-max",
            "3",
            "--m-max",
            "1",
            "--k-max",
            "1"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "search",
            "--ell-max",
            "5",
            "--m-max",
            "0",
            "--k-max",
            "1"
        ])),
        2
    );
}

#[test]
fn search_matches_golden_and_is_deterministic() {
    let args = [
        "search",
        "--ell-max",
        "13",
        "--m-max",
        "2",
        "--k-max",
        "169",
        "--json",
    ];
    let golden = include_str!("golden/search_13_2_169.jsonl");
    let par = run(&args);
    assert_eq!(code(&par), 0);
    assert_eq!(stdout(&par), golden);
    let mut seq_args = args.to_vec();
    seq_args.push("--sequential");
    assert_eq!(stdout(&run(&seq_args)), golden);
}

#[test]
fn selftest_suites() {
    for suite in ["ladic", "eisenstein", "cko"] {
        let out = run(&["selftest", "--suite", suite]);
        assert_eq!(code(&out), 0, "{suite}: {}", stdout(&out));
        let text = stdout(&out);
        assert!(text.lines().count() > 0);
        assert!(text.lines().all(|l| l.starts_with("PASS ")));
    }
    assert_eq!(code(&run(&["selftest", "--suite", "nope"])), 2);
}
