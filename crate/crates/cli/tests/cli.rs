use std::path::PathBuf;
use std::process::{Command, Output};

use periodcong::hwdwork::{CongruenceReport, UnitRootResult};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_periodcong"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("periodcong-{}-{name}", std::process::id()))
}

#[test]
fn hw_examples() {
    let o = run(&["hw", "--builtin", "example-1d", "--m", "3", "--mu", "interior"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[1 + 2*t^2]"), "{}", stdout(&o));
    let o = run(&["hw", "--builtin", "legendre", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[2 + 2*z]"), "{}", stdout(&o));
    let o = run(&["hw", "--builtin", "legendre"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["hw", "--builtin", "example-1d", "--m", "4", "--p", "3"]);
    assert!(stdout(&o).contains("[1]"), "{}", stdout(&o));
}

#[test]
fn hw_from_file_matches_builtin() {
    let a = run(&["hw", "--builtin", "example-1d", "--m", "5", "--format", "json"]);
    let b = run(&[
        "hw",
        "--input",
        &fixture("x_plus_inverse.json"),
        "--m",
        "5",
        "--format",
        "json",
    ]);
    let (a, b): (serde_json::Value, serde_json::Value) = (
        serde_json::from_slice(&a.stdout).unwrap(),
        serde_json::from_slice(&b.stdout).unwrap(),
    );
    assert_eq!(a["beta"], b["beta"]);
    assert_eq!(a["gamma"]["rows"][0][0], "1 + 2*t^2 + 6*t^4");
}

#[test]
fn ct_seq_output() {
    let o = run(&["ct-seq", "--builtin", "example-1d", "--K", "6"]);
    assert!(stdout(&o).contains("1, 0, 2, 0, 6, 0, 20"));
    let o = run(&["ct-seq", "--builtin", "legendre", "--K", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1 - t g"));
}

#[test]
fn verify_examples() {
    let o = run(&[
        "verify",
        "mev",
        "--builtin",
        "dwork-quartic",
        "--p",
        "5",
        "--s",
        "2",
        "--T",
        "60",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("holds") && stdout(&o).contains("t^60"));
    let o = run(&[
        "verify",
        "main5",
        "--builtin",
        "section6",
        "--p",
        "3",
        "--smax",
        "1",
        "--M",
        "9",
        "--mu",
        "interior",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("weight <= 9"));
    let o = run(&[
        "verify",
        "main5",
        "--input",
        &fixture("section6.json"),
        "--p",
        "3",
        "--smax",
        "1",
        "--M",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("columns = a5"));
}

#[test]
fn verify_failures_are_located() {
    let o = run(&[
        "verify",
        "mev",
        "--builtin",
        "example-1d",
        "--p",
        "3",
        "--s",
        "2",
        "--perturb",
        "q:4",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("first failure") && stdout(&o).contains("t^4"));
    let o = run(&[
        "verify",
        "main5",
        "--builtin",
        "section6",
        "--p",
        "3",
        "--smax",
        "1",
        "--M",
        "6",
        "--perturb",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("entry (a5, a5)"));
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        &["verify", "mev", "--builtin", "nope", "--p", "3", "--s", "1"][..],
        &["verify", "mev", "--builtin", "example-1d", "--p", "4", "--s", "1"],
        &["verify", "any-m", "--builtin", "example-1d", "--p", "3", "--m", "4"],
        &[
            "verify",
            "mev",
            "--builtin",
            "example-1d",
            "--p",
            "3",
            "--s",
            "1",
            "--perturb",
            "x:1",
        ],
        &[
            "verify",
            "main5",
            "--builtin",
            "section6",
            "--p",
            "3",
            "--smax",
            "1",
            "--M",
            "4",
            "--mu",
            "c:1",
        ],
        &["ahyp", "psi", "--builtin", "legendre", "--m", "2"],
        &[
            "ahyp",
            "period",
            "--builtin",
            "section6",
            "--u",
            "1,1",
            "--k",
            "1",
            "--i",
            "9",
        ],
        &["hw", "--input", "/nonexistent.json", "--m", "2"],
        &["unit-root", "--p", "5", "--s", "1"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error"), "{args:?}");
    }
}

#[test]
fn unit_root_examples() {
    let o = run(&["unit-root", "--p", "5", "--z0", "2", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lambda = 13 mod 5^2") && stdout(&o).contains("agreement: yes"));
    let o = run(&["unit-root", "--p", "5", "--z0", "2", "--s", "1"]);
    assert!(stdout(&o).contains("lambda = 3 mod 5^1"));
    let o = run(&["unit-root", "--p", "5", "--z0", "1", "--s", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("singular"));
    let o = run(&[
        "unit-root",
        "--builtin",
        "dwork-quartic",
        "--p",
        "5",
        "--t0",
        "2",
        "--s",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn json_reports_round_trip() {
    let o = run(&[
        "verify",
        "mev",
        "--builtin",
        "example-1d",
        "--p",
        "3",
        "--s",
        "2",
        "--perturb",
        "gamma:5",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report: CongruenceReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!report.holds);
    let again: CongruenceReport = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(again, report);

    let o = run(&["unit-root", "--p", "7", "--z0", "3", "--s", "2", "--format", "json"]);
    let r: UnitRootResult = serde_json::from_slice(&o.stdout).unwrap();
    let again: UnitRootResult = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
    assert_eq!(r.agree, Some(true));
}

#[test]
fn output_file_and_determinism() {
    let path = scratch("report.json");
    let path_s = path.to_str().unwrap();
    let args = [
        "verify",
        "limits",
        "--builtin",
        "legendre",
        "--p",
        "3",
        "--smax",
        "2",
        "--format",
        "json",
        "--output",
        path_s,
    ];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let strip = |s: &str| {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let first = strip(&std::fs::read_to_string(&path).unwrap());
    run(&args);
    let second = strip(&std::fs::read_to_string(&path).unwrap());
    std::fs::remove_file(&path).ok();
    assert_eq!(first, second);
    assert_eq!(first["claim"], "limits");
}

#[test]
fn ahyp_commands() {
    let o = run(&["ahyp", "kernel", "--builtin", "section6"]);
    assert!(stdout(&o).contains("rank 2") && stdout(&o).contains("pointed"));
    let lattice = run(&["ahyp", "psi", "--builtin", "section6", "--mu", "all", "--m", "4"]);
    let oracle = run(&[
        "ahyp",
        "psi",
        "--builtin",
        "section6",
        "--mu",
        "all",
        "--m",
        "4",
        "--oracle",
        "--format",
        "json",
    ]);
    let lattice_json = run(&[
        "ahyp",
        "psi",
        "--builtin",
        "section6",
        "--mu",
        "all",
        "--m",
        "4",
        "--format",
        "json",
    ]);
    let (a, b): (serde_json::Value, serde_json::Value) = (
        serde_json::from_slice(&lattice_json.stdout).unwrap(),
        serde_json::from_slice(&oracle.stdout).unwrap(),
    );
    assert_eq!(a["matrix"], b["matrix"]);
    assert!(stdout(&lattice).contains("columns: a1, a2, a3, a4, a5"));
    let o = run(&[
        "ahyp",
        "psi",
        "--builtin",
        "section6",
        "--M",
        "4",
        "--p",
        "3",
        "--s",
        "2",
    ]);
    assert!(stdout(&o).contains("7*v1^4*v4^4*v5^-8"), "{}", stdout(&o));
    let o = run(&[
        "ahyp",
        "period",
        "--builtin",
        "section6",
        "--u",
        "1,1",
        "--k",
        "1",
        "--i",
        "5",
        "--M",
        "3",
    ]);
    assert!(stdout(&o).contains("v5^-1 + 2*v1*v4*v5^-3"), "{}", stdout(&o));
}

#[test]
fn exit_codes_are_0_1_or_2() {
    for args in [
        &["verify", "deriv", "--builtin", "example-1d", "--p", "3", "--m", "9"][..],
        &[
            "verify",
            "deriv",
            "--builtin",
            "example-1d",
            "--p",
            "3",
            "--m",
            "9",
            "--perturb",
            "q:1",
        ],
        &[
            "verify",
            "limits",
            "--builtin",
            "example-1d",
            "--p",
            "3",
            "--smax",
            "2",
            "--t0",
            "1",
        ],
        &["ahyp", "psi", "--builtin", "section6"],
        &["bogus"],
    ] {
        let code = run(args).status.code();
        assert!(matches!(code, Some(0..=2)), "{args:?}: {code:?}");
    }
}
