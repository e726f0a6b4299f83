use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slemma-kit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn s4_intro_pair() {
    let out = run(&[
        "s4",
        "--f",
        "x1^4 - x2^4",
        "--g",
        "x1^2 - x2^2",
        "--slater",
        "1,0",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["verdict"]["kind"], "Proved");
    assert!(r["certificate"].is_object());
}

#[test]
fn nongeom_remainders() {
    let out = run(&["counter", "verify", "nongeom"]);
    assert_eq!(code(&out), 0);
    assert!(report(&out)["certificate"].is_object());
}

#[test]
fn slemma_without_slater_point() {
    let out = run(&["slemma", "--f", "x1^2", "--g", "-x1^2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Slater"));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&["s4", "--bogus"])), 1);
    let out = run(&["slemma", "--f", "x1^^2", "--g", "x1^2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 3"));
    assert_eq!(code(&run(&["counter", "verify", "no-such-entry"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn exit_codes_follow_verdicts() {
    assert_eq!(
        code(&run(&[
            "stability",
            "classify",
            "--q",
            "x1*x2 + x2*x3 + x1*x3"
        ])),
        0
    );
    assert_eq!(
        code(&run(&["stability", "classify", "--q", "-x1^2 + x1*x2"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "check-inclusion",
            "--g",
            "x1^2 - 1",
            "--f",
            "x1^2 - 4"
        ])),
        2
    );
    assert_eq!(code(&run(&["counter", "blonk", "--degree", "8"])), 3);
}

#[test]
fn verify_only_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, &[&str]); 2] = [
        (
            "slemma.json",
            &["slemma", "--f", "2*x1^2 - x2^2", "--g", "x1^2 - x2^2"],
        ),
        (
            "s4.json",
            &[
                "s4",
                "--f",
                "x1^4 - x2^4",
                "--g",
                "x1^2 - x2^2",
                "--slater",
                "1,0",
            ],
        ),
    ];
    for (file, args) in cases {
        let path = dir.path().join(file);
        let path = path.to_str().unwrap();
        let mut solve = args.to_vec();
        solve.extend(["--json", path]);
        assert_eq!(code(&run(&solve)), 0, "{args:?}");
        let mut check = args.to_vec();
        check.extend(["--verify-only", path]);
        assert_eq!(code(&run(&check)), 0, "{args:?}");
    }
    let wrong = run(&[
        "s4",
        "--f",
        "x1^4 - 2*x2^4",
        "--g",
        "x1^2 - x2^2",
        "--verify-only",
        dir.path().join("s4.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&wrong), 2);
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "check-inclusion",
        "--g",
        "x1*x3 + x2*x3 + x1*x2",
        "--f",
        "x1^2 - x2^2",
        "--seed",
        "5",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(without_timing(report(&a)), without_timing(report(&b)));
    let seq = [&args[..], &["--sequential"]].concat();
    assert_eq!(
        without_timing(report(&a)),
        without_timing(report(&run(&seq)))
    );
}

#[test]
fn acceptance_filter() {
    let out = run(&["acceptance", "--filter", "stability"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("1/1 criteria passed"), "{text}");
}
