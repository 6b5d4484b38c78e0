use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use uba_core::harness::{check_automaton, write_artifact, CheckConfig, Failure};
use uba_core::io::{parse_awa, parse_hoa};

const T1: &str = "awa v1
alphabet: a b
states: 2
initial: 0
accepting: 1
state 0:
  a -> 0 & 1
  b -> 1
state 1:
  a -> 1
  b -> 1
";

const AMBIGUOUS_HOA: &str = "HOA: v1
States: 2
Start: 0
AP: 1 \"a\"
acc-name: Buchi
Acceptance: 1 Inf(0)
--BODY--
State: 0 {0}
[0] 0
[0] 1
State: 1 {0}
[0] 1
--END--
";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_awa2uba"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn t1_file(dir: &Path) -> PathBuf {
    let p = dir.join("t1.awa");
    fs::write(&p, T1).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_writes_hoa_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let input = t1_file(dir.path());
    let out = dir.path().join("t1.hoa");
    let o = run(&[
        "build",
        "--algo",
        "u",
        "-i",
        s(&input),
        "-o",
        s(&out),
        "--stats",
    ]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let b = parse_hoa(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(b.alphabet(), ["a", "b"]);
    let stats: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(stats["macrostates"], b.state_count());
    assert_eq!(stats["n"], 2);
}

#[test]
fn build_every_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let input = t1_file(dir.path());
    for algo in ["mh", "brv", "bu", "u", "auto"] {
        let o = run(&["build", "--algo", algo, "-i", s(&input)]);
        assert_eq!(o.status.code(), Some(0), "{algo}: {o:?}");
        assert!(stdout(&o).starts_with("HOA: v1"), "{algo}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let input = t1_file(dir.path());
    let bad = dir.path().join("bad.awa");
    fs::write(&bad, "awa v1\nalphabet a\n").unwrap();
    assert_eq!(run(&["build", "-i", s(&bad)]).status.code(), Some(2));
    assert_eq!(
        run(&["build", "-i", "/nonexistent/x.awa"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["build", "--algo", "nope", "-i", s(&input)])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let limited = run(&[
        "build",
        "--algo",
        "u",
        "-i",
        s(&input),
        "--state-limit",
        "1",
    ]);
    assert_eq!(limited.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&limited.stderr).contains("limit"));
}

#[test]
fn parse_error_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.awa");
    fs::write(&bad, T1.replace("a -> 1\n", "a -> 1 &\n")).unwrap();
    let o = run(&["eval", "-i", s(&bad), "--lasso", ";a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("line 10, column 11"),
        "{o:?}"
    );
}

#[test]
fn eval_lassos() {
    let dir = tempfile::tempdir().unwrap();
    let input = t1_file(dir.path());
    let eval = |lasso: &str, state: &str| {
        let o = run(&["eval", "-i", s(&input), "--state", state, "--lasso", lasso]);
        assert_eq!(o.status.code(), Some(0), "{o:?}");
        stdout(&o).trim().to_string()
    };
    assert_eq!(eval("a;b", "0"), "accept");
    assert_eq!(eval(";a", "0"), "reject");
    assert_eq!(eval(";a", "1"), "accept");
    let o = run(&["eval", "-i", s(&input), "--state", "7", "--lasso", ";a"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eval", "-i", s(&input), "--lasso", "a b"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn trace_shows_profiles_and_run() {
    let dir = tempfile::tempdir().unwrap();
    let input = t1_file(dir.path());
    let o = run(&["trace", "-i", s(&input), "--lasso", "a;b"]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let text = stdout(&o);
    assert!(text.contains("R={0,1}"), "{text}");
    assert!(text.contains("d={0:2}"), "{text}");
    assert!(text.contains("accepting run of u"), "{text}");
    let o = run(&["trace", "-i", s(&input), "--lasso", ";a"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rejected"));
}

#[test]
fn check_unambiguous_on_awa_and_hoa() {
    let dir = tempfile::tempdir().unwrap();
    let input = t1_file(dir.path());
    for algo in ["bu", "u"] {
        let o = run(&["check-unambiguous", "--algo", algo, "-i", s(&input)]);
        assert_eq!(o.status.code(), Some(0), "{algo}: {o:?}");
    }
    let hoa = dir.path().join("u.hoa");
    assert!(run(&["build", "-i", s(&input), "-o", s(&hoa)])
        .status
        .success());
    assert_eq!(
        run(&["check-unambiguous", "-i", s(&hoa)]).status.code(),
        Some(0)
    );
    let amb = dir.path().join("amb.hoa");
    fs::write(&amb, AMBIGUOUS_HOA).unwrap();
    let o = run(&["check-unambiguous", "-i", s(&amb)]);
    assert_eq!(o.status.code(), Some(1), "{o:?}");
    assert!(stdout(&o).contains("ambiguous on"));
    let o = run(&["check-unambiguous", "-i", s(&amb), "--product-limit", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn diff_reports() {
    let dir = tempfile::tempdir().unwrap();
    let input = t1_file(dir.path());
    let o = run(&[
        "diff",
        "-i",
        s(&input),
        "--algo",
        "mh",
        "--max-prefix",
        "2",
        "--max-period",
        "3",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "equivalent_on_grid");
    assert_eq!(v["max_prefix"], 2);
    assert!(v["lassos"].as_u64().unwrap() > 0);
}

#[test]
fn campaign_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let arts = dir.path().join("artifacts");
    let args = [
        "campaign",
        "--seed",
        "1",
        "--count",
        "40",
        "--states",
        "4",
        "--algos",
        "brv,bu,u",
        "--samples",
        "5",
        "--expect-brv-ambiguity",
        "--out",
        s(&out),
        "--artifacts",
        s(&arts),
    ];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    assert!(stdout(&o).contains("failed 0"));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["records"].as_array().unwrap().len(), 40);
    assert!(report["brv_ambiguous"].as_u64().unwrap() >= 1);
    assert_eq!(report["passed"], true);
    let o2 = run(&args);
    assert_eq!(stdout(&o), stdout(&o2));
    assert_eq!(
        run(&[
            "campaign",
            "--count",
            "2",
            "--algos",
            "u",
            "--expect-brv-ambiguity"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn replay_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let a = parse_awa(T1).unwrap().awa;
    let config = CheckConfig {
        samples: 5,
        ..CheckConfig::default()
    };
    let mut record = check_automaton(0, None, &a, 9, &config);
    assert!(record.passed());
    let clean = dir.path().join("clean");
    write_artifact(&clean, &config, &record).unwrap();
    let o = run(&["replay", "--artifact", s(&clean)]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    assert!(stdout(&o).contains("same failures: yes"));

    record.failures.push(Failure {
        check: "forged".into(),
        detail: "not a real failure".into(),
        lasso: None,
    });
    let forged = dir.path().join("forged");
    write_artifact(&forged, &config, &record).unwrap();
    let o = run(&["replay", "--artifact", s(&forged)]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let text = stdout(&o);
    assert!(
        text.contains("original: fail") && text.contains("same failures: no"),
        "{text}"
    );

    assert_eq!(
        run(&["replay", "--artifact", s(dir.path())]).status.code(),
        Some(2)
    );
}
