use std::process::{Command, Output};

fn magnus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magnus")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn scalar_magnus_coefficients() {
    let o = magnus(&["expand", "scalar:p=1;N=2", "--form", "magnus-oracle"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for line in ["Q1 = 2", "Q2 = -1", "Q3 = 2/3"] {
        assert!(out.contains(line), "{out}");
    }
}

#[test]
fn closed_forms_agree_with_oracle_on_cli() {
    let spec = "matrix:rand(2x2,int<=3);N=4;seed=7;degrees=1,2";
    for dir in ["forward", "backward"] {
        let oracle = stdout(&magnus(&["expand", spec, "--form", "magnus-oracle", "--direction", dir]));
        let prelie = stdout(&magnus(&["expand", spec, "--form", "magnus-prelie", "--direction", dir]));
        let q = |s: &str| s.lines().filter(|l| l.starts_with('Q')).map(String::from).collect::<Vec<_>>();
        assert_eq!(q(&oracle), q(&prelie));
        assert_eq!(q(&oracle).len(), 3);
    }
}

#[test]
fn free_dyson_words() {
    let out = stdout(&magnus(&["expand", "free:N=2", "--order", "2"]));
    assert!(out.contains("T2 = P_2 P_1"), "{out}");
    let out = stdout(&magnus(&["expand", "free:N=2", "--order", "2", "--direction", "backward"]));
    assert!(out.contains("T2 = P_1 P_2"), "{out}");
    let out = stdout(&magnus(&["expand", "free:N=3", "--order", "0"]));
    assert!(out.contains("T0 = 1") && !out.contains("T1"), "{out}");
}

#[test]
fn every_suite_passes_with_defaults() {
    for suite in ["rota-baxter", "tridendriform", "prelie", "dyson", "magnus", "brace", "yangian", "boundary"] {
        let o = magnus(&["verify", suite, "--seed", "11", "--cases", "3"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).contains("result = PASS"));
    }
}

#[test]
fn float_backend() {
    for suite in ["tridendriform", "dyson", "brace"] {
        let o = magnus(&["verify", suite, "--backend", "float", "--cases", "2"]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
    }
    assert_eq!(magnus(&["verify", "yangian", "--backend", "float"]).status.code(), Some(2));
    // an impossible tolerance turns float defects into failures
    let o = magnus(&["verify", "magnus", "--backend", "float", "--tolerance=-1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn vacuous_and_yangian_cases() {
    assert_eq!(magnus(&["verify", "magnus", "--sites", "0"]).status.code(), Some(0));
    let o = magnus(&["verify", "yangian", "--N", "3", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hopf-antipode-q2-vs-linear-form"));
}

#[test]
fn reports_are_deterministic() {
    let a = magnus(&["verify", "boundary", "--seed", "5", "--json"]);
    let b = magnus(&["verify", "boundary", "--seed", "5", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v.get("wall_time_ms").is_none());
    let t = magnus(&["verify", "boundary", "--json", "--timing"]);
    let v: serde_json::Value = serde_json::from_slice(&t.stdout).unwrap();
    assert!(v["wall_time_ms"].is_number());
}

#[test]
fn limit_table() {
    let o = magnus(&["limit", "field:poly(X;dim=2)", "--deltas", "0.25,0.125,0.0625"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("delta,err_q1,err_q2,err_q3,rate_q1,rate_q2,rate_q3"));
    for line in lines {
        let err_q1: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(err_q1, 0.0, "{line}");
    }
    let o = magnus(&["limit", "field:poly(X+x*Y;dim=2)", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let r1 = v["rate"][0].as_f64().unwrap();
    assert!((0.85..=1.15).contains(&r1), "{r1}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["limit", "field:poly(X;dim=2)", "--deltas", "0.5,0.25"][..],
        &["limit", "field:poly(X"],
        &["expand", "torus:N=2"],
        &["expand", "free:N=2", "--backend", "float"],
        &["expand", "scalar:N=2", "--form", "magnus-explicit", "--order", "4"],
        &["verify", "nonsense"],
        &["verify"],
    ] {
        assert_eq!(magnus(args).status.code(), Some(2), "{args:?}");
    }
}
