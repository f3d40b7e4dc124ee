use std::process::{Command, Output};

fn normbase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normbase")).args(args).env_remove("NORMBASE_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_rows() {
    let o = normbase(&["verify", "--q", "2", "--n", "1..8", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(
        lines[0],
        "q,n,m,e,lhs,rhs,equality,predicate,v,nb_count,irr_nonzero_trace,oracle_v,oracle_npoly,oracle_irr"
    );
    assert_eq!(lines[7], "2,7,7,0,49,63,false,false,49,7,9,49,7,9");
}

#[test]
fn verify_sweep_without_oracle() {
    let o = normbase(&["verify", "--q", "2,3,2^2,5", "--n", "1..12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 49);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",,,")));
}

#[test]
fn verify_json() {
    let o = normbase(&["verify", "--q-max", "4", "--n", "3,6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[1]["q"], 2);
    assert_eq!(rows[1]["lhs"], "24");
    assert_eq!(rows[1]["rhs"], "30");
    assert!(rows[1]["oracle_v"].is_null());
}

#[test]
fn verify_to_file() {
    let dir = std::env::temp_dir().join(format!("normbase-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.csv");
    let o = normbase(&["verify", "--q", "3", "--n", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.ends_with("3,4,4,0,32,48,false,false,32,8,12,,,\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--q", "6", "--n", "1..3"][..],
        &["verify", "--q", "2", "--n", "0..3"],
        &["verify", "--q", "2", "--n", "5..3"],
        &["count", "v", "--n", "3", "--q", "12"],
        &["test", "npoly", "--q", "2", "--poly", "1,2"],
        &["test", "normal", "--q", "2", "--modulus", "1,0,0,1", "--elem", "0,1"],
        &["bogus"],
    ] {
        assert_eq!(normbase(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn budget_errors_exit_3() {
    let o = normbase(&["count", "v", "--n", "24", "--q", "2", "--oracle"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&o), "6291456\n");
    let o = normbase(&["witness", "--n", "17", "--q", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_normbase"))
        .args(["count", "v", "--n", "10", "--q", "2", "--oracle"])
        .env("NORMBASE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn counts() {
    for (args, want) in [
        (&["count", "v", "--n", "7", "--q", "2", "--oracle"][..], "49\n"),
        (&["count", "nb", "--n", "4", "--q", "2", "--oracle"], "2\n"),
        (&["count", "irr-trace", "--n", "7", "--q", "2", "--oracle"], "9\n"),
        (&["count", "irr-trace", "--n", "4", "--q", "3", "--t", "2", "--oracle"], "6\n"),
        (&["count", "irr-total", "--n", "4", "--q", "3", "--oracle"], "12\n"),
        (&["count", "v", "--n", "3", "--q", "2^2"], "27\n"),
    ] {
        let o = normbase(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&o), want, "{args:?}");
    }
}

#[test]
fn factor_tables() {
    let text = stdout(&normbase(&["factor-xn1", "--n", "7", "--q", "2"]));
    assert!(text.contains("d=7 tau=3 phi/tau=2\n  x^3 + x^2 + 1\n  x^3 + x + 1\n"));
    let text = stdout(&normbase(&["factor-xn1", "--n", "6", "--q", "2"]));
    assert!(text.contains("(x^3 - 1)^2"));
    assert!(text.contains("d=3 tau=2 phi/tau=1\n  x^2 + x + 1\n"));
    let text = stdout(&normbase(&["factor-xn1", "--n", "1", "--q", "5"]));
    assert_eq!(text, "x^1 - 1 over F_5\nd=1 tau=1 phi/tau=1\n  x + 4\n");
}

#[test]
fn npoly_tests() {
    let run = |poly: &str| stdout(&normbase(&["test", "npoly", "--q", "2", "--poly", poly]));
    assert!(run("1,0,1,1").starts_with("true"));
    assert!(run("1,1,0,1").starts_with("false: zero trace"));
    assert!(run("1,0,0,1").starts_with("false: reducible"));
    let witness = "1,0,0,0,1,1,1,1";
    assert!(run(witness).starts_with("false: rank deficit"));
}

#[test]
fn normal_tests() {
    let o = normbase(&["test", "normal", "--q", "2", "--n", "3", "--elem", "0,1"]);
    assert!(stdout(&o).starts_with("true"));
    let o = normbase(&["test", "normal", "--q", "2", "--n", "3", "--elem", "1"]);
    assert!(stdout(&o).starts_with("false"));
    let o = normbase(&["test", "normal", "--q", "2", "--modulus", "1,1,0,1", "--elem", "0,1"]);
    assert!(stdout(&o).starts_with("false: zero field trace"));
}

#[test]
fn witnesses() {
    let text = stdout(&normbase(&["witness", "--n", "7", "--q", "2"]));
    assert!(text.starts_with("x^7 + x^6 + x^5 + x^4 + 1 [1,0,0,0,1,1,1,1]"));
    assert!(stdout(&normbase(&["witness", "--n", "3", "--q", "2"])).starts_with("none"));
    assert!(stdout(&normbase(&["witness", "--n", "4", "--q", "2"])).starts_with("none"));
}
