use std::process::{Command, Output};

use ncps::verifier::{verify_paper, VerifyConfig, CHECK_IDS};
use serde_json::Value;

fn ncps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncps")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).unwrap()
}

#[test]
fn golden_text_outputs() {
    let out = ncps(&["comm", "x", "p^2/(2*m)"]);
    assert_eq!((out.status.code(), stdout(&out)), (Some(0), "i*hbar*m^-1*p\n"));
    let out = ncps(&["comm", "x", "x"]);
    assert_eq!((out.status.code(), stdout(&out)), (Some(0), "0\n"));
    let out = ncps(&["evolve", "--observable", "x", "--hamiltonian", "p^2/(2*m)", "--order", "3"]);
    assert_eq!((out.status.code(), stdout(&out)), (Some(0), "x\nm^-1*p\n0\n0\n"));
    let out = ncps(&["normalize", "p*x"]);
    assert_eq!(stdout(&out), "x*p - i*hbar\n");
    assert!(out.stderr.is_empty());
}

#[test]
fn expressions_from_file() {
    let dir = std::env::temp_dir().join(format!("ncps-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("exprs.txt");
    std::fs::write(&path, "p*x\n\n(x + p)^2\n").unwrap();
    let out = ncps(&["normalize", "--file", path.to_str().unwrap()]);
    assert_eq!(stdout(&out), "x*p - i*hbar\nx^2 + 2*x*p + p^2 - i*hbar\n");

    std::fs::write(&path, "x\np^2/(2*m)\n").unwrap();
    let out = ncps(&["comm", "--file", path.to_str().unwrap()]);
    assert_eq!(stdout(&out), "i*hbar*m^-1*p\n");

    std::fs::write(&path, "x\np^2/(2*\n").unwrap();
    let out = ncps(&["comm", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("exprs.txt:2") && err.contains('^'), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_code_contract() {
    assert_eq!(ncps(&["normalize", "x +"]).status.code(), Some(2));
    assert_eq!(ncps(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ncps(&["--json", "--text", "normalize", "x"]).status.code(), Some(2));
    assert_eq!(ncps(&["oracle", "--check", "[x, p] == 0"]).status.code(), Some(1));
    assert_eq!(ncps(&["oracle", "--check", "[x, p] == i*hbar"]).status.code(), Some(0));
    let out = ncps(&["verify-paper", "--seed", "7", "--cases", "1", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty());
}

#[test]
fn json_outputs_follow_schema() {
    let out = ncps(&["normalize", "--json", "p*x/m"]);
    let v: Value = serde_json::from_str(stdout(&out)).unwrap();
    for term in v["terms"].as_array().unwrap() {
        assert!(term["a"].is_u64() && term["b"].is_u64());
        for c in term["coeff"].as_array().unwrap() {
            assert!(c["re"].as_str().unwrap().contains('/'));
            assert!(c["im"].as_str().unwrap().contains('/'));
            assert!(c["params"].as_object().unwrap().values().all(Value::is_i64));
        }
    }

    let out = ncps(&["verify-paper", "--json", "--seed", "3", "--cases", "2", "--degree", "2", "--oracle"]);
    let v: Value = serde_json::from_str(stdout(&out)).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["checks", "pass", "seed"]);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["pass"], true);
    for c in v["checks"].as_array().unwrap() {
        for k in c.as_object().unwrap().keys() {
            assert!(["id", "status", "detail", "oracle"].contains(&k.as_str()), "{k}");
        }
        assert_eq!(c["status"], "pass");
        assert!(c["oracle"]["max_deviation"].as_f64().unwrap() < 1e-8);
    }
}

#[test]
fn reports_are_deterministic_and_complete() {
    let cfg = VerifyConfig { seed: 99, degree_cap: 3, cases: 4, with_oracle: true };
    let a = verify_paper(&cfg).unwrap();
    let b = verify_paper(&cfg).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_text(), b.to_text());
    let ids: Vec<&str> = a.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, CHECK_IDS);

    let args = ["verify-paper", "--json", "--seed", "99", "--cases", "4", "--degree", "3"];
    assert_eq!(ncps(&args).stdout, ncps(&args).stdout);
    let other = ncps(&["verify-paper", "--json", "--seed", "100", "--cases", "4", "--degree", "3"]);
    assert_ne!(ncps(&args).stdout, other.stdout);
}
