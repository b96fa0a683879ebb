use std::process::{Command, Output};

use serde_json::Value as Json;

fn eumr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eumr")).args(args).output().unwrap()
}

fn json(out: &Output) -> Json {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn suslin_build_and_coords_round_trip() {
    let out = eumr(&["suslin", "build", "--r", "2", "--ring", "Zmod:15", "--v", "1,2,3", "--w", "4,5,-1"]);
    assert!(out.status.success());
    let m = json(&out);
    assert_eq!(m.as_array().unwrap().len(), 4);
    assert_eq!(m[0][0], "1");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let back = eumr(&["suslin", "coords", "--r", "2", "--ring", "Zmod:15", "--matrix", path.to_str().unwrap()]);
    assert!(back.status.success());
    assert_eq!(json(&back), serde_json::json!({ "v": ["1", "2", "3"], "w": ["4", "5", "14"] }));
}

#[test]
fn build_rejects_wrong_lengths() {
    let out = eumr(&["suslin", "build", "--r", "2", "--v", "1,2", "--w", "3,4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("entries"));
}

#[test]
fn gen_eval_and_phi() {
    let word = r#"[{"kind":"ei","i":2,"lambda":"l"},{"kind":"ei","i":2,"lambda":"l","wrap":"inv"}]"#;
    let eval = eumr(&["gen", "eval", "--r", "2", "--ring", "Poly:Q[l]", "--word", word]);
    assert!(eval.status.success());
    let m = json(&eval);
    for (i, row) in m.as_array().unwrap().iter().enumerate() {
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(x, if i == j { "1" } else { "0" });
        }
    }
    let truncated = r#"[{"kind":"ei*","i":2,"lambda":"l","wrap":"top"}]"#;
    let phi = eumr(&["phi", "--r", "2", "--ring", "Poly:Q[l]", "--word", truncated]);
    assert!(phi.status.success(), "{}", String::from_utf8_lossy(&phi.stderr));
    assert_eq!(json(&phi).as_array().unwrap().len(), 6);
}

#[test]
fn orbit_counts() {
    let out = eumr(&["orbit", "--modulus", "9", "--r", "1"]);
    assert!(out.status.success());
    let counts = json(&out);
    assert_eq!(counts["vectors"], 81);
    assert_eq!(counts["unimodular_total"], 81 - 9);
    assert_eq!(counts["orbit_of_e1"], 81 - 9);
    assert_eq!(eumr(&["orbit", "--modulus", "15", "--r", "4", "--budget", "10"]).status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let fx = dir.path().to_str().unwrap();
    let pass = eumr(&["check", "cor33", "--r", "2", "--fixtures", fx]);
    assert_eq!(pass.status.code(), Some(0));
    assert_eq!(json(&pass)["status"], "pass");

    let unsupported = eumr(&["check", "cor33", "--r", "1", "--fixtures", fx]);
    assert_eq!(unsupported.status.code(), Some(2));
    assert_eq!(json(&unsupported)["status"], "unsupported");

    assert_eq!(eumr(&["check", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(eumr(&["check", "orbit", "--ring", "Zmod:"]).status.code(), Some(2));

    let text = eumr(&["check", "lemma44", "--r", "1", "--text", "--fixtures", fx]);
    assert!(String::from_utf8_lossy(&text.stdout).starts_with("lemma44"));
}

#[test]
fn a_tampered_fixture_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_eumr"))
            .args(["check", "orbit", "--r", "1", "--ring", "Zmod:9"])
            .env("EUMR_FIXTURES", dir.path())
            .output()
            .unwrap()
    };
    assert_eq!(run().status.code(), Some(0));
    let path = dir.path().join("orbit-zmod9-r1.json");
    let tampered = std::fs::read_to_string(&path).unwrap().replace("\"vectors\": 81", "\"vectors\": 80");
    std::fs::write(&path, tampered).unwrap();
    let out = run();
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["status"], "fail");
    assert_eq!(report["counterexamples"][0]["inputs"], "orbit-zmod9-r1");
}
