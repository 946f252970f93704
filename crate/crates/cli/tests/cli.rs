use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tambara"));
    for var in ["TAMBARA_SECTION_CAP", "TAMBARA_SYM_DEGREE_CAP", "TAMBARA_EXPONENTIAL_CAP", "TAMBARA_ENUMERATION_CAP", "TAMBARA_COEFFICIENT_CAP"] {
        c.env_remove(var);
    }
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn group_subgroups_of_s3() {
    let out = run(&["group", "subgroups", "S3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 6);
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
}

#[test]
fn group_file_and_malformed_table() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "c2.json", r#"{"order":2,"mult":[[0,1],[1,0]]}"#);
    let out = run(&["group", "validate", s(&good)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["order"], 2);
    let bad = write(dir.path(), "bad.json", r#"{"order":2,"mult":[[0,1],[1,1]]}"#);
    let out = run(&["group", "validate", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let garbage = write(dir.path(), "junk.json", "{");
    assert_eq!(run(&["group", "validate", s(&garbage)]).status.code(), Some(2));
}

#[test]
fn gset_commands() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.json", r#"{"group":"C2","size":3,"action":[[0,1,2],[1,0,2]]}"#);
    let out = run(&["gset", "orbits", s(&x)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["orbits"].as_array().unwrap().len(), 2);

    let free = r#"{"group":"C2","orbits":[[0]]}"#;
    let pt = r#"{"group":"C2","orbits":[[0,1]]}"#;
    let i = write(dir.path(), "i.json", &format!(r#"{{"source":{free},"target":{pt},"values":[0,0]}}"#));
    let j = write(dir.path(), "j.json", &format!(r#"{{"source":{pt},"target":{pt},"values":[0]}}"#));
    let out = run(&["gset", "depprod", "--i", s(&i), "--j", s(&j)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    // sections of the free orbit over a point: the free orbit itself
    assert_eq!(v["pi"]["size"], 2);

    let out = run(&["gset", "pullback", "--f", s(&i), "--g", s(&i)]);
    assert_eq!(json(&out)["object"]["size"], 4);

    let out = run(&["--section-cap", "1", "gset", "depprod", "--i", s(&i), "--j", s(&j)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));

    let out = bin().env("TAMBARA_SECTION_CAP", "1").args(["gset", "depprod", "--i", s(&i), "--j", s(&j)]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_lemmas_is_seeded() {
    let args = ["gset", "check-lemmas", "--group", "C2", "--count", "20", "--seed", "5"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, run(&args).stdout);
    assert_eq!(json(&a)["lemmas"][3]["passed"], 20);
}

#[test]
fn tambara_commands() {
    let dir = tempfile::tempdir().unwrap();
    let c2 = write(dir.path(), "c2.json", r#"{"order":2,"mult":[[0,1],[1,0]]}"#);
    let t = write(dir.path(), "freeorbit.json", r#"{"size":2,"action":[[0,1],[1,0]]}"#);
    let out = run(&["tambara", "verify", "--group", s(&c2), "--t", s(&t), "-k", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["passed"], true);
    let out = run(&["tambara", "verify", "--group", "C2", "--t", s(&t), "-k", "2", "--corrupt"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["tambara", "ranks", "--group", "C2", "--t", s(&t)]);
    let v = json(&out);
    assert_eq!(v["levels"][0]["ranks"], serde_json::json!([1, 2, 3]));
    for cmd in ["iso0", "iso1"] {
        let out = run(&["tambara", cmd, "--group", "C2", "--t", s(&t)]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["commutes"], true);
    }
    let out = run(&["tambara", "res-compat", "--group", "C2", "--t", s(&t), "--subgroup", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["tambara", "res-compat", "--group", "C2", "--t", s(&t), "--subgroup", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["tambara", "basis", "--group", "C2", "--t", s(&t), "-n", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("index,degree,label\n"));
    assert_eq!(text.lines().count(), 1 + 3);
}

#[test]
fn xi_commands() {
    let out = run(&["xi", "family", "--n", "2"]);
    assert_eq!(json(&out)["count"], 3);
    let out = run(&["xi", "surjectivity", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["all_verified"], true);
    assert_eq!(run(&["xi", "check", "--n", "3"]).status.code(), Some(0));
    assert_eq!(run(&["xi", "check", "--n", "3", "--corrupt"]).status.code(), Some(1));
}

#[test]
fn green_commands() {
    let out = run(&["green", "obstruct", "-p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["no_structure"], true);
    let out = run(&["green", "enumerate", "-p", "2", "-s", "2", "-D", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let cands: Vec<&str> = v["candidates"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    for m in ["x1^2", "x1*x2", "x2^2"] {
        assert!(cands.contains(&m), "{m} missing from {cands:?}");
    }
    assert_eq!(run(&["green", "obstruct", "-p", "4"]).status.code(), Some(2));
}

#[test]
fn tnr_eval() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = write(
        dir.path(),
        "ctx.json",
        r#"{"group":"C2","generator":"T",
            "sets":{"T":{"orbits":[[0]]},"U":{"orbits":[[0]]},"V":{"orbits":[[0]]},"X":{"orbits":[[0,1]]}},
            "maps":{"i":{"source":"U","target":"T","values":[1,0]},
                    "j":{"source":"U","target":"V","values":[0,1]},
                    "k":{"source":"V","target":"X","values":[0,0]}}}"#,
    );
    let out = run(&["tnr", "eval", "--ctx", s(&ctx), "t[k] n[j] r[i] theta"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["level"], "X");
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    assert_eq!(v["terms"][0]["coefficient"], 1);
    assert_eq!(v["bispan"]["u"]["size"], 2);

    let mut child = bin()
        .args(["tnr", "eval", "--ctx", s(&ctx)])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"r[id] theta\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(json(&out)["level"], "T");

    assert_eq!(run(&["tnr", "eval", "--ctx", s(&ctx), "t[k] theta"]).status.code(), Some(2));
    assert_eq!(run(&["tnr", "eval", "--ctx", s(&ctx), "t[k theta"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["xi", "surjectivity", "--n", "3", "--format", "json"]);
    let b = run(&["xi", "surjectivity", "--n", "3", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let t = run(&["xi", "family", "--n", "2", "--format", "text"]);
    assert!(String::from_utf8(t.stdout).unwrap().starts_with("h "));
}
