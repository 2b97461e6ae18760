use std::process::{Command, Output};

fn qvir(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qvir")).args(args).env("QVIR_CACHE_DIR", cache).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn passing_run_exits_zero_with_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = qvir(&["kac", "--n", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "kac");
    assert_eq!(v["summary"]["failed"], 0);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["schema_version", "tool_version", "command", "config", "summary", "checks", "data"]);
}

#[test]
fn perturbed_relation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = qvir(&["kac", "--n", "2", "--perturb-f1", "1/7"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["summary"]["failed"].as_u64().unwrap() > 0);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["nope"][..], &["kac"], &["kac", "--n", "99"], &["gram", "--n", "2", "--weight", "x"], &["kac", "--n", "1", "--perturb-f1", "a/b"]] {
        assert_eq!(qvir(args, dir.path()).status.code(), Some(2), "{:?}", args);
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify-agt", "--n", "5", "--mode", "modular", "--seed", "9"];
    let a = qvir(&args, dir.path());
    let b = qvir(&args, dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("qvir.toml");
    std::fs::write(&cfg, "seed = 42\nformat = \"text\"\n[bounds]\nkac = 1\n").unwrap();
    let c = cfg.to_str().unwrap();
    let out = qvir(&["--config", c, "kac", "--n", "2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = qvir(&["--config", c, "kac", "--n", "1"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("kac"));
    let out = qvir(&["--config", c, "--format", "json", "--seed", "3", "kac", "--n", "1"], dir.path());
    assert_eq!(json(&out)["config"]["seed"], 3);
    std::fs::write(&cfg, "bogus = 1\n").unwrap();
    assert_eq!(qvir(&["--config", c, "kac", "--n", "1"], dir.path()).status.code(), Some(2));
}

#[test]
fn gram_is_cached_under_env_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = qvir(&["gram", "--n", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let again = qvir(&["gram", "--n", "2"], dir.path());
    assert_eq!(json(&out)["checks"], json(&again)["checks"]);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = qvir(&["classify", "--P", "2", "--Q", "3", "--sign", "+", "-o", path.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["command"], "classify");
}
