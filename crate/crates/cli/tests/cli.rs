use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affine-fk"))
        .args(args)
        .env_remove("AFFINE_FK_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

#[test]
fn documented_examples() {
    let cubic = ok(&["compute", "schubert", "--n", "3", "--word", "2,1,0", "--format", "text"]);
    assert_eq!(cubic.trim(), "(1/2)p[2,1] + (1/6)p[1,1,1]");
    let ks = ok(&["compute", "kschur", "--n", "3", "--partition", "2", "--format", "text"]);
    assert_eq!(ks.trim(), "(1/2)p[2] + (1/2)p[1,1]");
    let st = ok(&[
        "compute",
        "structure",
        "--n",
        "2",
        "--u",
        "0",
        "--v",
        "0",
        "--format",
        "text",
    ]);
    assert_eq!(st.trim(), "s_1s_0: 2");
    let json: serde_json::Value =
        serde_json::from_str(&ok(&["compute", "structure", "--n", "2", "--u", "0", "--v", "0"])).unwrap();
    assert_eq!(json["terms"][0]["word"], serde_json::json!([1, 0]));
    assert_eq!(json["terms"][0]["value"], "2");
}

#[test]
fn other_compute_kinds() {
    let f: serde_json::Value = serde_json::from_str(&ok(&[
        "compute", "stanley", "--n", "3", "--word", "1,0", "--basis", "p",
    ]))
    .unwrap();
    assert_eq!(f["basis"], "p");
    let a = ok(&[
        "compute",
        "affschur",
        "--n",
        "3",
        "--partition",
        "2,1",
        "--format",
        "text",
    ]);
    assert!(a.contains("m["), "{a}");
    let r: serde_json::Value = serde_json::from_str(&ok(&[
        "compute",
        "ribbons",
        "--n",
        "4",
        "--word",
        "1,2,3,1,0",
        "--m",
        "3",
    ]))
    .unwrap();
    assert!(r.as_array().unwrap().iter().any(|c| c["sign"] == -1 || c["sign"] == 1));
    let t: serde_json::Value = serde_json::from_str(&ok(&[
        "compute", "ribbons", "--n", "3", "--word", "1,0", "--weight", "1,1",
    ]))
    .unwrap();
    assert_eq!(t.as_array().unwrap().len(), 1);
    let by_window = ok(&[
        "compute", "schubert", "--n", "3", "--window", "-1,1,6", "--format", "text",
    ]);
    assert_eq!(by_window.trim(), "(1/2)p[2,1] + (1/6)p[1,1,1]");
}

#[test]
fn exit_codes() {
    // Usage errors.
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "schubert", "--word", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["compute", "schubert", "--n", "3", "--word", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["compute", "kschur", "--n", "3", "--partition", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["compute", "schubert", "--n", "3", "--word", "0", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["cache", "list"]).status.code(), Some(2));
    // Bounds name the offending flag.
    let o = run(&["verify", "main-theorem", "--n", "4", "--max-length", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-length"));
    let o = run(&["compute", "schubert", "--n", "3", "--word", "0,1,2,0,1,2,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-length"));
    let o = run(&["compute", "schubert", "--n", "9", "--word", "0"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--n"));
    assert_eq!(run(&["verify", "h-shift", "--threads", "0"]).status.code(), Some(2));
    // Passing suite.
    assert_eq!(run(&["verify", "schubert-table"]).status.code(), Some(0));
}

#[test]
fn verify_report_is_json() {
    let out = ok(&["verify", "dimensions", "--n", "4", "--max-degree", "5"]);
    let report: affine_fk_cli::report::VerificationReport = serde_json::from_str(&out).unwrap();
    assert!(report.passed);
    assert_eq!(report.suite, "dimensions");
    assert_eq!(report.parameters.n, vec![4]);
    assert_eq!(report.checks.len(), 2);
}

fn without_timing(s: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

#[test]
fn output_is_independent_of_threads_and_runs() {
    let args = ["compute", "schubert", "--n", "4", "--word", "3,1,2,0"];
    let one = ok(&[&args[..], &["--threads", "1"]].concat());
    let four = ok(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one, four);
    assert_eq!(one, ok(&args));
    let v = ["verify", "chevalley", "--n", "3", "--max-length", "4"];
    let a = ok(&[&v[..], &["--threads", "1"]].concat());
    let b = ok(&[&v[..], &["--threads", "3"]].concat());
    assert_eq!(without_timing(&a), without_timing(&b));
}

fn with_cache(dir: &Path, args: &[&str]) -> String {
    ok(&[args, &["--cache-dir", dir.to_str().unwrap()]].concat())
}

#[test]
fn cache_on_and_off_agree() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["compute", "schubert", "--n", "3", "--word", "2,1,0,2"][..],
        &["compute", "schubert", "--n", "4", "--word", "1,0"][..],
        &["compute", "kschur", "--n", "4", "--partition", "3,2,1", "--basis", "s"][..],
    ] {
        let plain = ok(args);
        let cold = with_cache(dir.path(), args);
        let warm = with_cache(dir.path(), args);
        assert_eq!(plain, cold, "{args:?}");
        assert_eq!(plain, warm, "{args:?}");
    }
    let listed = with_cache(dir.path(), &["cache", "list", "--format", "text"]);
    assert_eq!(listed.lines().count(), 3, "{listed}");
}

#[test]
fn cache_commands() {
    let dir = tempfile::tempdir().unwrap();
    with_cache(dir.path(), &["cache", "warm", "--n", "3", "--max-length", "3"]);
    let check: serde_json::Value = serde_json::from_str(&with_cache(dir.path(), &["cache", "check"])).unwrap();
    assert_eq!(check.as_array().unwrap().len(), 4 + 3);
    assert!(check.as_array().unwrap().iter().all(|r| r["status"] == "ok"));
    // Tamper with one payload.
    let target = dir.path().join("schubert-n3-d2.json");
    let text = std::fs::read_to_string(&target).unwrap().replace("\"1/2\"", "\"1/3\"");
    std::fs::write(&target, text).unwrap();
    let o = run(&["cache", "check", "--cache-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!target.exists());
    assert!(dir.path().join("quarantine").join("schubert-n3-d2.json.0").exists());
    let cleared = with_cache(dir.path(), &["cache", "clear", "--format", "text"]);
    assert!(cleared.contains("\"removed\":6"), "{cleared}");
}
