use std::path::PathBuf;
use std::process::{Command, Output};

fn voakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_voakit"))
        .args(args)
        .env("VOAKIT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("voakit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn without_timing(json: &str) -> String {
    json.lines()
        .filter(|l| !l.trim_start().starts_with("\"millis\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn passing_suite_exits_zero_and_reruns_identically() {
    let (a, b) = (scratch("a.json"), scratch("b.json"));
    for path in [&a, &b] {
        let out = voakit(&[
            "verify",
            "--suite",
            "left-right",
            "--m",
            "0..1",
            "--n",
            "0..1",
            "--report",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    }
    let (ja, jb) = (
        std::fs::read_to_string(&a).unwrap(),
        std::fs::read_to_string(&b).unwrap(),
    );
    assert!(ja.contains("\"verdict\": \"PASS\""));
    assert_eq!(without_timing(&ja), without_timing(&jb));
}

#[test]
fn injected_failure_carries_a_witness() {
    let path = scratch("fail.json");
    let out = voakit(&[
        "verify",
        "--suite",
        "kernel-identity",
        "--inject-fail",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let json = std::fs::read_to_string(&path).unwrap();
    assert!(json.contains("\"FAIL\""));
    assert!(json.contains("\"witness\": {"));
}

#[test]
fn truncated_margin_is_inconclusive() {
    let out = voakit(&["verify", "--suite", "zhu-algebra", "--margin", "0", "--n", "1..1"]);
    assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("INCONCLUSIVE_AT_CUTOFF"));
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(code(&voakit(&["verify", "--suite", "no-such-suite"])), 3);
    assert_eq!(code(&voakit(&["verify", "--bogus"])), 3);
    assert_eq!(code(&voakit(&["compute", "star x h h"])), 3);
    assert_eq!(code(&voakit(&["table", "--kind", "nope"])), 3);
    assert_eq!(code(&voakit(&["verify", "--suite", "oracle", "--m", "3..1"])), 3);
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let cfg = scratch("suite.conf");
    std::fs::write(&cfg, "# comment\nsuite = no-such-suite\nm = 0..1\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(code(&voakit(&["verify", "--config", c])), 3);
    assert_eq!(
        code(&voakit(&["verify", "--config", c, "--suite", "kernel-identity"])),
        0
    );
}

#[test]
fn compute_and_table_print_values() {
    let out = voakit(&["compute", "star 0 h h"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "(1) a(-1)^2|0>");
    let out = voakit(&["table", "--kind", "omega-dims", "--n", "0..1", "--csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "n,cutoff,bound,dim\n0,6,6,1\n1,6,6,2\n"
    );
}
