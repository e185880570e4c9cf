use std::path::Path;
use std::process::{Command, Output};

use hypermap_cli::cache;
use hypermap_core::exactmath::rat;
use hypermap_core::fseries::FKey;

fn hypermap(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermap"))
        .args(args)
        .current_dir(cwd)
        .env_remove("HYPERMAP_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_formats() {
    let dir = tempfile::tempdir().unwrap();
    let o = hypermap(
        &["table", "--darts", "2", "--format", "csv", "-q"],
        dir.path(),
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "v,e,f,count\n1,1,2,1\n");

    let o = hypermap(&["table", "-r", "5", "--format", "walsh", "-q"], dir.path());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(3).collect();
    assert_eq!(rows.len(), 7);
    assert_eq!(
        rows[0].split_whitespace().collect::<Vec<_>>(),
        ["1", "1", "1", "|", "8"]
    );
    assert_eq!(
        rows[6].split_whitespace().collect::<Vec<_>>(),
        ["1", "1", "5", "|", "1"]
    );

    let o = hypermap(&["table", "-r", "3", "--format", "json", "-q"], dir.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["darts"], 3);
    assert_eq!(v["total"], "13");
}

#[test]
fn default_cache_is_created_in_working_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = hypermap(&["table", "-r", "4"], dir.path());
    assert!(o.status.success());
    assert!(dir.path().join(".fcache").exists());
    let log = String::from_utf8(o.stderr).unwrap();
    assert!(log.contains("r=4: 20 points"), "{log}");
}

#[test]
fn warm_cache_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["table", "-r", "9", "--cache", "c.bin", "--format", "json"];
    let cold = hypermap(&args, dir.path());
    let warm = hypermap(&args, dir.path());
    assert_eq!(cold.stdout, warm.stdout);
    let log = String::from_utf8(warm.stderr).unwrap();
    assert!(log.contains("0 new F points"), "{log}");
}

#[test]
fn stale_cache_version_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.bin");
    let mut bytes = cache::encode(&[(FKey::new(1, 1, 1, 1), rat(999))]);
    bytes[4..8].copy_from_slice(&(cache::VERSION + 1).to_le_bytes());
    std::fs::write(&path, bytes).unwrap();
    let o = hypermap(&["verify", "-r", "3", "--cache", "c.bin"], dir.path());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_reports_first_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| std::fs::write(dir.path().join(name), text).unwrap();
    write("good.txt", "r=3\n1 1 1 1\n1 2 2 3\n1 1 3 1\n");
    write("wrong.txt", "r=3\n1 1 1 1\n1 2 2 4\n1 1 3 1\n");
    write("missing.txt", "r=3\n1 1 1 1\n1 2 2 3\n");
    write("extra.txt", "r=3\n1 1 1 1\n1 2 2 3\n1 1 3 1\n2 2 2 1\n");
    let verify = |file: &str| {
        hypermap(
            &["verify", "-r", "3", "--no-cache", "--reference", file],
            dir.path(),
        )
    };

    assert_eq!(verify("good.txt").status.code(), Some(0));
    let o = verify("wrong.txt");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "r=3: mismatch at (1,2,2): computed 3, expected 4\n"
    );
    let o = verify("missing.txt");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(1,1,3): computed 1, expected absent"));
    let o = verify("extra.txt");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(2,2,2): computed absent, expected 1"));
    assert_eq!(verify("nonexistent.txt").status.code(), Some(3));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| hypermap(args, dir.path()).status.code();
    assert_eq!(code(&["verify", "-r", "4", "--no-cache"]), Some(0));
    assert_eq!(code(&["verify", "-r", "9", "--no-cache"]), Some(2));
    assert_eq!(code(&["oracle", "-r", "3", "--no-cache"]), Some(0));
    assert_eq!(code(&["oracle", "-r", "12", "--no-cache"]), Some(2));
    assert_eq!(
        code(&["oracle", "-r", "7", "--cutoff", "8", "--no-cache"]),
        Some(0)
    );
    assert_eq!(code(&["table", "-r", "0"]), Some(2));
    assert_eq!(code(&["table", "-r", "3", "--format", "xml"]), Some(2));
}

#[test]
fn totals_output() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        stdout(&hypermap(&["totals", "--max", "1"], dir.path())),
        "1\n"
    );
    assert_eq!(
        stdout(&hypermap(&["totals", "--max", "5"], dir.path())),
        "1\n3\n13\n71\n461\n"
    );
}

#[test]
fn threads_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_hypermap"))
        .args(["table", "-r", "3", "--no-cache"])
        .current_dir(dir.path())
        .env("HYPERMAP_THREADS", "3")
        .output()
        .unwrap();
    assert!(String::from_utf8(o.stderr).unwrap().contains("3 workers"));
    let o = Command::new(env!("CARGO_BIN_EXE_hypermap"))
        .args(["table", "-r", "3", "--no-cache", "--threads", "2"])
        .current_dir(dir.path())
        .env("HYPERMAP_THREADS", "3")
        .output()
        .unwrap();
    assert!(String::from_utf8(o.stderr).unwrap().contains("2 workers"));
}
