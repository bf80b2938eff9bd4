use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ko-tables"))
        .args(args)
        .env_remove("KO_TABLES_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn wmax_lengths() {
    for (rank, len) in [("3", 10), ("4", 20), ("5", 35)] {
        let out = run(&["wmax", "--rank", rank]);
        assert!(out.status.success());
        assert!(stdout(&out).contains(&format!("length: {len}\n")), "{}", stdout(&out));
    }
    let out = stdout(&run(&["wmax", "--rank", "3"]));
    assert!(out.contains("y: s0s3s1s2\n"));
    assert!(out.contains("omega: (2, 2, 2)\n"));
}

#[test]
fn latex_table_for_a3() {
    let out = run(&["table", "--rank", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.ends_with("\\\\ \\hline")).count(), 8);
    assert!(text.contains("$s_{0}s_{3}s_{1}s_{2}$ & $\\left(3,\\,1,\\,-1,\\,-3\\right)$"));
}

#[test]
fn csv_and_json_agree_on_row_count() {
    let csv = stdout(&run(&["table", "--rank", "4", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 53);
    assert!(csv.lines().nth(1).unwrap().contains("\"(3, 3, 3, 3)\",20,1,31,52,"));
    let json = stdout(&run(&["table", "--rank", "4", "--format", "json"]));
    assert_eq!(json.matches("\"y_word\"").count(), 52);
}

#[test]
fn output_is_independent_of_thread_count() {
    let one = run(&["table", "--rank", "4", "--format", "csv", "--threads", "1"]);
    let three = run(&["table", "--rank", "4", "--format", "csv", "--threads", "3"]);
    assert_eq!(one.stdout, three.stdout);
    let again = run(&["table", "--rank", "4", "--format", "csv", "--threads", "1"]);
    assert_eq!(one.stdout, again.stdout);
}

#[test]
fn restricted_only_filters_rows() {
    let all = stdout(&run(&["table", "--rank", "4", "--format", "csv"]));
    let kept = stdout(&run(&["table", "--rank", "4", "--format", "csv", "--restricted-only"]));
    assert!(kept.lines().count() < all.lines().count());
    assert!(kept.contains("\"(2, 3, 3, 2)\""));
    assert!(!kept.contains("\"(5, 1, 3, 1)\""));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["table", "--rank", "3", "--p", "3"]).status.code(), Some(1));
    assert_eq!(run(&["table", "--rank", "0"]).status.code(), Some(1));
    assert_eq!(run(&["table", "--rank", "3", "--format", "xlsx"]).status.code(), Some(1));
    assert_eq!(run(&["table", "--rank", "3", "--p", "5"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--inject-fault", "nothing"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn io_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("out.tex");
    let out = run(&["table", "--rank", "3", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a3.csv");
    let out = run(&["table", "--rank", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 9);
}

#[test]
fn verify_passes_and_detects_faults() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));

    let out = run(&["verify", "--rank", "2", "--oracle-maxlen", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS oracle-bruhat A2: 11881 pairs"));

    let out = run(&["verify", "--inject-fault", "length"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let fresh = run(&["table", "--rank", "4", "--format", "csv"]);
    let cached = |d: &std::path::Path| {
        Command::new(env!("CARGO_BIN_EXE_ko-tables"))
            .args(["table", "--rank", "4", "--format", "csv"])
            .env("KO_TABLES_CACHE_DIR", d)
            .output()
            .unwrap()
    };
    let first = cached(dir.path());
    assert_eq!(first.stdout, fresh.stdout);
    let rows = dir.path().join("A4_p5.rows.jsonl");
    assert!(rows.exists());
    assert!(dir.path().join("A4_p5.ideal.jsonl").exists());
    assert!(!dir.path().join("A4_p5.partial.jsonl").exists());
    assert_eq!(cached(dir.path()).stdout, fresh.stdout);

    // a damaged cache is reported and rebuilt
    let text = fs::read_to_string(&rows).unwrap();
    fs::write(&rows, text.replacen("31", "32", 1)).unwrap();
    let rebuilt = cached(dir.path());
    assert!(rebuilt.status.success());
    assert_eq!(rebuilt.stdout, fresh.stdout);
    assert!(String::from_utf8_lossy(&rebuilt.stderr).contains("warning"));
}

#[test]
fn resumes_from_partial_progress() {
    let dir = tempfile::tempdir().unwrap();
    let fresh = run(&["table", "--rank", "4", "--format", "json"]);
    let cache = dir.path().to_str().unwrap();
    assert!(run(&["table", "--rank", "4", "--format", "json", "--cache", cache]).status.success());
    // turn the finished cache back into a half-finished run
    let rows_path = dir.path().join("A4_p5.rows.jsonl");
    let rows = fs::read_to_string(&rows_path).unwrap();
    let mut partial = String::from("{\"kind\":\"rows-partial\",\"version\":1,\"n\":4,\"p\":5}\n");
    for (i, line) in rows.lines().skip(1).enumerate().filter(|(i, _)| i % 2 == 0) {
        partial.push_str(&format!("{{\"index\":{i},\"row\":{line}}}\n"));
    }
    partial.push_str("{\"index\":");
    fs::write(dir.path().join("A4_p5.partial.jsonl"), partial).unwrap();
    fs::remove_file(&rows_path).unwrap();

    let resumed = run(&["table", "--rank", "4", "--format", "json", "--cache", cache]);
    assert!(resumed.status.success());
    assert_eq!(resumed.stdout, fresh.stdout);
    assert!(!dir.path().join("A4_p5.partial.jsonl").exists());
}
