use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tidapriori"))
        .current_dir(fixtures())
        .args(args)
        .output()
        .expect("failed to spawn binary")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed with {:?}:\n{}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn assert_golden(name: &str, args: &[&str]) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let actual = stdout(args);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "output of {args:?} differs from {name}");
}

#[test]
fn mine_worked_example_golden() {
    assert_golden(
        "mine_worked_example.txt",
        &["mine", "--input", "worked_example.txt", "--min-support", "3", "--variant", "improved", "--candidates", "combinations"],
    );
}

#[test]
fn mine_worked_example_machine_golden() {
    assert_golden(
        "mine_worked_example.json",
        &["mine", "--input", "worked_example.txt", "--min-support", "3", "--candidates", "combinations", "--format", "machine"],
    );
}

#[test]
fn rules_worked_example_golden() {
    assert_golden(
        "rules_worked_example.txt",
        &["rules", "--input", "worked_example.txt", "--min-support", "3", "--min-confidence", "0.6"],
    );
}

#[test]
fn compare_worked_example_golden() {
    assert_golden(
        "compare_worked_example.json",
        &["compare", "--input", "worked_example.txt", "--min-support", "3", "--candidates", "combinations", "--format", "machine", "--no-timing"],
    );
}

#[test]
fn compare_human_sum_row() {
    let text = stdout(&["compare", "--input", "worked_example.txt", "--min-support", "3", "--candidates", "combinations", "--reps", "1"]);
    let sum = text.lines().find(|l| l.starts_with("sum")).unwrap();
    assert!(sum.ends_with("135 / 84"), "{sum}");
    assert!(text.contains("time reduction rate"));
}

#[test]
fn rules_confidence_one_only_keeps_exact_rules() {
    let text = stdout(&["rules", "--input", "worked_example.txt", "--min-support", "3", "--min-confidence", "1.0"]);
    let rules: Vec<&str> = text.lines().filter(|l| l.contains("=>")).collect();
    assert_eq!(rules, vec!["I4 => I2 (support 3, confidence 1.00)"]);
}

#[test]
fn empty_file_has_no_itemsets() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.txt");
    std::fs::write(&path, "").unwrap();
    let text = stdout(&["mine", "--input", path.to_str().unwrap(), "--min-support", "1"]);
    assert!(text.contains("0 frequent itemsets"), "{text}");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["mine", "--input", "worked_example.txt", "--min-support", "0"]), Some(2));
    assert_eq!(code(&["mine", "--input", "worked_example.txt", "--min-support", "3", "--variant", "fast"]), Some(2));
    assert_eq!(code(&["mine", "--min-support", "3"]), Some(2));
    assert_eq!(
        code(&["rules", "--input", "worked_example.txt", "--min-support", "3", "--min-confidence", "1.0001"]),
        Some(2)
    );
    assert_eq!(code(&["mine", "--input", "no-such-file.txt", "--min-support", "3"]), Some(1));
    assert_eq!(code(&["mine", "--input", "worked_example.txt", "--min-support", "3"]), Some(0));
}

#[test]
fn machine_output_ignores_thread_count() {
    let args = |threads: &'static str| {
        vec!["compare", "--generate", "400,30,5", "--seed", "5", "--min-support", "0.05", "--format", "machine", "--no-timing", "--threads", threads]
    };
    let reference = stdout(&args("1"));
    for threads in ["1", "3", "8"] {
        assert_eq!(stdout(&args(threads)), reference);
    }
    let mine = |threads| stdout(&["mine", "--generate", "400,30,5", "--min-support", "0.05", "--format", "machine", "--threads", threads]);
    assert_eq!(mine("1"), mine("4"));
}

#[test]
fn compare_same_variant_reduces_nothing() {
    let text = stdout(&["compare", "--input", "worked_example.txt", "--min-support", "3", "--variant", "classic", "--reps", "1"]);
    assert!(text.contains("time reduction rate   0.00%"), "{text}");
}

#[test]
fn compare_sweep_emits_one_report_per_threshold() {
    let text = stdout(&[
        "compare", "--generate", "300,40,5", "--min-support", "0.02,0.04,0.06,0.08,0.10", "--format", "machine", "--no-timing",
    ]);
    let records: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let thresholds: Vec<u64> = records.iter().map(|r| r["min_support"].as_u64().unwrap()).collect();
    // ceil(fraction * 300)
    assert_eq!(thresholds, vec![6, 12, 18, 24, 30]);
}

#[test]
fn bench_rows_and_mean() {
    let mut args = vec!["bench", "--min-support", "0.1", "--reps", "1", "--format", "human"];
    for size in ["555,30,4", "900,30,4", "1230,30,4", "2360,30,4", "3000,30,4"] {
        args.extend(["--generate", size]);
    }
    let text = stdout(&args);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7, "{text}");
    assert!(lines[6].starts_with("mean"));

    let single = stdout(&["bench", "--generate", "555,30,4", "--min-support", "0.1", "--reps", "1", "--format", "machine"]);
    let records: Vec<serde_json::Value> = single.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 2);
    assert_eq!(records[1]["mean_reduction_rate_percent"], records[0]["reduction_rate_percent"]);
}

#[test]
fn repetitions_do_not_change_scan_counts() {
    let ledgers = |reps| {
        let text = stdout(&["bench", "--generate", "555,30,4", "--min-support", "0.05", "--reps", reps, "--format", "machine"]);
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        first["variants"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v["per_level_scans"].clone())
            .collect::<Vec<_>>()
    };
    assert_eq!(ledgers("1"), ledgers("5"));
}
