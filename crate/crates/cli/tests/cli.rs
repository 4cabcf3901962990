use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn oligoforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oligoforge"))
        .args(args)
        .env_remove("OLIGOFORGE_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fold_reports_table_and_structure() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", "GCGCCCCGC\n\nGAGGGTTTT\n");
    let out = oligoforge(&["fold", "--input", &input]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("energy\t-6"));
    assert!(text.contains("structure\tyes"));
    assert!(text.contains("dot-bracket\t(((...)))"));
    assert!(text.contains("pairs\t(1,9) (2,8) (3,7)"));
    assert!(text.contains("   G   0  -2  -2  -4  -4  -4  -4  -6  -6"));
    assert!(text.contains("energy\t-1"));
    assert!(text.contains("structure\tno (threshold -2)"));
}

#[test]
fn fold_json_and_csv() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", "GCGCCCCGC\n");
    let out = oligoforge(&["fold", "--input", &input, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["energy"], -6);
    assert_eq!(v[0]["has_structure"], true);
    assert_eq!(v[0]["table"][0][8], -6);
    assert!(v[0]["table"][2][0].is_null());

    let out = oligoforge(&["fold", "--input", &input, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l == "G,0,-2,-2,-4,-4,-4,-4,-6,-6"));
}

#[test]
fn fold_threshold_and_energy_flags() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", "GAGGGTTTT\n");
    let out = oligoforge(&["fold", "--input", &input, "--threshold", "-1"]);
    assert!(stdout(&out).contains("structure\tyes (threshold -1)"));
    let out = oligoforge(&["fold", "--input", &input, "--alpha-at", "-3"]);
    assert!(stdout(&out).contains("energy\t-3"));
    let out = oligoforge(&["fold", "--input", &input, "--alpha-at", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fold_empty_file_is_ok() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "empty.txt", "\n# nothing\n");
    let out = oligoforge(&["fold", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
}

#[test]
fn bad_input_is_a_data_error() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad.txt", "ACGT\nACXT\n");
    let out = oligoforge(&["fold", "--input", &input]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    let out = oligoforge(&["fold", "--input", "/nonexistent/file"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(oligoforge(&["fold"]).status.code(), Some(1));
    assert_eq!(oligoforge(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(oligoforge(&["count", "--predicate", "nope"]).status.code(), Some(1));
    assert_eq!(oligoforge(&["--help"]).status.code(), Some(0));
}

#[test]
fn screen_splits_accepted_and_rejected() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", "GCGCCCCGC\nGGGAGAA\nTGGCTCA\nAAAAAAA\n");
    let rejects = dir.path().join("rejects.tsv");
    let out = oligoforge(&[
        "screen", "--input", &input, "--threshold", "-2", "--max-mu", "1", "-s", "1",
        "--rejects", path_str(&rejects),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "GGGAGAA\nAAAAAAA\n");
    let log = fs::read_to_string(&rejects).unwrap();
    let lines: Vec<&str> = log.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("1\tGCGCCCCGC\t"));
    assert!(lines[0].contains("mu_1 "));
    assert!(lines[0].contains("energy -6 <= -2"));
    assert!(lines[1].starts_with("3\tTGGCTCA\tenergy -5"));
}

#[test]
fn screen_gc_window_and_linear_model() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", "GGGAGAA\nAAAAAAA\nGCGCGCG\n");
    let out = oligoforge(&["screen", "--input", &input, "-w", "4"]);
    assert_eq!(stdout(&out), "GGGAGAA\n");
    assert!(stderr(&out).contains("GC 0 outside [4,4]"));

    let out = oligoforge(&["screen", "--input", &input, "--linear-threshold", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "GGGAGAA\nAAAAAAA\n");
    assert!(stderr(&out).contains("linear energy"));

    let out = oligoforge(&["screen", "--input", &input, "--linear-threshold", "x"]);
    assert_eq!(out.status.code(), Some(1));
    let out = oligoforge(&["screen", "--input", &input, "--linear-threshold", "-1", "--gammas", "1,2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumerate_matches_known_counts() {
    let out = oligoforge(&["enumerate", "-s", "2", "-n", "5", "--oracle"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let g: Vec<&str> = text.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(g, ["4", "12", "28", "68", "164"]);
    assert!(text.lines().skip(1).all(|l| l.ends_with("\ttrue")));

    let out = oligoforge(&["enumerate", "--mu1", "-n", "2", "--oracle"]);
    assert!(stdout(&out).contains("2\t1\t4\t4\ttrue"));
    let out = oligoforge(&["enumerate", "--gc", "-n", "2", "-w", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[1]["n"], 2);
    assert_eq!(v[1]["w"], 1);
    assert_eq!(v[1]["count"], 8);
}

#[test]
fn oracle_cap_is_enforced() {
    let out = oligoforge(&["enumerate", "-n", "13", "--oracle"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("13"));
    let out = Command::new(env!("CARGO_BIN_EXE_oligoforge"))
        .args(["count", "-n", "3"])
        .env("OLIGOFORGE_ORACLE_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gf_table_and_growth() {
    let series = oligoforge(&["gf", "-s", "3", "-n", "12"]);
    let recurrence = oligoforge(&["enumerate", "-s", "3", "-n", "12"]);
    assert_eq!(stdout(&series), stdout(&recurrence));

    let out = oligoforge(&["gf", "-s", "2", "-n", "30", "--growth", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rho = v["rho"].as_f64().unwrap();
    assert!((rho - (1.0 + 2f64.sqrt())).abs() < 1e-8);
    assert!((v["ratio"].as_f64().unwrap() - rho).abs() < 1e-8);

    let out = oligoforge(&["gf", "-s", "1", "-n", "8", "--growth"]);
    assert!(stdout(&out).contains("rho\t3"));
}

#[test]
fn count_predicates() {
    let run = |args: &[&str]| {
        let out = oligoforge(args);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        stdout(&out).lines().nth(1).unwrap().rsplit('\t').next().unwrap().to_string()
    };
    assert_eq!(run(&["count", "-n", "5", "-s", "2"]), "164");
    assert_eq!(run(&["count", "-n", "2", "--predicate", "mu1", "-m", "1"]), "4");
    assert_eq!(run(&["count", "-n", "2", "--predicate", "gc-mu1", "-w", "1"]), "8");
    assert_eq!(run(&["count", "-n", "3", "--predicate", "gc", "-w", "0"]), "8");
    assert_eq!(run(&["count", "-n", "6", "--predicate", "boundary"]), "252");
}

#[test]
fn construct_writes_code_and_sidecars() {
    let dir = TempDir::new().unwrap();
    let code = dir.path().join("code.txt");
    let out = oligoforge(&["construct", "-m", "3", "--generator", "1110100", "--output", path_str(&code)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let words: Vec<String> = fs::read_to_string(&code).unwrap().lines().map(String::from).collect();
    assert_eq!(words.len(), 49);
    assert!(words.iter().any(|w| w == "TGGCTCA"));
    assert!(words.iter().any(|w| w == "GGGAGAA"));

    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("code.txt.json")).unwrap()).unwrap();
    assert_eq!(meta["size"], 49);
    assert_eq!(meta["gc_content"], 4);
    assert_eq!(meta["min_distance"], 4);
    assert_eq!(meta["generator"], "1110100");
    let report = fs::read_to_string(dir.path().join("code.txt.report.txt")).unwrap();
    assert!(!report.contains("FAIL"));

    let out = oligoforge(&["verify", "--input", path_str(&code), "-m", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn construct_rejects_bad_generators() {
    let out = oligoforge(&["construct", "-m", "3", "--generator", "1111111"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("simplex"));
    let out = oligoforge(&["construct", "-m", "3", "--generator", "0101"]);
    assert_eq!(out.status.code(), Some(3));
    let out = oligoforge(&["construct", "-m", "3", "--generator", "11a"]);
    assert_eq!(out.status.code(), Some(1));
    let out = oligoforge(&["construct", "-m", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn construct_small_dimension() {
    let out = oligoforge(&["construct", "-m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 9);
    assert!(text.lines().all(|l| l.len() == 3));
}

#[test]
fn construct_is_deterministic_across_strategies() {
    let a = oligoforge(&["construct", "-m", "5"]);
    let b = oligoforge(&["--sequential", "construct", "-m", "5"]);
    let c = oligoforge(&["construct", "-m", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(stdout(&a).lines().count(), 961);
}

#[test]
fn verify_flags_violations() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "code.txt", "GGGAGAA\nGGGAGAA\nAAAAAAA\n");
    let out = oligoforge(&["verify", "--input", &input, "-m", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("FAIL\tdistinct"));
    assert!(text.contains("FAIL\tgc_content"));

    let out = oligoforge(&["verify", "--input", &input, "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["duplicates"], 1);

    let ragged = write(&dir, "ragged.txt", "ACGT\nACG\n");
    let out = oligoforge(&["verify", "--input", &ragged]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", "GAGGGTTTT\n");
    let config = write(&dir, "run.conf", &format!("# defaults\ninput = {input}\nthreshold = -1\n"));
    let out = oligoforge(&["--config", &config, "fold"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("structure\tyes (threshold -1)"));

    let out = oligoforge(&["--config", &config, "fold", "--threshold", "-2"]);
    assert!(stdout(&out).contains("structure\tno (threshold -2)"));

    let bad = write(&dir, "bad.conf", "colour = blue\n");
    assert_eq!(oligoforge(&["--config", &bad, "fold"]).status.code(), Some(1));
}

#[test]
fn screen_accepts_whole_simplex_code() {
    let dir = TempDir::new().unwrap();
    let code = dir.path().join("code.txt");
    let out = oligoforge(&["construct", "-m", "3", "--output", path_str(&code)]);
    assert_eq!(out.status.code(), Some(0));
    let out = oligoforge(&["screen", "--input", path_str(&code), "--max-mu", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), fs::read_to_string(&code).unwrap());
    assert!(stderr(&out).is_empty());

    let input = write(&dir, "a.txt", "AAAA\n");
    let out = oligoforge(&["screen", "--input", &input, "--gc-min", "3", "--gc-max", "4"]);
    assert!(stdout(&out).is_empty());
    assert_eq!(stderr(&out), "1\tAAAA\tGC 0 outside [3,4]\n");
}
