use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chowla-lab"))
        .args(args)
        .env_remove("CHOWLA_LAB_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn verify_lemma3_passes() {
    let o = run(&["verify", "--suite", "lemma3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = json_lines(&o);
    assert!(!lines.is_empty());
    for l in &lines {
        assert!(l["checker"].as_str().unwrap().starts_with("lemma3."));
        assert_eq!(l["report"]["pass"], true);
    }
}

#[test]
fn verify_cube_on_sidon_reports_constants() {
    let o = run(&["--const", "c3=100", "verify", "--suite", "prop5.2", "--sets", "sidon:4"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["config"]["constants"]["c3"], 100.0);
    assert_eq!(lines[0]["report"]["constants_used"]["c3"], 100.0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["--tol", "0", "verify", "--suite", "lemma3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "lemma99"]).status.code(), Some(2));
    assert_eq!(run(&["kmin", "--set", "[1,2]"]).status.code(), Some(2));
    assert_eq!(run(&["brute", "--n", "2", "--M", "5", "--resume"]).status.code(), Some(2));
}

#[test]
fn kmin_of_two_cosine() {
    let o = run(&["kmin", "--set", "[-1,1]"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert!((v["min_norm"].as_f64().unwrap() - 2.0).abs() < 1e-8);
    assert!((v["cosine_min_norm"].as_f64().unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn brute_single_cosine() {
    let o = run(&["brute", "--n", "1", "--M", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,M,k_value,witness,radius,convention"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "1");
    assert!((row[2].parse::<f64>().unwrap() - 1.0).abs() < 1e-6);
    assert_eq!(row[3], "1");
}

#[test]
fn brute_is_deterministic() {
    let a = run(&["brute", "--n", "3", "--M", "12"]);
    let b = run(&["--jobs", "1", "brute", "--n", "3", "--M", "12"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn brute_cap_exits_3() {
    let o = run(&["brute", "--n", "3", "--M", "12", "--cap", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn brute_resume_matches_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let with_cache = |extra: &[&str]| {
        let mut args = vec!["brute", "--n", "3", "--M", "10"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_chowla-lab"))
            .args(&args)
            .env("CHOWLA_LAB_CACHE", dir.path())
            .output()
            .unwrap()
    };
    let fresh = run(&["brute", "--n", "3", "--M", "10"]);
    let first = with_cache(&[]);
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some());
    let resumed = with_cache(&["--resume"]);
    assert_eq!(resumed.status.code(), Some(0));
    assert_eq!(first.stdout, fresh.stdout);
    assert_eq!(resumed.stdout, fresh.stdout);
}

#[test]
fn report_summarises_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.jsonl");
    let o = run(&["--out", path.to_str().unwrap(), "verify", "--suite", "lemma3.2", "--sets", "random:2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let table = stdout(&o);
    let row = table.lines().find(|l| l.starts_with("lemma3.2")).unwrap();
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cols[1], cols[2]);
    assert_eq!(cols[3], "0");
}

#[test]
fn sidon_single_m() {
    let o = run(&["sidon", "--sidon", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["m"], 4);
    assert_eq!(v["report"]["pass"], true);
}
