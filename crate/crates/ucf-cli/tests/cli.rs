use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn golden(n: usize) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../ucf/tests/fixtures/golden_n{n}.jsonl"))
}

fn ucf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ucf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_reaches_regular_and_writes_a_trace() {
    let dir = tempfile::tempdir().unwrap();
    let o = ucf(&["run", "--config", path(&fixture("run_n6.json")), "--out", path(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("outcome=ReachedRegular cycles="));
    assert!(dir.path().join("trace.jsonl").exists());
}

#[test]
fn identical_runs_write_identical_traces() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = ucf(&["run", "--config", path(&fixture("run_n6.json")), "--seed", "99", "--adversary", "semisync", "--out", path(d.path())]);
        assert_eq!(o.status.code(), Some(0));
    }
    let ta = std::fs::read(a.path().join("trace.jsonl")).unwrap();
    let tb = std::fs::read(b.path().join("trace.jsonl")).unwrap();
    assert_eq!(ta, tb);
}

#[test]
fn scripted_run_follows_its_script() {
    let dir = tempfile::tempdir().unwrap();
    let o = ucf(&["run", "--config", path(&fixture("run_scripted.json")), "--out", path(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let trace = std::fs::read_to_string(dir.path().join("trace.jsonl")).unwrap();
    let first = trace.lines().nth(1).unwrap();
    assert!(first.contains(r#""robot":3"#) && first.contains("LookCompute"), "{first}");
}

#[test]
fn four_robots_exit_with_the_size_code() {
    let o = ucf(&["run", "--config", path(&fixture("run_n4.json"))]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn malformed_config_is_a_config_error() {
    let o = ucf(&["run", "--config", path(&fixture("malformed.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed.json"));
}

#[test]
fn unknown_flag_value_is_a_config_error() {
    let o = ucf(&["run", "--config", path(&fixture("run_n6.json")), "--adversary", "lazy"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn batch_prints_one_row_per_cell_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let o = ucf(&["batch", "--config", path(&fixture("batch_three.json")), "--out", path(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "n,adversary,runs,reached,success_rate,mean_cycles,max_cycles,zero_collisions");
    assert!(rows[1].starts_with("5,fullsync,3,3,1.0,"));
    assert!(rows[2].starts_with("6,semisync,3,3,1.0,"));
    assert!(rows[3].starts_with("9,async,3,3,1.0,"));
    assert!(rows[1..].iter().all(|r| r.ends_with(",true")));
    assert_eq!(std::fs::read_to_string(dir.path().join("batch.csv")).unwrap(), text);
    let again = ucf(&["batch", "--config", path(&fixture("batch_three.json"))]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn classify_names_the_class() {
    let o = ucf(&["classify", "--config", path(&fixture("snapshot_regular.json"))]);
    assert!(stdout(&o).contains(r#""class": "Regular""#));
    let o = ucf(&["classify", "--config", path(&fixture("snapshot_central.json"))]);
    assert!(stdout(&o).contains(r#""class": "Central""#));
}

#[test]
fn classify_echoes_the_supporting_polygon() {
    let o = ucf(&["classify", "--config", path(&fixture("snapshot_pre_regular.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class"], "PreRegular");
    let poly = v["polygon"].as_array().unwrap();
    assert_eq!(poly.len(), 6);
    for p in poly {
        let (x, y) = (p[0].as_f64().unwrap(), p[1].as_f64().unwrap());
        assert!(((x * x + y * y).sqrt() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn oracle_suites_pass_and_the_injected_bug_fails() {
    let o = ucf(&["oracle", "sec"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("suite=sec checked=1000 mismatches=0 PASS"));
    let o = ucf(&["oracle", "classify", "--seeds", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let o = ucf(&["oracle", "injected-bug", "--seeds", "10"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("counterexample: {\"points\":"));
    let o = ucf(&["oracle", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn render_draws_sec_and_its_third() {
    let dir = tempfile::tempdir().unwrap();
    let o = ucf(&["render", path(&golden(6)), "--out", path(dir.path()), "--frames", "freeze"]);
    assert_eq!(o.status.code(), Some(0));
    let svgs: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!svgs.is_empty());
    let svg = std::fs::read_to_string(&svgs[0]).unwrap();
    let radius = |class: &str| -> f64 {
        let tag = svg.lines().find(|l| l.contains(&format!("class=\"{class}\""))).unwrap();
        let at = tag.find(" r=\"").unwrap() + 4;
        tag[at..].split('"').next().unwrap().parse().unwrap()
    };
    assert!((radius("sec") / radius("sec3") - 3.0).abs() < 3e-3);
    assert!(svg.starts_with("<svg ") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn render_of_an_empty_trace_has_no_frames() {
    let dir = tempfile::tempdir().unwrap();
    let header = std::fs::read_to_string(golden(5)).unwrap().lines().next().unwrap().to_string();
    let file = dir.path().join("empty.jsonl");
    std::fs::write(&file, header + "\n").unwrap();
    let out = dir.path().join("frames");
    let o = ucf(&["render", path(&file), "--out", path(&out), "--frames", "every-10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "frames=0");
    assert_eq!(std::fs::read_dir(&out).unwrap().count(), 0);
}

#[test]
fn render_reports_the_corrupt_line() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(golden(5)).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines[3] = "{\"t\": oops";
    let file = dir.path().join("bad.jsonl");
    std::fs::write(&file, lines.join("\n")).unwrap();
    let o = ucf(&["render", path(&file), "--out", path(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}
