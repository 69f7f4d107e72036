//! End-to-end runs of the `vicsek` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_vicsek");

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env_remove("VICSEK_CAP_VERTICES")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_file(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

fn spider_file(dir: &Path) -> String {
    let path = dir.join("spider.txt");
    std::fs::write(
        &path,
        "# center, two leaves, one 2-path arm\n5 4\n0 1\n0 2\n0 3\n3 4\n",
    )
    .unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn generate_star_writes_edges_and_sidecar() {
    let dir = TempDir::new().unwrap();
    let o = run_in(
        dir.path(),
        &["generate", "--star", "4", "--s", "4", "--t", "2"],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "125");
    let edges = std::fs::read_to_string(dir.path().join("vicsek_s4_t2.edges")).unwrap();
    assert_eq!(edges.lines().next(), Some("125 124"));
    assert_eq!(edges.lines().count(), 125);
    let side = json_file(&dir.path().join("vicsek_s4_t2.edges.json"));
    assert_eq!(side["vertex_count"], 125);
    assert_eq!(side["n0"], 5);
}

#[test]
fn generate_single_and_seed_file() {
    let dir = TempDir::new().unwrap();
    let o = run_in(
        dir.path(),
        &[
            "generate", "--single", "--s", "4", "--t", "1", "--out", "a.edges",
        ],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "5");

    let spider = spider_file(dir.path());
    let o = run_in(
        dir.path(),
        &[
            "generate",
            "--seed-file",
            &spider,
            "--s",
            "3",
            "--t",
            "1",
            "--out",
            "b.edges",
        ],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "20");
}

#[test]
fn validation_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let spider = spider_file(dir.path());
    let o = run_in(
        dir.path(),
        &["generate", "--seed-file", &spider, "--s", "2", "--t", "1"],
    );
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("degree 3 > s = 2"));

    let cyclic = dir.path().join("cycle.txt");
    std::fs::write(&cyclic, "3 3\n0 1\n1 2\n2 0\n").unwrap();
    let o = run_in(
        dir.path(),
        &[
            "generate",
            "--seed-file",
            cyclic.to_str().unwrap(),
            "--s",
            "3",
            "--t",
            "1",
        ],
    );
    assert_eq!(code(&o), 2);

    let o = run_in(
        dir.path(),
        &[
            "generate", "--star", "3", "--single", "--s", "3", "--t", "1",
        ],
    );
    assert_eq!(code(&o), 2);
    let o = run_in(dir.path(), &["generate", "--s", "3", "--t", "1"]);
    assert_eq!(code(&o), 2);
    let o = run_in(
        dir.path(),
        &[
            "generate",
            "--star",
            "3",
            "--s",
            "3",
            "--t",
            "1",
            "--cap-vertices",
            "0",
        ],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn caps_exit_3_with_flag_over_env_precedence() {
    let dir = TempDir::new().unwrap();
    let o = run_in(
        dir.path(),
        &[
            "generate",
            "--star",
            "4",
            "--s",
            "4",
            "--t",
            "9",
            "--cap-vertices",
            "1000",
        ],
    );
    assert_eq!(code(&o), 3);

    let args = ["generate", "--star", "4", "--s", "4", "--t", "2"];
    let with_env = |cap: &str, extra: &[&str]| {
        let mut cmd = Command::new(BIN);
        cmd.args(args)
            .args(extra)
            .current_dir(dir.path())
            .env("VICSEK_CAP_VERTICES", cap);
        code(&cmd.output().unwrap())
    };
    assert_eq!(with_env("10", &[]), 3);
    assert_eq!(with_env("10", &["--cap-vertices", "1000"]), 0);
    assert_eq!(with_env("zero", &[]), 2);

    let o = run_in(
        dir.path(),
        &[
            "analyze", "--star", "4", "--s", "4", "--t", "7", "--mode", "oracle",
        ],
    );
    assert_eq!(code(&o), 3);
    let o = run_in(
        dir.path(),
        &["spectrum", "--star", "3", "--s", "3", "--t", "6"],
    );
    assert_eq!(code(&o), 3);
}

#[test]
fn analyze_closed_and_oracle_agree_on_p9() {
    let dir = TempDir::new().unwrap();
    let o = run_in(
        dir.path(),
        &[
            "analyze",
            "--star",
            "2",
            "--s",
            "2",
            "--t",
            "1",
            "--mode",
            "closed,oracle",
        ],
    );
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for r in v["results"].as_array().unwrap() {
        assert_eq!(r["mfpt_num"], "80");
        assert_eq!(r["mfpt_den"], "3");
        assert_eq!(r["wiener"], "120");
    }
    assert_eq!(v["cross_checks"][0]["delta_num"], "0");
    assert_eq!(v["all_pass"], true);
}

#[test]
fn analyze_spectral_on_64_vertices() {
    let dir = TempDir::new().unwrap();
    let o = run_in(
        dir.path(),
        &[
            "analyze", "--star", "3", "--s", "3", "--t", "2", "--mode", "closed", "--mode",
            "spectral",
        ],
    );
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertex_count"], "64");
    assert!(v["cross_checks"][0]["rel_delta"].as_f64().unwrap() < 1e-6);
}

#[test]
fn analyze_mc_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let args = |out: &'static str| {
        vec![
            "analyze",
            "--star",
            "2",
            "--s",
            "2",
            "--t",
            "1",
            "--mode",
            "mc,closed",
            "--samples",
            "1e5",
            "--rng-seed",
            "7",
            "--out",
            out,
        ]
    };
    assert_eq!(code(&run_in(dir.path(), &args("a.json"))), 0);
    assert_eq!(code(&run_in(dir.path(), &args("b.json"))), 0);
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    let b = std::fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    let mc = &v["results"][1];
    assert_eq!(mc["method"], "monte-carlo");
    assert_eq!(mc["seed"], 7);
    assert_eq!(mc["samples"], 100_000);
    assert_eq!(mc["exact_num"], "80");
}

#[test]
fn scaling_grid_and_guards() {
    let dir = TempDir::new().unwrap();
    let spider = spider_file(dir.path());
    let args = [
        "scaling",
        "--seed-file",
        &spider,
        "--s-list",
        "4,5,6,7,8,9",
        "--t-max",
        "25",
    ];
    let o = run_in(dir.path(), &args);
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "s,t,vertex_count,mfpt_num,mfpt_den,delta,lambda");
    assert_eq!(lines.len(), 1 + 6 * 26);
    assert!(lines[1].starts_with("4,0,5,36,5,"));
    assert_eq!(stdout(&run_in(dir.path(), &args)), csv);

    let o = run_in(
        dir.path(),
        &["scaling", "--star", "2", "--s-list", "2", "--t-max", "3"],
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\n2,1,9,80,3,"));

    let o = run_in(
        dir.path(),
        &["scaling", "--single", "--s-list", "3", "--t-max", "0"],
    );
    assert_eq!(code(&o), 2);
    let o = run_in(
        dir.path(),
        &["scaling", "--star", "3", "--s-list", "1", "--t-max", "3"],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn errata_reports_documented_mismatches() {
    let dir = TempDir::new().unwrap();
    let o = run_in(dir.path(), &["errata", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    assert!(csv.contains("2,1,9,printed-wiener,120,80,3,match,match,match,match"));
    assert!(csv.contains("2,1,9,printed-typical-mfpt,,170,3,,mismatch,,mismatch"));
    assert!(csv.contains("2,1,9,printed-split-sums,,8,3,,mismatch,,mismatch"));
    assert!(csv.contains("2,2,27,printed-wiener,3330,"));
    assert!(csv.contains("3,1,16,printed-wiener,452,"));
    assert!(csv.contains("3,1,16,derived,516,129,2,match,match,match,match"));

    let o = run_in(dir.path(), &["errata", "--s-list", "2", "--t-max", "1"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["derived_matches_oracle"], true);
}

#[test]
fn spectrum_with_decimation() {
    let dir = TempDir::new().unwrap();
    let o = run_in(
        dir.path(),
        &["spectrum", "--star", "2", "--s", "2", "--t", "1"],
    );
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(dir.path().join("spectrum_s2_t1.csv")).unwrap();
    assert_eq!(csv.lines().count(), 10);
    let report = json_file(&dir.path().join("spectrum_s2_t1.csv.decimation.json"));
    let dec = &report["decimation"];
    assert_eq!(dec["all_matched"], true);
    assert_eq!(dec["entries"].as_array().unwrap().len(), 2);

    let o = run_in(
        dir.path(),
        &["spectrum", "--single", "--s", "2", "--t", "0"],
    );
    assert_eq!(code(&o), 2);
}
