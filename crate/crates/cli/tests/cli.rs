use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use stc_core::graph::parse_graph;
use stc_core::spantree::tree_congestion;
use stc_core::SpanningTree;
use tempfile::TempDir;

fn stc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stc"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(
        code(out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn gen(dir: &Path, family: &str, n: usize, extra: &[&str], file: &str) {
    let n = n.to_string();
    let mut args = vec!["gen", "--family", family, "--n", &n, "-o", file];
    args.extend_from_slice(extra);
    assert_eq!(code(&stc(dir, &args)), 0);
}

fn workspace() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    gen(d, "cycle", 6, &[], "c6.el");
    gen(d, "cycle", 9, &[], "c9.el");
    gen(d, "path", 4, &[], "p4.el");
    gen(d, "path", 100, &[], "path100.el");
    gen(d, "complete", 4, &[], "k4.el");
    gen(d, "complete", 9, &[], "k9.el");
    fs::write(d.join("disconnected.el"), "4 2\n0 1\n2 3\n").unwrap();
    dir
}

fn value(v: &Value) -> (i64, i64) {
    (v["num"].as_i64().unwrap(), v["den"].as_i64().unwrap())
}

#[test]
fn gen_writes_the_requested_family() {
    let dir = workspace();
    let d = dir.path();
    let c6 = parse_graph(&fs::read_to_string(d.join("c6.el")).unwrap()).unwrap();
    assert_eq!(c6, stc_core::generators::cycle(6).unwrap());

    gen(d, "apex_expander", 4, &["--d", "3", "--seed", "1"], "g.el");
    let g = parse_graph(&fs::read_to_string(d.join("g.el")).unwrap()).unwrap();
    assert_eq!(g, stc_core::generators::complete(5).unwrap());

    let odd = stc(
        d,
        &[
            "gen",
            "--family",
            "random_regular",
            "--n",
            "5",
            "--d",
            "3",
            "--seed",
            "1",
        ],
    );
    assert_eq!(code(&odd), 2);
    let unknown = stc(d, &["gen", "--family", "wheel", "--n", "5"]);
    assert_eq!(code(&unknown), 2);
}

#[test]
fn gen_is_deterministic_and_prints_without_output_path() {
    let dir = workspace();
    let a = stc(
        dir.path(),
        &[
            "gen",
            "--family",
            "gnp_connected",
            "--n",
            "12",
            "--p",
            "0.3",
            "--seed",
            "4",
        ],
    );
    let b = stc(
        dir.path(),
        &[
            "gen",
            "--family",
            "gnp_connected",
            "--n",
            "12",
            "--p",
            "0.3",
            "--seed",
            "4",
        ],
    );
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).starts_with("# stc gen family=gnp_connected"));
}

#[test]
fn solve_reports_congestion() {
    let dir = workspace();
    let d = dir.path();
    let c6 = json(&stc(d, &["solve", "-i", "c6.el", "--oracle", "exact"]));
    assert_eq!(c6["max_congestion"], 2);
    assert_eq!(c6["schema_version"], 1);
    assert_eq!(c6["instance"]["family"], "cycle");
    assert_eq!(c6["config"]["oracle"], "exact");
    assert_eq!(c6["tree"].as_array().unwrap().len(), 5);
    assert!(c6.get("timing").is_none());

    let p4 = json(&stc(d, &["solve", "-i", "p4.el", "--oracle", "exact"]));
    assert_eq!(p4["max_congestion"], 1);

    let spectral = json(&stc(
        d,
        &[
            "solve",
            "-i",
            "path100.el",
            "--oracle",
            "spectral",
            "--seed",
            "3",
        ],
    ));
    assert_eq!(spectral["max_congestion"], 1);
    assert_eq!(spectral["decomposition"]["guarantee"], "uncertified");

    let timed = json(&stc(d, &["solve", "-i", "c6.el", "--timing"]));
    assert!(timed["timing"]["millis"].is_u64());
}

#[test]
fn solve_errors_map_to_exit_codes() {
    let dir = workspace();
    let d = dir.path();
    assert_eq!(code(&stc(d, &["solve", "-i", "disconnected.el"])), 3);
    assert_eq!(code(&stc(d, &["solve", "-i", "missing.el"])), 1);
    fs::write(d.join("bad.el"), "3 2\n0 1\n").unwrap();
    assert_eq!(code(&stc(d, &["solve", "-i", "bad.el"])), 1);
    assert_eq!(
        code(&stc(d, &["solve", "-i", "c6.el", "--oracle", "fast"])),
        2
    );
}

#[test]
fn solve_tree_output_is_a_spanning_tree_with_the_reported_congestion() {
    let dir = workspace();
    let d = dir.path();
    gen(d, "grid", 4, &["--cols", "5"], "grid.el");
    let out = stc(
        d,
        &[
            "solve",
            "-i",
            "grid.el",
            "--tree-out",
            "t.txt",
            "--dot",
            "t.dot",
            "--out",
            "r.json",
        ],
    );
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let report: Value =
        serde_json::from_str(&fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
    let g = parse_graph(&fs::read_to_string(d.join("grid.el")).unwrap()).unwrap();
    let t = SpanningTree::parse(&fs::read_to_string(d.join("t.txt")).unwrap(), g.n()).unwrap();
    assert_eq!(
        tree_congestion(&g, &t).unwrap().max_congestion as u64,
        report["max_congestion"].as_u64().unwrap()
    );
    assert!(fs::read_to_string(d.join("t.dot"))
        .unwrap()
        .starts_with("digraph"));
    assert_eq!(code(&stc(d, &["verify", "-i", "grid.el"])), 0);
}

#[test]
fn exact_reports_the_minimum() {
    let dir = workspace();
    let d = dir.path();
    let k4 = json(&stc(d, &["exact", "-i", "k4.el"]));
    assert_eq!(k4["stc"], 3);
    assert_eq!(k4["spanning_tree_count"], "16");
    assert_eq!(json(&stc(d, &["exact", "-i", "c9.el"]))["stc"], 2);

    let k9 = stc(d, &["exact", "-i", "k9.el", "--budget", "1000"]);
    assert_eq!(code(&k9), 4);
    assert!(String::from_utf8_lossy(&k9.stdout).contains("4782969"));
}

#[test]
fn bounds_lists_certificates() {
    let dir = workspace();
    let d = dir.path();
    let c6 = json(&stc(d, &["bounds", "-i", "c6.el", "--mode", "exact"]));
    let certs = c6["certificates"].as_array().unwrap();
    let by_kind = |k: &str| {
        certs
            .iter()
            .find(|c| c["kind"] == k)
            .map(|c| value(&c["value"]))
            .unwrap()
    };
    assert_eq!(by_kind("lemma_lb1"), (5, 3));
    assert_eq!(by_kind("corollary_lb2"), (2, 3));
    assert_eq!(by_kind("averaging"), (2, 1));
    assert_eq!(value(&c6["best"]["value"]), (2, 1));

    let k4 = json(&stc(d, &["bounds", "-i", "k4.el", "--mode", "exact"]));
    assert_eq!(value(&k4["best"]["value"]), (2, 1));

    let path = json(&stc(d, &["bounds", "-i", "path100.el", "--mode", "search"]));
    assert_eq!(path["best"]["kind"], "averaging");
    assert_eq!(value(&path["best"]["value"]), (1, 1));

    assert_eq!(
        code(&stc(d, &["bounds", "-i", "path100.el", "--mode", "exact"])),
        2
    );
}

#[test]
fn verify_runs_the_suite() {
    let dir = workspace();
    let d = dir.path();
    gen(d, "apex_expander", 8, &["--d", "3", "--seed", "2"], "g.el");
    let out = stc(d, &["verify", "-i", "g.el", "--oracle", "exact"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    for name in [
        "congestion_dual",
        "decomposition_structure",
        "recurrence",
        "bound_soundness",
        "global_bound",
    ] {
        assert!(text.contains(&format!("ok {name}")), "{text}");
    }
    let all = stc(d, &["verify", "--small-exhaustive", "6"]);
    assert_eq!(code(&all), 0);
    assert!(String::from_utf8_lossy(&all.stdout).contains("ok 143 connected graphs"));
    assert_eq!(
        code(&stc(
            d,
            &["verify", "--small-exhaustive", "6", "--oracle", "spectral"]
        )),
        0
    );
    assert_eq!(code(&stc(d, &["verify"])), 2);
}

#[test]
fn bench_writes_one_row_per_instance_and_oracle() {
    let dir = workspace();
    let d = dir.path();
    fs::write(
        d.join("cycles.toml"),
        "[[instances]]\nfamily = \"cycle\"\nn = [6, 7, 8, 9, 10, 11, 12]\n",
    )
    .unwrap();
    assert_eq!(
        code(&stc(
            d,
            &["bench", "--spec", "cycles.toml", "--out", "cycles.csv"]
        )),
        0
    );
    let csv = fs::read_to_string(d.join("cycles.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "n,m,delta,oracle,congestion,stc_or_bound,bound_kind,ratio,height,millis"
    );
    assert_eq!(lines.len(), 8);
    for row in &lines[1..] {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells[7].parse::<f64>().unwrap(), 1.0);
        assert_eq!(cells[6], "exact");
        assert_eq!(cells[9], "");
    }

    fs::write(
        d.join("apex.toml"),
        "oracles = [\"exact\", \"spectral\"]\nseeds = [0, 1]\n[[instances]]\nfamily = \"apex_expander\"\nn = [4, 6]\nd = 3\n",
    )
    .unwrap();
    let out = stc(d, &["bench", "--spec", "apex.toml"]);
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 2 * 2);
    assert!(csv
        .lines()
        .skip(1)
        .all(|l| l.split(',').nth(6) == Some("exact")));

    fs::write(d.join("empty.toml"), "").unwrap();
    let out = stc(d, &["bench", "--spec", "empty.toml"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,m,delta,oracle,congestion,stc_or_bound,bound_kind,ratio,height,millis\n"
    );

    fs::write(
        d.join("bad.toml"),
        "[[instances]]\nfamily = \"wheel\"\nn = 5\n",
    )
    .unwrap();
    assert_eq!(code(&stc(d, &["bench", "--spec", "bad.toml"])), 2);
}
