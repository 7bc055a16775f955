use std::io::Write;
use std::process::{Command, Output, Stdio};

use modwidth::oracles::check_coloring;
use modwidth::Graph;
use serde_json::Value;

fn run(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_modwidth"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(stdout(out).trim()).unwrap()
}

#[test]
fn width_of_c5() {
    let out = run(&["width", "--format", "graph6", "-"], b"Dhc\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "5");
}

#[test]
fn hamcycle_on_k23_says_no() {
    let out = run(
        &["hamcycle", "--format", "edgelist"],
        b"5\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n",
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "no");
}

#[test]
fn hamcycle_witness_on_c5() {
    let out = run(
        &[
            "hamcycle",
            "--format",
            "graph6",
            "--witness",
            "--eager-cuts",
        ],
        b"Dhc\n",
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("yes"));
    let cycle: Vec<usize> = serde_json::from_str(lines.next().unwrap()).unwrap();
    modwidth::oracles::check_hamiltonian_cycle(&Graph::cycle(5), &cycle).unwrap();
}

#[test]
fn color_witness_on_k3() {
    let out = run(
        &["color", "--witness", "--format", "dimacs"],
        b"p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n",
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "modwidth.color/1");
    assert_eq!(v["chi"], 3);
    let colors: Vec<usize> = serde_json::from_value(v["colors"].clone()).unwrap();
    check_coloring(&Graph::complete(3), &colors, 3).unwrap();
}

#[test]
fn paths_and_hampath() {
    // two disjoint edges
    let out = run(
        &[
            "paths",
            "--witness",
            "--linear-scan",
            "--format",
            "edgelist",
        ],
        b"4\n0 1\n2 3\n",
    );
    let v = json(&out);
    assert_eq!(v["ham"], 2);
    assert_eq!(v["paths"].as_array().unwrap().len(), 2);
    let out = run(&["hampath", "--format", "edgelist"], b"4\n0 1\n2 3\n");
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["hampath", "--format", "edgelist"], b"3\n0 1\n1 2\n");
    assert_eq!((out.status.code(), stdout(&out).trim()), (Some(0), "yes"));
}

#[test]
fn decompose_and_nd() {
    let out = run(
        &["decompose", "--format", "edgelist"],
        b"4\n0 1\n1 2\n2 3\n",
    );
    let v = json(&out);
    assert_eq!(v["schema"], "modwidth.decompose/1");
    assert_eq!(v["width"], 4);
    assert_eq!(v["tree"]["kind"], "prime");
    let out = run(
        &["decompose", "--dot", "--format", "edgelist"],
        b"4\n0 1\n1 2\n2 3\n",
    );
    assert!(stdout(&out).starts_with("digraph"));
    let out = run(&["nd", "--format", "edgelist"], b"3\n0 1\n0 2\n");
    assert_eq!(stdout(&out).trim(), "2");
}

#[test]
fn auto_detection_warns() {
    let out = run(&["width"], b"Dhc\n");
    assert_eq!(stdout(&out).trim(), "5");
    assert!(String::from_utf8_lossy(&out.stderr).contains("--format"));
}

#[test]
fn bad_input_exits_2() {
    let out = run(&["width", "--format", "edgelist"], b"3\n0 7\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let out = run(&["width", "/nonexistent/graph.g6"], b"");
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"], b"");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_round_trips_through_width() {
    let out = run(&["gen", "-n", "40", "--width", "4", "--seed", "3"], b"");
    assert_eq!(out.status.code(), Some(0));
    let g = modwidth::format::parse_graph6(&out.stdout).unwrap();
    assert_eq!(g.n(), 40);
    let out = run(&["width", "--format", "graph6"], &out.stdout);
    assert!(stdout(&out).trim().parse::<usize>().unwrap() <= 4);
    let out = run(&["gen", "--named", "petersen", "--format", "edgelist"], b"");
    assert!(stdout(&out).starts_with("10\n"));
    let out = run(&["gen", "--count", "3", "-n", "6", "--p", "0.5"], b"");
    assert_eq!(stdout(&out).lines().count(), 3);
}

#[test]
fn check_all_connected() {
    let out = run(
        &["check", "--all-connected", "--max-n", "7", "--jobs", "2"],
        b"",
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["schema"], "modwidth.check/1");
    assert_eq!(v["graphs"], 996);
    assert!(v["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn check_random_and_file_input() {
    let out = run(
        &[
            "check",
            "--random",
            "30",
            "--max-n",
            "8",
            "--seed",
            "5",
            "--fast-mwp",
        ],
        b"",
    );
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["check", "--input", "-"], b"Dhc\nIheA@GUAo\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["graphs"], 2);
    let out = run(&["check"], b"");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_emits_csv() {
    let out = run(
        &[
            "bench",
            "--width",
            "4",
            "--sizes",
            "30,60",
            "--repeats",
            "2",
            "--jobs",
            "1",
        ],
        b"",
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("problem,n,mw,seed,seconds"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows
        .iter()
        .all(|r| r.len() == 5 && r[4].parse::<f64>().is_ok()));
    assert!(rows.iter().all(|r| r[2].parse::<usize>().unwrap() <= 4));
}
