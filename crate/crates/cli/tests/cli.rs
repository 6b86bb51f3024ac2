use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const C4: &str = "p multigraph 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";
const K4: &str = "p multigraph 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
const K5: &str = "p multigraph 5 10\ne 1 2\ne 1 3\ne 1 4\ne 1 5\ne 2 3\ne 2 4\ne 2 5\ne 3 4\ne 3 5\ne 4 5\n";
const PETERSEN: &str = "p multigraph 10 15\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\ne 1 6\ne 2 7\ne 3 8\ne 4 9\ne 5 10\n\
e 6 8\ne 8 10\ne 10 7\ne 7 9\ne 9 6\n";

fn oddimm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddimm")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bipartite_host_has_no_odd_k4() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c4.txt", C4);
    let out = oddimm(&["find-immersion", "--t", "4", "--parity", "odd", s(&g)]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["found"], false);
}

#[test]
fn k4_certificate_round_trips() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.txt", K4);
    let out = oddimm(&["find-immersion", "--t", "4", s(&g)]);
    assert_eq!(code(&out), 0);
    let cert = write(&dir, "cert.json", std::str::from_utf8(&out.stdout).unwrap());
    let out = oddimm(&["verify-cert", s(&cert), s(&g)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["valid"], true);

    let mut bad = json(&oddimm(&["find-immersion", "--t", "4", s(&g)]));
    bad["branch_vertices"][1] = bad["branch_vertices"][0].clone();
    let bad = write(&dir, "bad.json", &bad.to_string());
    let out = oddimm(&["verify-cert", s(&bad), s(&g)]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["valid"], false);
}

#[test]
fn extraction_matches_search() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k5.txt", K5);
    let out = oddimm(&["find-immersion", "--t", "5", "--extract", s(&g)]);
    assert_eq!(code(&out), 0);
    let cert = write(&dir, "cert.json", std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(code(&oddimm(&["verify-cert", s(&cert), s(&g)])), 0);
}

#[test]
fn petersen_decomposes_and_verifies() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "petersen.txt", PETERSEN);
    let out = oddimm(&["decompose", "--t", "3", "--profile", "desk", s(&g)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["result"], "split");
    let split = write(&dir, "split.json", std::str::from_utf8(&out.stdout).unwrap());

    let out = oddimm(&["verify-split", "--split", s(&split), s(&g)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["ok"], true);

    let out = oddimm(&["color", "--split", s(&split), s(&g)]);
    assert_eq!(code(&out), 0);
    let colors = json(&out);
    assert!(colors["count"].as_u64().unwrap() >= 3);
}

#[test]
fn warm_start_resumes() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "petersen.txt", PETERSEN);
    let warm = write(&dir, "warm.json", "[0, 1]");
    let out = oddimm(&["decompose", "--t", "3", "--warm-start", s(&warm), s(&g)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["sizes"][0], 2);
    let odd = write(&dir, "odd.json", "[0, 1, 2, 3, 4]");
    assert_eq!(code(&oddimm(&["decompose", "--t", "3", "--warm-start", s(&odd), s(&g)])), 3);
}

#[test]
fn clique_host_gives_witness() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k5.txt", K5);
    let out = oddimm(&["decompose", "--t", "3", s(&g)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"], "totally_odd_witness");
    let split = write(&dir, "w.json", std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(code(&oddimm(&["verify-split", "--split", s(&split), s(&g)])), 0);
    assert_eq!(code(&oddimm(&["color", "--split", s(&split), s(&g)])), 3);
}

#[test]
fn odd_ep_modes() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let k5 = write(&dir, "k5.txt", K5);
    let out = oddimm(&["odd-ep", "--mode", "circuits", "--x", "0", "--k", "2", s(&k4)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["outcome"], "cover");
    assert!(v["hitting_set"].as_array().unwrap().len() <= 2);

    let out = oddimm(&["odd-ep", "--mode", "circuits", "--x", "0", "--k", "2", s(&k5)]);
    assert_eq!(json(&out)["outcome"], "packing");
    assert_eq!(json(&out)["objects"].as_array().unwrap().len(), 2);

    let out = oddimm(&["odd-ep", "--mode", "paths", "--A", "0,1", "--k", "1", s(&k4)]);
    assert_eq!(json(&out)["outcome"], "packing");
    assert_eq!(code(&oddimm(&["odd-ep", "--mode", "paths", "--k", "1", s(&k4)])), 3);
    assert_eq!(code(&oddimm(&["odd-ep", "--mode", "circuits", "--x", "9", "--k", "1", s(&k4)])), 3);
}

#[test]
fn malformed_input_exits_3_with_line() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.txt", "p multigraph 2 1\n# fine\ne 1 7\n");
    let out = oddimm(&["find-immersion", "--t", "3", s(&g)]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(code(&oddimm(&["find-immersion", "--t", "3", "missing.txt"])), 3);
    assert_eq!(code(&oddimm(&["no-such-command"])), 3);
}

#[test]
fn budget_exhaustion_exits_2() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "petersen.txt", PETERSEN);
    let out = oddimm(&["find-immersion", "--t", "4", "--budget", "3", s(&g)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "petersen.txt", PETERSEN);
    let a = oddimm(&["decompose", "--t", "3", "--seed", "7", s(&g)]);
    let b = oddimm(&["decompose", "--t", "3", "--seed", "7", s(&g)]);
    assert_eq!(a.stdout, b.stdout);
    let a = oddimm(&["gen-corpus", "--random", "5", "--seed", "3"]);
    let b = oddimm(&["gen-corpus", "--random", "5", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let c = oddimm(&["gen-corpus", "--random", "5", "--seed", "4"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn corpus_matches_library() {
    let out = oddimm(&["gen-corpus", "--max-vertices", "4", "--max-edges", "4"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let expected = oddimm::corpus::small_connected_multigraphs(4, 4);
    assert_eq!(v["count"].as_u64().unwrap() as usize, expected.len());
    let first = v["graphs"][1]["edge_list"].as_str().unwrap();
    assert_eq!(oddimm::graph::io::parse_edge_list(first).unwrap().edge_count(), expected[1].edge_count());
}

#[test]
fn dot_export() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.txt", K4);
    let out = oddimm(&["--format", "dot", "find-immersion", "--t", "3", s(&g)]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("graph certificate {"));
    assert_eq!(code(&oddimm(&["--format", "dot", "gen-corpus", "--max-vertices", "2", "--max-edges", "1"])), 3);
}

#[test]
fn profile_presets_and_files() {
    let dir = TempDir::new().unwrap();
    let out = oddimm(&["profile", "--profile", "paper", "--t", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["values"]["even_clique_order"], 1400);
    let f = write(&dir, "p.txt", "base = desk\nset_a_size! = 5\n");
    let out = oddimm(&["profile", "--profile", s(&f), "--t", "3"]);
    assert_eq!(json(&out)["values"]["set_a_size"], 5);
    assert_eq!(code(&oddimm(&["profile", "--profile", "nope"])), 3);
}
