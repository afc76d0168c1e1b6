//! End-to-end tests of the `ghd` binary: outputs, exit codes, determinism.

use std::path::Path;
use std::process::{Command, Output};

fn ghd(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghd"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn exit(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

struct Fixtures {
    dir: tempfile::TempDir,
}

impl Fixtures {
    fn new() -> Self {
        let dir = tempfile::tempdir().expect("tempdir");
        std::fs::write(dir.path().join("tri.hg"), "e1(a,b),\ne2(b,c),\ne3(a,c).").unwrap();
        std::fs::write(dir.path().join("path.hg"), "e1(a,b),\ne2(b,c).").unwrap();
        std::fs::write(dir.path().join("single.hg"), "e1(a,b).").unwrap();
        Fixtures { dir }
    }

    fn path(&self) -> &Path {
        self.dir.path()
    }

    fn read(&self, name: &str) -> String {
        std::fs::read_to_string(self.dir.path().join(name)).expect("file exists")
    }
}

#[test]
fn decompose_prints_width_and_writes_ghd() {
    let fx = Fixtures::new();
    let out = ghd(
        &[
            "decompose",
            "tri.hg",
            "--heuristic",
            "min-fill",
            "--cover",
            "exact",
            "-o",
            "tri.ghd",
        ],
        fx.path(),
    );
    assert_eq!(exit(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "width=2\n");
    assert_eq!(fx.read("tri.ghd"), "node 1 bag{a,b,c} cover{e1,e2}");
}

#[test]
fn decompose_acyclic_fast_path() {
    let fx = Fixtures::new();
    let out = ghd(&["decompose", "path.hg", "-o", "p.ghd"], fx.path());
    assert_eq!(exit(&out), 0);
    assert_eq!(stdout(&out), "width=1\n");
    assert_eq!(
        fx.read("p.ghd"),
        "node 1 bag{a,b} cover{e1}\nnode 2 bag{b,c} cover{e2}\nedge 1 2"
    );
}

#[test]
fn decompose_rejects_malformed_input_with_diagnostic() {
    let fx = Fixtures::new();
    std::fs::write(fx.path().join("bad.hg"), "e1(a,b").unwrap();
    let out = ghd(&["decompose", "bad.hg"], fx.path());
    assert_eq!(exit(&out), 1);
    assert!(stderr(&out).contains("1:7"), "{}", stderr(&out));
    assert_eq!(stdout(&out), "");
}

#[test]
fn decompose_then_validate_exits_zero() {
    let fx = Fixtures::new();
    for input in ["tri.hg", "path.hg", "single.hg"] {
        let out = ghd(&["decompose", input, "-o", "out.ghd"], fx.path());
        assert_eq!(exit(&out), 0);
        let check = ghd(&["validate", input, "out.ghd"], fx.path());
        assert_eq!(exit(&check), 0, "{}", stdout(&check));
    }
}

#[test]
fn validate_reports_four_verdicts_and_width() {
    let fx = Fixtures::new();
    std::fs::write(
        fx.path().join("bad.ghd"),
        "node 1 bag{a,b} cover{e1}\nnode 2 bag{c} cover{e2}\nedge 1 2",
    )
    .unwrap();
    let out = ghd(&["validate", "path.hg", "bad.ghd"], fx.path());
    assert_eq!(exit(&out), 3);
    let text = stdout(&out);
    assert!(text.contains("edge_coverage: FAIL e2"), "{text}");
    assert!(text.contains("connectedness: PASS"));
    assert!(text.contains("bag_cover: PASS"));
    assert!(text.contains("references: PASS"));
    assert!(text.contains("width=1"));
}

#[test]
fn validate_empty_decomposition_fails_coverage() {
    let fx = Fixtures::new();
    std::fs::write(fx.path().join("empty.ghd"), "").unwrap();
    let out = ghd(&["validate", "tri.hg", "empty.ghd"], fx.path());
    assert_eq!(exit(&out), 3);
    assert!(stdout(&out).contains("edge_coverage: FAIL e1"));
}

#[test]
fn exact_reports_ghw_and_witness() {
    let fx = Fixtures::new();
    let out = ghd(&["exact", "tri.hg", "-o", "wit.ghd"], fx.path());
    assert_eq!(exit(&out), 0);
    assert_eq!(stdout(&out), "ghw=2\n");
    let check = ghd(&["validate", "tri.hg", "wit.ghd"], fx.path());
    assert_eq!(exit(&check), 0);

    let out = ghd(&["exact", "path.hg"], fx.path());
    assert_eq!(stdout(&out), "ghw=1\n");
    let out = ghd(&["exact", "single.hg"], fx.path());
    assert_eq!(stdout(&out), "ghw=1\n");
}

#[test]
fn exact_guards_large_inputs() {
    let fx = Fixtures::new();
    let edges: Vec<String> = (0..6)
        .map(|i| format!("e{i}(v{},v{})", 2 * i, 2 * i + 1))
        .collect();
    std::fs::write(fx.path().join("big.hg"), format!("{}.", edges.join(","))).unwrap();
    let out = ghd(&["exact", "big.hg"], fx.path());
    assert_eq!(exit(&out), 4);
    assert!(stderr(&out).contains("--limit"));
}

#[test]
fn exact_decides_bounded_width() {
    let fx = Fixtures::new();
    let out = ghd(&["exact", "tri.hg", "-k", "1"], fx.path());
    assert_eq!(exit(&out), 0);
    assert_eq!(stdout(&out), "ghw<=1: false\n");
    let out = ghd(&["exact", "tri.hg", "-k", "2", "-o", "wit.ghd"], fx.path());
    assert_eq!(stdout(&out), "ghw<=2: true\n");
    let check = ghd(&["validate", "tri.hg", "wit.ghd"], fx.path());
    assert_eq!(exit(&check), 0);
}

#[test]
fn stats_prints_report() {
    let fx = Fixtures::new();
    let out = ghd(&["stats", "tri.hg"], fx.path());
    assert_eq!(exit(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("vertices=3"));
    assert!(text.contains("edges=3"));
    assert!(text.contains("acyclic=false"));
}

#[test]
fn convert_writes_dot_files() {
    let fx = Fixtures::new();
    let out = ghd(&["convert", "tri.hg", "--dot", "tri.dot"], fx.path());
    assert_eq!(exit(&out), 0);
    let dot = fx.read("tri.dot");
    assert_eq!(dot.matches("subgraph cluster_").count(), 1);
    assert_eq!(
        dot.matches("\"v:").count() - dot.matches("-> \"v:").count(),
        6
    );

    ghd(&["decompose", "tri.hg", "-o", "tri.ghd"], fx.path());
    let out = ghd(
        &["convert", "tri.hg", "tri.ghd", "--dot", "pair.dot"],
        fx.path(),
    );
    assert_eq!(exit(&out), 0);
    assert_eq!(fx.read("pair.dot").matches("subgraph cluster_").count(), 2);
}

#[test]
fn convert_rejects_invalid_pair() {
    let fx = Fixtures::new();
    std::fs::write(fx.path().join("bad.ghd"), "node 1 bag{a} cover{e1}").unwrap();
    let out = ghd(
        &["convert", "tri.hg", "bad.ghd", "--dot", "x.dot"],
        fx.path(),
    );
    assert_eq!(exit(&out), 3);
}

#[test]
fn bench_emits_sorted_csv() {
    let fx = Fixtures::new();
    let dir = fx.path().join("instances");
    std::fs::create_dir(&dir).unwrap();
    std::fs::copy(fx.path().join("tri.hg"), dir.join("tri.hg")).unwrap();
    std::fs::copy(fx.path().join("path.hg"), dir.join("path.hg")).unwrap();
    let out = ghd(
        &["bench", "instances", "--heuristics", "min-fill"],
        fx.path(),
    );
    assert_eq!(exit(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "instance,heuristic,cover,width,nodes,millis");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("path.hg,min-fill,auto,1,2,"));
    assert!(lines[2].starts_with("tri.hg,min-fill,auto,2,1,"));
}

#[test]
fn bench_empty_directory_is_header_only() {
    let fx = Fixtures::new();
    let dir = fx.path().join("none");
    std::fs::create_dir(&dir).unwrap();
    let out = ghd(&["bench", "none"], fx.path());
    assert_eq!(exit(&out), 0);
    assert_eq!(
        stdout(&out),
        "instance,heuristic,cover,width,nodes,millis\n"
    );
}

#[test]
fn bench_repetitions_are_deterministic_in_width() {
    let fx = Fixtures::new();
    let dir = fx.path().join("inst");
    std::fs::create_dir(&dir).unwrap();
    std::fs::copy(fx.path().join("tri.hg"), dir.join("tri.hg")).unwrap();
    let out = ghd(
        &[
            "bench",
            "inst",
            "--heuristics",
            "random",
            "--seed",
            "9",
            "--reps",
            "3",
        ],
        fx.path(),
    );
    assert_eq!(exit(&out), 0);
    let text = stdout(&out);
    let widths: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap())
        .collect();
    assert_eq!(widths.len(), 3);
    assert!(widths.iter().all(|&w| w == widths[0]));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let fx = Fixtures::new();
    let args = [
        vec!["decompose", "tri.hg", "-o", "a.ghd", "--dot", "a.dot"],
        vec!["decompose", "tri.hg", "-o", "b.ghd", "--dot", "b.dot"],
    ];
    for a in &args {
        let out = ghd(a, fx.path());
        assert_eq!(exit(&out), 0);
    }
    assert_eq!(fx.read("a.ghd"), fx.read("b.ghd"));
    assert_eq!(fx.read("a.dot"), fx.read("b.dot"));

    for (o, d) in [("r1.ghd", "r1.dot"), ("r2.ghd", "r2.dot")] {
        let out = ghd(
            &[
                "decompose",
                "tri.hg",
                "--heuristic",
                "random",
                "--seed",
                "42",
                "-o",
                o,
                "--dot",
                d,
            ],
            fx.path(),
        );
        assert_eq!(exit(&out), 0);
    }
    assert_eq!(fx.read("r1.ghd"), fx.read("r2.ghd"));
    assert_eq!(fx.read("r1.dot"), fx.read("r2.dot"));
}

#[test]
fn lint_warns_on_wasteful_covers() {
    let fx = Fixtures::new();
    std::fs::write(
        fx.path().join("waste.ghd"),
        "node 1 bag{a,b} cover{e1,e2}\nnode 2 bag{b,c} cover{e2}\nedge 1 2",
    )
    .unwrap();
    // e2={b,c} meets bag {a,b}; nothing to warn about
    let out = ghd(&["validate", "path.hg", "waste.ghd", "--lint"], fx.path());
    assert_eq!(exit(&out), 0);
    assert_eq!(stderr(&out), "");

    std::fs::write(
        fx.path().join("waste2.ghd"),
        "node 1 bag{a} cover{e1,e2}\nnode 2 bag{a,b} cover{e1}\nnode 3 bag{b,c} cover{e2}\nedge 1 2\nedge 2 3",
    )
    .unwrap();
    let out = ghd(&["validate", "path.hg", "waste2.ghd", "--lint"], fx.path());
    assert_eq!(exit(&out), 0);
    assert!(stderr(&out).contains("lint:"), "{}", stderr(&out));
}

#[test]
fn preprocess_is_transparent_to_validation() {
    let fx = Fixtures::new();
    std::fs::write(
        fx.path().join("sub.hg"),
        "big(a,b,c),\nsub(a,b),\nrest(c,d).",
    )
    .unwrap();
    let out = ghd(
        &["decompose", "sub.hg", "--preprocess", "-o", "sub.ghd"],
        fx.path(),
    );
    assert_eq!(exit(&out), 0, "{}", stderr(&out));
    let check = ghd(&["validate", "sub.hg", "sub.ghd"], fx.path());
    assert_eq!(exit(&check), 0, "{}", stdout(&check));
}
