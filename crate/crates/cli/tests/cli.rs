use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lrk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrk")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Pentagon with cover {0, 1, 3} plus a twin of vertex 2 hanging off the
/// cover, budget 1.
const PENTAGON_TWIN: &str = "\
p 6 7
e 0 1
e 1 2
e 2 3
e 3 4
e 4 0
e 5 1
e 5 3
x 0 1 3
k 1
";

struct TempDir {
    dir: tempfile::TempDir,
}

impl TempDir {
    fn new() -> TempDir {
        TempDir { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn kernelize_writes_instance_and_trace() {
    let tmp = TempDir::new();
    let input = tmp.file("in.inst", PENTAGON_TWIN);
    let out_path = tmp.path("out.inst");
    let trace_path = tmp.path("trace.json");
    let out = lrk(&[
        "kernelize",
        "--preset",
        "even-hole-free",
        "--in",
        input.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
        "--trace",
        trace_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("kernelized 6 -> "));

    let written = read(&out_path);
    assert!(written.starts_with("p "));
    assert!(written.contains("\nk 1\n"));

    let trace: serde_json::Value = serde_json::from_str(&read(&trace_path)).unwrap();
    assert_eq!(trace["preset"], "even-hole-free");
    assert_eq!(trace["input_vertices"], 6);
    assert!(trace["reduction"]["Reduced"]["rounds"].is_array());
}

#[test]
fn solve_reports_the_optimum() {
    let tmp = TempDir::new();
    let input = tmp.file("in.inst", PENTAGON_TWIN);
    let out = lrk(&[
        "solve",
        "--property",
        "odd-hole",
        "--in",
        input.to_str().unwrap(),
        "--optimum",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("feasible"));
    assert!(stdout(&out).contains("optimum 1"));

    let json_out = lrk(&[
        "solve",
        "--property",
        "odd-hole",
        "--in",
        input.to_str().unwrap(),
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    assert_eq!(v["feasible"], true);
    assert_eq!(v["optimum"], 1);
}

#[test]
fn detect_prints_a_witness_and_accepts_bare_graphs() {
    let tmp = TempDir::new();
    let input = tmp.file("c5.graph", "p 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n");
    let out = lrk(&["detect", "--property", "odd-hole", "--in", input.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("witness [0 1 2 3 4]"));

    let none = lrk(&["detect", "--property", "even-hole", "--in", input.to_str().unwrap()]);
    assert_eq!(code(&none), 0);
    assert!(stdout(&none).contains("free of even-hole"));
}

#[test]
fn verify_equivalence_passes_clean_and_flags_faults() {
    let clean = lrk(&[
        "verify-equivalence",
        "--preset",
        "even-hole-free",
        "--trials",
        "15",
        "--seed",
        "5",
    ]);
    assert_eq!(code(&clean), 0, "{}", stdout(&clean));
    assert!(stdout(&clean).contains("-> ok"));

    let faulty = lrk(&[
        "verify-equivalence",
        "--preset",
        "even-hole-free",
        "--trials",
        "60",
        "--seed",
        "5",
        "--budget",
        "1",
        "2",
        "--inject-fault",
    ]);
    assert_eq!(code(&faulty), 1, "{}", stdout(&faulty));
    assert!(stdout(&faulty).contains("FAILED"));
}

#[test]
fn verify_rankc_reports_hits() {
    let out = lrk(&[
        "verify-rankc",
        "--property",
        "odd-hole",
        "--trials",
        "40",
        "--seed",
        "11",
        "--indep",
        "2",
        "5",
        "--json",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["counterexamples"], 0);
    assert!(v["premise_hits"].as_u64().unwrap() > 0);
}

#[test]
fn hardness_gen_builds_the_gadget_graph() {
    let tmp = TempDir::new();
    let cnf = tmp.file("f.cnf", "p cnf 5 1\n1 -2 4 0\n");
    let out_path = tmp.path("awfd.inst");
    let out = lrk(&[
        "hardness",
        "gen",
        "--cnf",
        cnf.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("-> 71 vertices (cover 70, budget 5)"));
    assert!(read(&out_path).starts_with("p 71 "));
}

#[test]
fn hardness_counterexample_verifies() {
    let out = lrk(&["hardness", "counterexample", "--c", "2", "--verify"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("confirmed"));

    let shape = lrk(&["hardness", "counterexample", "--c", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&shape)).unwrap();
    assert_eq!(v["cycle_len"], 7);
    assert_eq!(v["dependents"], 35);
}

#[test]
fn coords_and_incvec_dump_the_expected_shapes() {
    let tmp = TempDir::new();
    // Path 0-1-2 with cover {0, 1}: vertex 2 is adjacent to 1 only.
    let input = tmp.file("p3.inst", "p 3 2\ne 0 1\ne 1 2\nx 0 1\nk 0\n");
    let coords = lrk(&["coords", "--in", input.to_str().unwrap(), "--c", "1"]);
    assert_eq!(code(&coords), 0, "{}", stderr(&coords));
    assert_eq!(stdout(&coords).lines().count(), 5);
    assert!(stdout(&coords).starts_with("0: Q=[] R=[]"));

    let vec = lrk(&[
        "incvec",
        "--in",
        input.to_str().unwrap(),
        "--c",
        "1",
        "--vertex",
        "2",
    ]);
    assert_eq!(code(&vec), 0, "{}", stderr(&vec));
    assert_eq!(stdout(&vec).trim().len(), 5);
    assert!(stdout(&vec).trim().chars().all(|c| c == '0' || c == '1'));
}

#[test]
fn usage_and_resource_errors_use_distinct_exit_codes() {
    let tmp = TempDir::new();
    let input = tmp.file("c5.graph", "p 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n");
    let unknown = lrk(&["detect", "--property", "chordal", "--in", input.to_str().unwrap()]);
    assert_eq!(code(&unknown), 2);
    assert!(stderr(&unknown).contains("unknown property"));

    let missing = lrk(&["detect", "--property", "odd-hole", "--in", "/nonexistent.graph"]);
    assert_eq!(code(&missing), 2);

    let resource = lrk(&["hardness", "counterexample", "--c", "7"]);
    assert_eq!(code(&resource), 3);
    assert!(stderr(&resource).contains("resource cap"));

    let bad_flag = lrk(&["kernelize", "--nonsense"]);
    assert_eq!(code(&bad_flag), 2);
}

#[test]
fn caps_override_reaches_the_solver() {
    let tmp = TempDir::new();
    let input = tmp.file("in.inst", PENTAGON_TWIN);
    let out = lrk(&[
        "solve",
        "--property",
        "odd-hole",
        "--in",
        input.to_str().unwrap(),
        "--caps",
        "solver-vertices=3",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn kernel_output_flows_back_into_solve() {
    let tmp = TempDir::new();
    let input = tmp.file("in.inst", PENTAGON_TWIN);
    let kernel_path = tmp.path("kernel.inst");
    let kernelized = lrk(&[
        "kernelize",
        "--preset",
        "perfect",
        "--in",
        input.to_str().unwrap(),
        "--out",
        kernel_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&kernelized), 0, "{}", stderr(&kernelized));

    for path in [&input, &kernel_path] {
        let solved = lrk(&[
            "solve",
            "--property",
            "perfect",
            "--in",
            path.to_str().unwrap(),
            "--json",
        ]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&solved)).unwrap();
        assert_eq!(v["feasible"], true, "{}", path.display());
    }
}
