use std::path::Path;
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn get(&self, key: &str) -> Option<&str> {
        self.stdout
            .lines()
            .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
    }

    fn num(&self, key: &str) -> f64 {
        self.get(key)
            .unwrap_or_else(|| panic!("no {key} in {}", self.stdout))
            .parse()
            .unwrap()
    }
}

fn edgelim(args: &[&str]) -> Run {
    edgelim_env(args, &[])
}

fn edgelim_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_edgelim"))
        .args(args)
        .env_remove("EDGELIM_THREADS")
        .envs(env.iter().copied())
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// 8×8 tridiagonal with 2 on the diagonal and −1 beside it.
fn tridiagonal(dir: &Path) -> std::path::PathBuf {
    let mut s = String::from("%%MatrixMarket matrix coordinate real symmetric\n8 8 15\n");
    for i in 1..=8 {
        s += &format!("{i} {i} 2\n");
        if i < 8 {
            s += &format!("{} {i} -1\n", i + 1);
        }
    }
    let path = dir.join("tri.mtx");
    std::fs::write(&path, s).unwrap();
    path
}

const EXAMPLE_HYPERGRAPH: &str = "5 4\n1 2 5\n2 3\n1 3 4 5\n3 4\n";

#[test]
fn order_reports_chain_totals() {
    for (spec, h, want) in [
        ("chain:256", "mr", 2048.0),
        ("chain:256", "mc1", 2048.0),
        ("chain:8", "mi", 35.0),
        ("chain:8", "mc2", 25.0),
    ] {
        let r = edgelim(&["order", "--spec", spec, "--heuristic", h]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(r.num("total_roots"), want, "{spec} {h}");
        assert_eq!(r.get("tie_break"), Some("lowest-edge-id"));
    }
}

#[test]
fn order_writes_ordering_and_steps() {
    let dir = tempfile::tempdir().unwrap();
    let r = edgelim(&[
        "order",
        "--spec",
        "lattice:4x4",
        "--heuristic",
        "mc2",
        "--out",
        p(dir.path()),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("ordering.json")).unwrap()).unwrap();
    assert_eq!(json["ordering"].as_array().unwrap().len(), 24);
    let csv = std::fs::read_to_string(dir.path().join("steps.csv")).unwrap();
    assert_eq!(csv.lines().count(), 25);
    assert!(csv.starts_with("step,edge_id,size,cum_roots,cum_cost"));
}

#[test]
fn simulate_accepts_inline_and_file_orderings() {
    let r = edgelim(&["simulate", "--spec", "chain:4", "--ordering", "0,1,2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.num("total_roots"), 9.0);
    assert_eq!(r.num("total_root_cost"), 29.0);

    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ord.json");
    std::fs::write(&f, "[1, 0, 2]").unwrap();
    let r = edgelim(&["simulate", "--spec", "chain:4", "--ordering", p(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.num("total_roots"), 9.0);

    let r = edgelim(&["simulate", "--spec", "chain:4", "--ordering", "0,1"]);
    assert_eq!(r.code, 1, "{}", r.stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["order", "--spec", "chain:8", "--heuristic", "bogus"],
        vec!["order", "--heuristic", "mr"],
        vec!["order", "--spec", "chain:8", "--input", "x.mtx", "--heuristic", "mr"],
        vec!["order", "--spec", "ring:8", "--heuristic", "mr"],
        vec!["baseline", "--spec", "chain:8", "--trials", "0"],
        vec!["solve", "--input", "x.mtx", "--side", "middle"],
        vec![
            "generate",
            "--spec",
            "chain:8",
            "--values",
            "--format",
            "hypergraph",
            "--out",
            "x",
        ],
        vec!["frobnicate"],
    ] {
        let r = edgelim(&args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
    }
}

#[test]
fn threads_flag_and_environment() {
    let r = edgelim(&["--threads", "2", "baseline", "--spec", "chain:16", "--trials", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = edgelim_env(
        &["baseline", "--spec", "chain:16", "--trials", "3"],
        &[("EDGELIM_THREADS", "0")],
    );
    assert_eq!(r.code, 2);
}

#[test]
fn baseline_is_deterministic() {
    let args = ["baseline", "--spec", "lattice:6x6", "--trials", "1", "--seed", "9"];
    let (a, b) = (edgelim(&args), edgelim(&args));
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.num("roots_min"), a.num("roots_max"));

    let dir = tempfile::tempdir().unwrap();
    let r = edgelim(&[
        "baseline",
        "--spec",
        "chain:32",
        "--trials",
        "20",
        "--out",
        p(dir.path()),
    ]);
    assert_eq!(r.code, 0);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("baseline.json")).unwrap()).unwrap();
    assert_eq!(json["raw_roots"].as_array().unwrap().len(), 20);
}

#[test]
fn missing_input_exits_one() {
    let r = edgelim(&["order", "--input", "/nonexistent/graph.mtx", "--heuristic", "mr"]);
    assert_eq!(r.code, 1);
}

#[test]
fn solve_tridiagonal() {
    let dir = tempfile::tempdir().unwrap();
    let input = tridiagonal(dir.path());
    let out = dir.path().join("out");
    let r = edgelim(&[
        "solve",
        "--input",
        p(&input),
        "--ordering",
        "mr",
        "--eigvecs",
        "--out",
        p(&out),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.num("residual_eig") <= 1e-12 * r.num("norm_a"));
    let lambda: Vec<f64> = std::fs::read_to_string(out.join("eigenvalues.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('%'))
        .map(|l| l.trim().parse().unwrap())
        .collect();
    assert_eq!(lambda.len(), 8);
    for (k, l) in lambda.iter().enumerate() {
        let want = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / 9.0).cos();
        assert!((l - want).abs() < 1e-12, "{k}: {l} vs {want}");
    }
    assert!(out.join("q.mtx").exists());
    let diag: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("diagnostics.json")).unwrap()).unwrap();
    assert_eq!(diag["per_step_nnz"].as_array().unwrap().len(), 7);
}

#[test]
fn solve_diagonal_gives_sorted_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("d.mtx");
    std::fs::write(
        &f,
        "%%MatrixMarket matrix coordinate real symmetric\n3 3 3\n1 1 3\n2 2 -1\n3 3 2\n",
    )
    .unwrap();
    let r = edgelim(&["solve", "--input", p(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let lambda: Vec<f64> = r
        .stdout
        .lines()
        .filter_map(|l| l.strip_prefix("lambda="))
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(lambda, vec![-1.0, 2.0, 3.0]);
}

#[test]
fn solve_rejects_corrupted_files() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        (
            "general.mtx",
            "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n1 2 3\n",
        ),
        (
            "upper.mtx",
            "%%MatrixMarket matrix coordinate complex hermitian\n2 2 1\n1 2 1 1\n",
        ),
        (
            "short.mtx",
            "%%MatrixMarket matrix coordinate real symmetric\n2 2 3\n1 1 1\n",
        ),
        (
            "garbage.mtx",
            "%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 x 1\n",
        ),
    ] {
        let f = dir.path().join(name);
        std::fs::write(&f, text).unwrap();
        let r = edgelim(&["solve", "--input", p(&f)]);
        assert_eq!(r.code, 1, "{name}");
        assert!(r.stderr.contains("line"), "{name}: {}", r.stderr);
    }
}

#[test]
fn solve_exits_three_above_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let input = tridiagonal(dir.path());
    let r = edgelim(&["solve", "--input", p(&input), "--tol", "1e-300"]);
    assert_eq!(r.code, 3, "{}", r.stderr);
}

#[test]
fn verify_chain_with_generated_values() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("chain.mtx");
    let r = edgelim(&[
        "generate",
        "--spec",
        "chain:8",
        "--values",
        "--seed",
        "3",
        "--out",
        p(&f),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = edgelim(&["verify", "--input", p(&f), "--ordering", "mr", "--out", p(dir.path())]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.get("support_consistent"), Some("true"));
    assert_eq!(r.num("support_equality_fraction"), 1.0);
    assert!(dir.path().join("verify.json").exists());
}

#[test]
fn verify_example_hypergraph_and_injected_fault() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ex.hg");
    std::fs::write(&f, EXAMPLE_HYPERGRAPH).unwrap();
    let r = edgelim(&["verify", "--input", p(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.get("fill_equivalent"), Some("true"));

    let r = edgelim(&["verify", "--input", p(&f), "--inject-skip-update"]);
    assert_eq!(r.code, 4);
    assert_eq!(r.get("status"), Some("violation"));
    assert!(r.stderr.contains("not in predicted"), "{}", r.stderr);

    let r = edgelim(&["verify", "--spec", "lattice:4x4", "--inject-skip-update", "0"]);
    assert_eq!(r.code, 4);
}

#[test]
fn dual_and_analyze_fill() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ex.hg");
    std::fs::write(&f, EXAMPLE_HYPERGRAPH).unwrap();
    let d = dir.path().join("dual.hg");
    let r = edgelim(&["dual", "--input", p(&f), "--out", p(&d)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(std::fs::read_to_string(&d).unwrap(), "4 5\n1 3\n1 2\n2 3 4\n3 4\n1 3\n");

    let r = edgelim(&[
        "analyze-fill",
        "--spec",
        "lattice:5x5",
        "--ordering",
        "random:3",
        "--out",
        p(dir.path()),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.get("traces_equal"), Some("true"));
    assert!(dir.path().join("fill.json").exists());
}

#[test]
fn generate_formats() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("g.txt");
    let r = edgelim(&[
        "generate",
        "--spec",
        "lattice:3x4",
        "--format",
        "hypergraph",
        "--out",
        p(&f),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.num("edges"), 17.0);
    assert!(std::fs::read_to_string(&f).unwrap().starts_with("12 17\n"));
    let r = edgelim(&["order", "--input", p(&f), "--heuristic", "mr"]);
    let s = edgelim(&["order", "--spec", "lattice:3x4", "--heuristic", "mr"]);
    assert_eq!(r.num("total_roots"), s.num("total_roots"));
}

#[test]
fn reproduce_table1_and_fig3() {
    let dir = tempfile::tempdir().unwrap();
    let r = edgelim(&["reproduce", "--figure", "table1", "--out", p(dir.path())]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.num("mr_total_roots"), 2048.0);
    assert_eq!(r.num("mc1_total_roots"), 2048.0);
    let table = std::fs::read_to_string(dir.path().join("table1.csv")).unwrap();
    assert!(table.contains("mr,2048,"));
    let cmp = std::fs::read_to_string(dir.path().join("comparison.csv")).unwrap();
    assert!(cmp.contains("16766") && cmp.contains("2152"));
    assert!(cmp.contains("tie-break"));

    let r = edgelim(&["reproduce", "--figure", "fig3", "--out", p(dir.path())]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.num("mi_total_roots"), 35.0);
    assert!(dir.path().join("fig3_steps.csv").exists());
}

#[test]
fn reproduce_fig4_beats_baseline() {
    let dir = tempfile::tempdir().unwrap();
    let r = edgelim(&["reproduce", "--figure", "fig4", "--out", p(dir.path())]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.get("heuristics_below_baseline"), Some("true"));
    for f in ["heuristics.csv", "baseline.csv", "results.json", "comparison.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
}
