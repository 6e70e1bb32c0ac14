use std::path::{Path, PathBuf};

use edgelim::eliminator::{
    eliminate_decomposition, predictive_consistency, predictive_consistency_decomposition, ConsistencyOptions,
    ConsistencyReport, GershgorinSide, HermitianInput,
};
use edgelim::matio::{
    connected_components, generate as gen_pattern, load_graph, random_decomposition, random_hermitian, write_array,
    write_eigenvalues, write_hermitian, write_json, write_pattern, write_text, GraphSpec,
};
use edgelim::ordering::{
    random_baseline, run_elimination, simulate_ordering, symbolic_ge_fill_equivalence, CostReport, HeuristicKind,
    Ordering,
};
use edgelim::{Hypergraph, SparsityPattern};
use serde::Serialize;

use crate::{CliError, CliResult, GenFormat, GraphArgs};

pub const TIE_BREAK: &str = "lowest-edge-id";

pub struct Graph {
    pub hypergraph: Hypergraph,
    pub pattern: Option<SparsityPattern>,
    pub matrix: Option<HermitianInput>,
    pub label: String,
}

pub fn parse_spec(s: &str) -> CliResult<GraphSpec> {
    s.parse().map_err(|e: edgelim::Error| CliError::Usage(e.to_string()))
}

pub fn load(g: &GraphArgs) -> CliResult<Graph> {
    match (&g.input, &g.spec) {
        (Some(path), None) => {
            let loaded = load_graph(path)?;
            let pattern = loaded.matrix.as_ref().map(|a| a.pattern()).or_else(|| {
                // numeric-free files: keep the pattern when the graph is a plain graph
                let h = &loaded.hypergraph;
                h.edges().iter().all(|e| e.len() == 2).then(|| {
                    SparsityPattern::symmetric_from_positions(
                        h.n_vertices(),
                        h.edges().iter().map(|e| (e.vertices()[1], e.vertices()[0])),
                    )
                    .expect("edge vertices in range")
                })
            });
            Ok(Graph {
                hypergraph: loaded.hypergraph,
                pattern,
                matrix: loaded.matrix,
                label: path.display().to_string(),
            })
        }
        (None, Some(spec)) => {
            let spec = parse_spec(spec)?;
            let p = gen_pattern(&spec)?;
            Ok(Graph {
                hypergraph: Hypergraph::from_matrix_pattern(&p)?,
                pattern: Some(p),
                matrix: None,
                label: spec.to_string(),
            })
        }
        _ => Err(CliError::Usage("give exactly one of --input and --spec".into())),
    }
}

pub fn parse_heuristic(s: &str) -> CliResult<HeuristicKind> {
    s.parse().map_err(|e: edgelim::Error| CliError::Usage(e.to_string()))
}

/// Heuristic name, ordering file (JSON array, or an object with an
/// `ordering` field) or inline comma-separated ids.
pub fn resolve_ordering(s: &str, g: &Hypergraph) -> CliResult<(Ordering, String)> {
    if let Ok(h) = s.parse::<HeuristicKind>() {
        let (ord, _) = run_elimination(g, &h)?;
        return Ok((ord, h.short_name()));
    }
    let path = Path::new(s);
    let ord = if path.exists() {
        let text = std::fs::read_to_string(path)?;
        let v: serde_json::Value = serde_json::from_str(&text).map_err(edgelim::Error::from)?;
        let arr = if v.is_array() { v } else { v["ordering"].clone() };
        serde_json::from_value::<Ordering>(arr).map_err(edgelim::Error::from)?
    } else {
        let ids = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| {
                CliError::Usage(format!(
                    "`{s}` is not a heuristic, an existing ordering file or a list of edge ids"
                ))
            })?;
        Ordering(ids)
    };
    ord.validate_against(&g.edge_ids())?;
    Ok((ord, "given".into()))
}

fn kv(key: &str, value: impl std::fmt::Display) {
    println!("{key}={value}");
}

fn out_path(out: Option<&Path>, name: &str) -> Option<PathBuf> {
    out.map(|d| d.join(name))
}

pub fn generate(spec: &str, values: bool, seed: u64, format: GenFormat, out: &Path) -> CliResult {
    let spec = parse_spec(spec)?;
    let p = gen_pattern(&spec)?;
    if values && format == GenFormat::Hypergraph {
        return Err(CliError::Usage("--values needs --format mtx".into()));
    }
    let text = match format {
        GenFormat::Hypergraph => Hypergraph::from_matrix_pattern(&p)?.to_text(),
        GenFormat::Mtx if values => write_hermitian(&random_hermitian(&p, seed)?),
        GenFormat::Mtx => write_pattern(&p),
    };
    write_text(out, &text)?;
    kv("spec", &spec);
    kv("n", p.n_rows());
    kv("edges", p.strict_lower().count());
    kv("components", connected_components(&p));
    kv("out", out.display());
    Ok(())
}

#[derive(Serialize)]
struct OrderOutput<'a> {
    graph: &'a str,
    heuristic: String,
    tie_break: &'a str,
    ordering: &'a Ordering,
    report: &'a CostReport,
}

fn write_order_outputs(out: Option<&Path>, o: &OrderOutput) -> CliResult {
    if let Some(p) = out_path(out, "ordering.json") {
        write_json(p, o)?;
    }
    if let Some(p) = out_path(out, "steps.csv") {
        write_text(p, &o.report.to_csv(o.ordering))?;
    }
    Ok(())
}

pub fn order(g: &GraphArgs, heuristic: &str, out: Option<&Path>) -> CliResult {
    let h = parse_heuristic(heuristic)?;
    let graph = load(g)?;
    let (ord, report) = run_elimination(&graph.hypergraph, &h)?;
    kv("graph", &graph.label);
    kv("heuristic", h.short_name());
    kv("tie_break", TIE_BREAK);
    kv("n_vertices", graph.hypergraph.n_vertices());
    kv("n_edges", graph.hypergraph.n_edges());
    kv("total_roots", report.total_roots);
    kv("total_root_cost", report.total_root_cost);
    write_order_outputs(
        out,
        &OrderOutput {
            graph: &graph.label,
            heuristic: h.short_name(),
            tie_break: TIE_BREAK,
            ordering: &ord,
            report: &report,
        },
    )
}

pub fn simulate(g: &GraphArgs, ordering: &str, out: Option<&Path>) -> CliResult {
    let graph = load(g)?;
    let (ord, label) = resolve_ordering(ordering, &graph.hypergraph)?;
    let report = simulate_ordering(&graph.hypergraph, &ord)?;
    kv("graph", &graph.label);
    kv("ordering", &label);
    kv("total_roots", report.total_roots);
    kv("total_root_cost", report.total_root_cost);
    write_order_outputs(
        out,
        &OrderOutput {
            graph: &graph.label,
            heuristic: label,
            tie_break: TIE_BREAK,
            ordering: &ord,
            report: &report,
        },
    )
}

pub fn baseline(g: &GraphArgs, trials: usize, seed: u64, out: Option<&Path>) -> CliResult {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let graph = load(g)?;
    let stats = random_baseline(&graph.hypergraph, trials, seed)?;
    kv("graph", &graph.label);
    kv("trials", trials);
    kv("seed", seed);
    kv("prng", &stats.prng);
    for (name, s) in [("roots", &stats.roots), ("cost", &stats.cost)] {
        kv(&format!("{name}_min"), s.min);
        kv(&format!("{name}_q1"), s.q1);
        kv(&format!("{name}_median"), s.median);
        kv(&format!("{name}_q3"), s.q3);
        kv(&format!("{name}_max"), s.max);
    }
    if let Some(p) = out_path(out, "baseline.json") {
        write_json(p, &stats)?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn solve(
    input: &Path,
    ordering: &str,
    side: &str,
    drop_tol: f64,
    eigvecs: bool,
    tol: f64,
    out: Option<&Path>,
) -> CliResult {
    let side: GershgorinSide = side
        .parse()
        .map_err(|e: edgelim::Error| CliError::Usage(e.to_string()))?;
    if drop_tol.is_nan() || drop_tol < 0.0 {
        return Err(CliError::Usage("--drop-tol must be nonnegative".into()));
    }
    let a = edgelim::matio::read_matrix_market(input)?.into_hermitian()?;
    let dec = edgelim::eliminator::decompose(&a, side);
    let (ord, label) = resolve_ordering(ordering, &a.hypergraph())?;
    let r = eliminate_decomposition(&dec, &ord, drop_tol)?;
    // residual against the matrix as read, not the reassembled one
    let norm = a.frobenius_norm();
    let dense = a.to_dense();
    let mut ql = r.q.clone();
    for (c, &l) in r.lambda.iter().enumerate() {
        ql.column_mut(c).scale_mut(l);
    }
    let residual_eig = (&dense * &r.q - ql).norm();
    let mut diag = r.diagnostics(norm);
    diag.residual_eig = residual_eig;

    kv("input", input.display());
    kv("n", a.n());
    kv("ordering", &label);
    kv("side", side);
    kv("terms", dec.terms.len());
    kv("total_nnz", diag.total_nnz);
    kv("norm_a", norm);
    kv("residual_eig", residual_eig);
    kv("residual_orth", r.residual_orth);
    if let Some(d) = out {
        write_text(d.join("eigenvalues.txt"), &write_eigenvalues(&r.lambda))?;
        write_json(d.join("diagnostics.json"), &diag)?;
        if eigvecs {
            write_text(d.join("q.mtx"), &write_array(&r.q))?;
        }
    } else {
        for l in &r.lambda {
            kv("lambda", format!("{l:e}"));
        }
    }
    let rel = if norm > 0.0 { residual_eig / norm } else { residual_eig };
    if rel > tol || r.residual_orth > tol {
        return Err(CliError::Residual(format!(
            "residuals above tolerance {tol}: relative eigen residual {rel:e}, orthogonality {:e}",
            r.residual_orth
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    graph: &'a str,
    ordering: &'a Ordering,
    fill: &'a edgelim::ordering::FillEquivalence,
    numeric: &'a ConsistencyReport,
}

pub fn verify(
    g: &GraphArgs,
    ordering: &str,
    seed: u64,
    drop_tol: f64,
    inject: Option<usize>,
    out: Option<&Path>,
) -> CliResult {
    let graph = load(g)?;
    let (ord, label) = resolve_ordering(ordering, &graph.hypergraph)?;
    let fill = symbolic_ge_fill_equivalence(&graph.hypergraph, &ord)?;
    let opts = ConsistencyOptions {
        drop_tolerance: drop_tol,
        inject_skip_update: inject,
    };
    // value-free inputs get seeded random values
    let numeric = match (&graph.matrix, &graph.pattern) {
        (Some(a), _) => predictive_consistency(a, &ord, &opts)?,
        (None, Some(p)) => predictive_consistency(&random_hermitian(p, seed)?, &ord, &opts)?,
        (None, None) => {
            predictive_consistency_decomposition(&random_decomposition(&graph.hypergraph, seed)?, &ord, &opts)?
        }
    };

    kv("graph", &graph.label);
    kv("ordering", &label);
    kv("fill_events", fill.fill_events.len());
    kv("growth_events", fill.growth_events.len());
    kv("fill_equivalent", fill.traces_equal());
    kv("support_consistent", numeric.consistent());
    kv("benign_cancellations", numeric.benign.len());
    kv("support_equality_fraction", numeric.equality_fraction());
    if let Some(p) = out_path(out, "verify.json") {
        write_json(
            p,
            &VerifyOutput {
                graph: &graph.label,
                ordering: &ord,
                fill: &fill,
                numeric: &numeric,
            },
        )?;
    }

    let mut problems = String::new();
    if !fill.traces_equal() {
        problems.push_str(&format!(
            "fill and growth traces differ: {} fill events, {} growth events, structure mismatches at steps {:?}\n",
            fill.fill_events.len(),
            fill.growth_events.len(),
            fill.structure_mismatches
        ));
    }
    problems.push_str(&numeric.mismatch_report());
    if problems.is_empty() {
        kv("status", "ok");
        Ok(())
    } else {
        kv("status", "violation");
        Err(CliError::Property(problems.trim_end().to_string()))
    }
}

pub fn dual(g: &GraphArgs, out: &Path) -> CliResult {
    let graph = load(g)?;
    let d = graph.hypergraph.dual();
    write_text(out, &d.graph.to_text())?;
    kv("graph", &graph.label);
    kv("n_vertices", d.graph.n_vertices());
    kv("n_edges", d.graph.n_edges());
    kv("dropped_isolated", graph.hypergraph.isolated_vertices().len());
    kv("out", out.display());
    Ok(())
}

pub fn analyze_fill(g: &GraphArgs, ordering: &str, out: Option<&Path>) -> CliResult {
    let graph = load(g)?;
    let (ord, label) = resolve_ordering(ordering, &graph.hypergraph)?;
    let fill = symbolic_ge_fill_equivalence(&graph.hypergraph, &ord)?;
    kv("graph", &graph.label);
    kv("ordering", &label);
    kv("fill_events", fill.fill_events.len());
    kv("growth_events", fill.growth_events.len());
    kv("structure_checked", fill.structure_checked);
    kv("traces_equal", fill.traces_equal());
    if let Some(p) = out_path(out, "fill.json") {
        write_json(p, &fill)?;
    }
    if fill.traces_equal() {
        Ok(())
    } else {
        Err(CliError::Property("fill and growth traces differ".into()))
    }
}
