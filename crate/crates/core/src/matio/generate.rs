//! Seeded generators for the experiment graph families.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::eliminator::{Decomposition, HermitianInput, Term};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::pattern::SparsityPattern;

/// Graph family with its parameters. The text form is `chain:N`,
/// `lattice:RxC`, `disc:P:seedS` or `randsym:N:D:seedS`, where `D` is a
/// decimal or a fraction such as `8/128`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum GraphSpec {
    Chain { n: usize },
    Lattice { rows: usize, cols: usize },
    Disc { points: usize, seed: u64 },
    RandomSym { n: usize, density: f64, seed: u64 },
}

impl GraphSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        match *self {
            GraphSpec::Chain { n } if n < 2 => bad(format!("chain needs at least 2 nodes, got {n}")),
            GraphSpec::Lattice { rows, cols } if rows < 2 || cols < 2 => {
                bad(format!("lattice dimensions must be at least 2, got {rows}x{cols}"))
            }
            GraphSpec::Disc { points, .. } if points < 3 => {
                bad(format!("disc triangulation needs at least 3 points, got {points}"))
            }
            GraphSpec::RandomSym { n, .. } if n < 2 => bad(format!("random graph needs at least 2 nodes, got {n}")),
            GraphSpec::RandomSym { density, .. } if !(density > 0.0 && density <= 1.0) => {
                bad(format!("density must lie in (0, 1], got {density}"))
            }
            _ => Ok(()),
        }
    }

    pub fn n_nodes(&self) -> usize {
        match *self {
            GraphSpec::Chain { n } | GraphSpec::RandomSym { n, .. } => n,
            GraphSpec::Lattice { rows, cols } => rows * cols,
            GraphSpec::Disc { points, .. } => points,
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Chain { n } => write!(f, "chain:{n}"),
            GraphSpec::Lattice { rows, cols } => write!(f, "lattice:{rows}x{cols}"),
            GraphSpec::Disc { points, seed } => write!(f, "disc:{points}:seed{seed}"),
            GraphSpec::RandomSym { n, density, seed } => write!(f, "randsym:{n}:{density}:seed{seed}"),
        }
    }
}

fn parse_num<T: FromStr>(s: &str, what: &str, spec: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad {what} `{s}` in graph spec `{spec}`")))
}

fn parse_seed(s: &str, spec: &str) -> Result<u64> {
    parse_num(s.strip_prefix("seed").unwrap_or(s), "seed", spec)
}

fn parse_density(s: &str, spec: &str) -> Result<f64> {
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (f64, f64) = (parse_num(a, "density", spec)?, parse_num(b, "density", spec)?);
            Ok(a / b)
        }
        None => parse_num(s, "density", spec),
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let spec = match parts.as_slice() {
            ["chain", n] => GraphSpec::Chain {
                n: parse_num(n, "size", s)?,
            },
            ["lattice", dims] => {
                let (r, c) = dims
                    .split_once(['x', 'X'])
                    .ok_or_else(|| Error::InvalidInput(format!("lattice spec `{s}` needs RxC")))?;
                GraphSpec::Lattice {
                    rows: parse_num(r, "rows", s)?,
                    cols: parse_num(c, "cols", s)?,
                }
            }
            ["disc", p, seed] => GraphSpec::Disc {
                points: parse_num(p, "point count", s)?,
                seed: parse_seed(seed, s)?,
            },
            ["randsym", n, d, seed] => GraphSpec::RandomSym {
                n: parse_num(n, "size", s)?,
                density: parse_density(d, s)?,
                seed: parse_seed(seed, s)?,
            },
            _ => {
                return Err(Error::InvalidInput(format!(
                    "unknown graph spec `{s}` (expected chain:N, lattice:RxC, disc:P:seedS or randsym:N:D:seedS)"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl TryFrom<String> for GraphSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GraphSpec> for String {
    fn from(g: GraphSpec) -> String {
        g.to_string()
    }
}

/// Symmetric off-diagonal pattern of the graph described by `spec`.
pub fn generate(spec: &GraphSpec) -> Result<SparsityPattern> {
    spec.validate()?;
    let n = spec.n_nodes();
    let edges: Vec<(usize, usize)> = match *spec {
        GraphSpec::Chain { n } => (1..n).map(|i| (i, i - 1)).collect(),
        GraphSpec::Lattice { rows, cols } => {
            let mut e = Vec::with_capacity(2 * rows * cols);
            for r in 0..rows {
                for c in 0..cols {
                    let v = r * cols + c;
                    if c + 1 < cols {
                        e.push((v + 1, v));
                    }
                    if r + 1 < rows {
                        e.push((v + cols, v));
                    }
                }
            }
            e
        }
        GraphSpec::Disc { points, seed } => disc_edges(points, seed)?,
        GraphSpec::RandomSym { n, density, seed } => random_edges(n, density, seed),
    };
    SparsityPattern::symmetric_from_positions(n, edges)
}

fn disc_edges(points: usize, seed: u64) -> Result<Vec<(usize, usize)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(points);
    while pts.len() < points {
        let (x, y): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if x * x + y * y <= 1.0 {
            pts.push(delaunator::Point { x, y });
        }
    }
    let tri = delaunator::triangulate(&pts);
    if tri.triangles.is_empty() {
        return Err(Error::InvalidInput("disc points are degenerate".into()));
    }
    let mut edges = BTreeSet::new();
    for t in tri.triangles.chunks(3) {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            edges.insert((a.max(b), a.min(b)));
        }
    }
    Ok(edges.into_iter().collect())
}

/// `round(density·n²/2)` distinct node pairs drawn uniformly, so the
/// off-diagonal density is `density` up to rounding.
fn random_edges(n: usize, density: f64, seed: u64) -> Vec<(usize, usize)> {
    let pairs = n * (n - 1) / 2;
    let m = ((density * (n * n) as f64 / 2.0).round() as usize).min(pairs);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<usize> = rand::seq::index::sample(&mut rng, pairs, m).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(decode_pair).collect()
}

/// Inverse of `t = i(i−1)/2 + j` for `0 ≤ j < i`.
fn decode_pair(t: usize) -> (usize, usize) {
    let mut i = ((1.0 + (1.0 + 8.0 * t as f64).sqrt()) / 2.0) as usize;
    while i * (i - 1) / 2 > t {
        i -= 1;
    }
    while (i + 1) * i / 2 <= t {
        i += 1;
    }
    (i, t - i * (i - 1) / 2)
}

/// Number of connected components of a symmetric pattern.
pub fn connected_components(p: &SparsityPattern) -> usize {
    let n = p.n_rows();
    let mut adj = vec![Vec::new(); n];
    for (i, j) in p.iter() {
        if i != j {
            adj[i].push(j);
        }
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Random Hermitian matrix on `p`: off-diagonal real and imaginary parts
/// uniform in `[−1, 1]`, real diagonal equal to the absolute row sum plus a
/// uniform draw from `[0.5, 1.5]`.
pub fn random_hermitian(p: &SparsityPattern, seed: u64) -> Result<HermitianInput> {
    if !p.is_square() || !p.is_symmetric() {
        return Err(Error::InvalidPattern(
            "random values need a square symmetric pattern".into(),
        ));
    }
    let n = p.n_rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = HermitianInput::new(n);
    let mut rowsum = vec![0.0; n];
    for (i, j) in p.strict_lower() {
        let v = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        a.add(i, j, v)?;
        rowsum[i] += v.norm();
        rowsum[j] += v.norm();
    }
    for (i, s) in rowsum.into_iter().enumerate() {
        a.set_diag(i, s + rng.gen_range(0.5..=1.5))?;
    }
    Ok(a)
}

/// Random general decomposition with one term per hyperedge: `z` has
/// complex entries with parts uniform in `[−1, 1]` on the edge's vertices,
/// the weight is uniform in `±[0.5, 1.5]` and `D` uniform in `[−1, 1]`.
pub fn random_decomposition(g: &Hypergraph, seed: u64) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d0 = (0..g.n_vertices()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let terms = g
        .edges()
        .iter()
        .map(|e| {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            Term {
                edge: e.id,
                weight: sign * rng.gen_range(0.5..=1.5),
                z: e.vertices()
                    .iter()
                    .map(|&v| (v, Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))))
                    .collect(),
            }
        })
        .collect();
    Decomposition::general(g.n_vertices(), d0, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_decomposition_follows_hyperedges() {
        let g = Hypergraph::new(5, vec![vec![0, 1, 4], vec![1, 2], vec![0, 2, 3, 4], vec![2, 3]]).unwrap();
        let dec = random_decomposition(&g, 4).unwrap();
        assert_eq!(dec.hypergraph().unwrap().edge_map(), g.edge_map());
        assert_eq!(random_decomposition(&g, 4).unwrap().reconstruct(), dec.reconstruct());
    }

    #[test]
    fn spec_grammar_round_trips() {
        for s in [
            "chain:256",
            "lattice:16x16",
            "disc:600:seed3",
            "randsym:128:0.0625:seed7",
        ] {
            assert_eq!(s.parse::<GraphSpec>().unwrap().to_string(), s);
        }
        assert_eq!(
            "randsym:128:8/128:7".parse::<GraphSpec>().unwrap(),
            GraphSpec::RandomSym {
                n: 128,
                density: 0.0625,
                seed: 7
            }
        );
        for bad in [
            "chain:1",
            "lattice:1x5",
            "randsym:10:0:seed1",
            "randsym:10:1.5:seed1",
            "ring:5",
            "chain:x",
        ] {
            assert!(bad.parse::<GraphSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn edge_counts() {
        assert_eq!(
            generate(&GraphSpec::Chain { n: 256 }).unwrap().strict_lower().count(),
            255
        );
        let lat = generate(&GraphSpec::Lattice { rows: 16, cols: 16 }).unwrap();
        assert_eq!(lat.strict_lower().count(), 480);
        for seed in 0..5 {
            let g = generate(&GraphSpec::RandomSym {
                n: 128,
                density: 8.0 / 128.0,
                seed,
            })
            .unwrap();
            let m = g.strict_lower().count();
            assert!((500..=520).contains(&m), "{m}");
            assert!(g.is_symmetric());
        }
    }

    #[test]
    fn pair_decoding_is_bijective() {
        let mut t = 0;
        for i in 1..60 {
            for j in 0..i {
                assert_eq!(decode_pair(t), (i, j));
                t += 1;
            }
        }
    }

    #[test]
    fn disc_is_planar_connected_and_reproducible() {
        let spec = GraphSpec::Disc { points: 500, seed: 1 };
        let p = generate(&spec).unwrap();
        assert_eq!(p, generate(&spec).unwrap());
        assert_eq!(connected_components(&p), 1);
        // planar simple graphs have at most 3N − 6 edges
        assert!(p.strict_lower().count() <= 3 * 500 - 6);
        assert!((0..500).all(|i| !p.contains(i, i)));
    }

    #[test]
    fn random_values_are_dominant() {
        let p = generate(&GraphSpec::Lattice { rows: 3, cols: 3 }).unwrap();
        let a = random_hermitian(&p, 5).unwrap();
        assert_eq!(a.n_offdiag(), 12);
        let dense = a.to_dense();
        for i in 0..9 {
            let off: f64 = (0..9).filter(|&j| j != i).map(|j| dense[(i, j)].norm()).sum();
            assert!(dense[(i, i)].re > off);
        }
        assert_eq!(a, random_hermitian(&p, 5).unwrap());
    }
}
