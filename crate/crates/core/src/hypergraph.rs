//! Undirected hypergraphs and their edge elimination.
//!
//! A hypergraph holds a fixed vertex count and an ordered list of hyperedges,
//! each a sorted, duplicate-free set of vertex indices. Edge ids are stable
//! handles: elimination removes one edge and grows its neighbours, but never
//! renumbers anything, so an ordering expressed in ids stays valid throughout.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::SparsityPattern;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HyperEdge {
    pub id: EdgeId,
    vertices: Vec<VertexId>,
}

impl HyperEdge {
    /// Builds an edge from any vertex list; the list is sorted and deduplicated.
    pub fn new(id: EdgeId, mut vertices: Vec<VertexId>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(Error::InvalidInput(format!("hyperedge {id} is empty")));
        }
        Ok(Self { id, vertices })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn intersects(&self, other: &HyperEdge) -> bool {
        sorted_intersects(&self.vertices, &other.vertices)
    }
}

/// Linear-merge test for a common element of two sorted slices.
pub(crate) fn sorted_intersects(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Linear-merge union of two sorted, duplicate-free slices.
pub(crate) fn sorted_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    n_vertices: usize,
    edges: Vec<HyperEdge>,
}

/// Result of [`Hypergraph::dual`]: the dual hypergraph plus, for each dual
/// edge, the vertex of the original hypergraph it stands for. Isolated
/// vertices have empty dual edges and are dropped, so the map is needed to
/// translate back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dual {
    pub graph: Hypergraph,
    pub edge_to_vertex: Vec<VertexId>,
}

impl Hypergraph {
    /// Builds a hypergraph with edge ids `0..edges.len()` in the given order.
    pub fn new(n_vertices: usize, edges: Vec<Vec<VertexId>>) -> Result<Self> {
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(id, vs)| HyperEdge::new(id, vs))
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(n_vertices, edges)
    }

    /// Builds a hypergraph from edges carrying their own ids.
    pub fn from_edges(n_vertices: usize, edges: Vec<HyperEdge>) -> Result<Self> {
        let mut ids = HashSet::with_capacity(edges.len());
        for e in &edges {
            if !ids.insert(e.id) {
                return Err(Error::InvalidInput(format!("duplicate edge id {}", e.id)));
            }
            if e.vertices.is_empty() {
                return Err(Error::InvalidInput(format!("hyperedge {} is empty", e.id)));
            }
            if let Some(&v) = e.vertices.last() {
                if v >= n_vertices {
                    return Err(Error::InvalidInput(format!(
                        "hyperedge {} references vertex {v} but there are only {n_vertices} vertices",
                        e.id
                    )));
                }
            }
        }
        Ok(Self { n_vertices, edges })
    }

    /// Graph of a symmetric matrix pattern: one vertex per index and one
    /// two-vertex edge per strictly-lower-triangle nonzero. The diagonal is
    /// ignored. Edge ids follow column-major order of the lower triangle.
    pub fn from_matrix_pattern(pattern: &SparsityPattern) -> Result<Self> {
        if !pattern.is_square() {
            return Err(Error::InvalidPattern(format!(
                "matrix pattern must be square, got {}x{}",
                pattern.n_rows(),
                pattern.n_cols()
            )));
        }
        if let Some((i, j)) = pattern.iter().find(|&(i, j)| !pattern.contains(j, i)) {
            return Err(Error::InvalidPattern(format!(
                "pattern is not symmetric: ({i}, {j}) present but ({j}, {i}) missing"
            )));
        }
        let mut pairs: Vec<(usize, usize)> = pattern.strict_lower().map(|(k, l)| (l, k)).collect();
        pairs.sort_unstable();
        Self::new(pattern.n_rows(), pairs.into_iter().map(|(l, k)| vec![l, k]).collect())
    }

    /// Hypergraph whose edge–edge adjacency pattern reproduces `pattern`.
    ///
    /// There is one vertex per strictly-lower nonzero `(i, j)`, numbered in
    /// row-major order, and edge `j` collects the vertices from column `j` and
    /// row `j` of the strict lower triangle. The pattern must be irreducible,
    /// otherwise some edge would be empty.
    pub fn from_spd_pattern(pattern: &SparsityPattern) -> Result<Self> {
        if !pattern.is_symmetric() {
            return Err(Error::InvalidPattern("pattern must be square and symmetric".into()));
        }
        if !pattern.is_irreducible() {
            return Err(Error::InvalidPattern(
                "pattern is reducible; some row has no off-diagonal nonzero".into(),
            ));
        }
        let n = pattern.n_rows();
        let mut edges = vec![Vec::new(); n];
        let mut n_vertices = 0;
        for (i, j) in pattern.strict_lower() {
            edges[j].push(n_vertices);
            edges[i].push(n_vertices);
            n_vertices += 1;
        }
        if n == 1 {
            // A 1x1 matrix has no off-diagonal entries; one shared vertex
            // gives the single edge the required self-adjacency.
            return Self::new(1, vec![vec![0]]);
        }
        Self::new(n_vertices, edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[HyperEdge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.edges.iter().map(|e| e.id).collect()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&HyperEdge> {
        self.edges.iter().find(|e| e.id == id)
    }

    /// Removes edge `x` and replaces every edge meeting it by its union with `x`.
    /// Edges disjoint from `x` and the vertex set are left untouched.
    pub fn eliminate_edge(&self, x: EdgeId) -> Result<Self> {
        let xe = self.edge(x).ok_or(Error::UnknownEdge(x))?;
        let edges = self
            .edges
            .iter()
            .filter(|e| e.id != x)
            .map(|e| {
                if e.intersects(xe) {
                    HyperEdge {
                        id: e.id,
                        vertices: sorted_union(&e.vertices, &xe.vertices),
                    }
                } else {
                    e.clone()
                }
            })
            .collect();
        Ok(Self {
            n_vertices: self.n_vertices,
            edges,
        })
    }

    /// `|V| × |E|` node–edge incidence pattern; column `j` is the `j`-th edge
    /// in storage order.
    pub fn incidence_matrix(&self) -> SparsityPattern {
        let mut p = SparsityPattern::new(self.n_vertices, self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            for &v in &e.vertices {
                p.insert(v, j).expect("vertex indices validated on construction");
            }
        }
        p
    }

    /// Vertex–vertex and edge–edge adjacency patterns, `I·Iᵀ` and `Iᵀ·I`.
    pub fn adjacency_matrices(&self) -> (SparsityPattern, SparsityPattern) {
        let mut av = SparsityPattern::new(self.n_vertices, self.n_vertices);
        for e in &self.edges {
            for &a in &e.vertices {
                for &b in &e.vertices {
                    av.insert(a, b).expect("in range");
                }
            }
        }
        let m = self.edges.len();
        let mut ae = SparsityPattern::new(m, m);
        // Edges sharing a vertex are found through the vertex incidence lists.
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n_vertices];
        for (j, e) in self.edges.iter().enumerate() {
            for &v in &e.vertices {
                incident[v].push(j);
            }
        }
        for list in &incident {
            for &a in list {
                for &b in list {
                    ae.insert(a, b).expect("in range");
                }
            }
        }
        (av, ae)
    }

    /// Dual hypergraph: vertex `j` of the dual is edge `j` of `self` (storage
    /// order), and each non-isolated vertex `v` yields the dual edge of all
    /// edges containing `v`. Dual edge ids are `0..`.
    pub fn dual(&self) -> Dual {
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n_vertices];
        for (j, e) in self.edges.iter().enumerate() {
            for &v in &e.vertices {
                incident[v].push(j);
            }
        }
        let mut edges = Vec::new();
        let mut edge_to_vertex = Vec::new();
        for (v, list) in incident.into_iter().enumerate() {
            if !list.is_empty() {
                edges.push(HyperEdge {
                    id: edges.len(),
                    vertices: list,
                });
                edge_to_vertex.push(v);
            }
        }
        Dual {
            graph: Self {
                n_vertices: self.edges.len(),
                edges,
            },
            edge_to_vertex,
        }
    }

    /// Drops every edge whose vertex set repeats an earlier edge's. Only the
    /// symbolic engine may use this; numeric elimination keeps one term per edge.
    pub fn merge_identical(&self) -> Self {
        let mut seen = HashSet::new();
        let edges = self
            .edges
            .iter()
            .filter(|e| seen.insert(e.vertices.clone()))
            .cloned()
            .collect();
        Self {
            n_vertices: self.n_vertices,
            edges,
        }
    }

    pub fn isolated_vertices(&self) -> Vec<VertexId> {
        let mut used = vec![false; self.n_vertices];
        for e in &self.edges {
            for &v in &e.vertices {
                used[v] = true;
            }
        }
        (0..self.n_vertices).filter(|&v| !used[v]).collect()
    }

    /// Line-oriented text form: `n_vertices n_edges`, then one line of
    /// 1-based vertex indices per edge in storage order.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n_vertices, self.edges.len());
        for e in &self.edges {
            let line: Vec<String> = e.vertices.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    /// Parses [`Hypergraph::to_text`] output. Blank lines and lines starting
    /// with `%` or `#` are skipped. Edge ids are assigned in file order.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('%') && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header `n_vertices n_edges`".into(),
        })?;
        let nums = parse_usizes(header, hline)?;
        let [n_vertices, n_edges] = nums[..] else {
            return Err(Error::Parse {
                line: hline,
                msg: "header must be `n_vertices n_edges`".into(),
            });
        };
        let mut edges = Vec::with_capacity(n_edges);
        for (lineno, line) in lines {
            let vs = parse_usizes(line, lineno)?;
            if vs.is_empty() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "empty hyperedge".into(),
                });
            }
            let mut zero_based = Vec::with_capacity(vs.len());
            for v in vs {
                if v == 0 || v > n_vertices {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("vertex {v} outside 1..={n_vertices}"),
                    });
                }
                zero_based.push(v - 1);
            }
            edges.push(HyperEdge::new(edges.len(), zero_based)?);
        }
        if edges.len() != n_edges {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header announces {n_edges} edges, found {}", edges.len()),
            });
        }
        Self::from_edges(n_vertices, edges)
    }

    /// Map from edge id to vertex set, for order-independent comparisons.
    pub fn edge_map(&self) -> BTreeMap<EdgeId, Vec<VertexId>> {
        self.edges.iter().map(|e| (e.id, e.vertices.clone())).collect()
    }
}

fn parse_usizes(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("expected a non-negative integer, found `{t}`"),
            })
        })
        .collect()
}
