//! Symbolic Gaussian elimination on the edge–edge adjacency pattern, run
//! side by side with edge elimination.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hypergraph::{sorted_intersects, EdgeId, Hypergraph};

use super::{EliminationState, Ordering};

/// Structure comparison is quadratic in the live edge count per step, so it
/// is only done for graphs up to this many edges.
const STRUCTURE_CHECK_LIMIT: usize = 128;

/// `(step, a, b)` with `a < b`: edges `a` and `b` became adjacent in step
/// `step` (0-based).
pub type FillEvent = (usize, EdgeId, EdgeId);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillEquivalence {
    /// Fill created by symbolic Gaussian elimination of `pattern(A_E)`.
    pub fill_events: BTreeSet<FillEvent>,
    /// Edge pairs that started to intersect through edge elimination.
    pub growth_events: BTreeSet<FillEvent>,
    /// Steps after which the reduced `A_E` structure differed from the
    /// adjacency of the live hyperedges. Only checked for small graphs.
    pub structure_mismatches: Vec<usize>,
    pub structure_checked: bool,
}

impl FillEquivalence {
    pub fn traces_equal(&self) -> bool {
        self.fill_events == self.growth_events && self.structure_mismatches.is_empty()
    }
}

fn pair(a: EdgeId, b: EdgeId) -> (EdgeId, EdgeId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn symbolic_ge_fill_equivalence(g: &Hypergraph, ord: &Ordering) -> Result<FillEquivalence> {
    ord.validate_against(&g.edge_ids())?;
    let m = g.n_edges();
    let ids = g.edge_ids();
    let index_of = |id: EdgeId| ids.iter().position(|&x| x == id).expect("validated");

    // Gaussian elimination side: adjacency sets of A_E, indexed by storage position.
    let (_, ae) = g.adjacency_matrices();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
    for (i, j) in ae.iter().filter(|&(i, j)| i != j) {
        adj[i].insert(j);
    }
    let mut ge_live = vec![true; m];

    let mut st = EliminationState::new(g);
    let check = m <= STRUCTURE_CHECK_LIMIT;
    let mut out = FillEquivalence {
        fill_events: BTreeSet::new(),
        growth_events: BTreeSet::new(),
        structure_mismatches: Vec::new(),
        structure_checked: check,
    };

    for (step, id) in ord.iter().enumerate() {
        let p = index_of(id);
        let nbrs: Vec<usize> = adj[p].iter().copied().filter(|&q| ge_live[q]).collect();
        for (a, &qa) in nbrs.iter().enumerate() {
            for &qb in &nbrs[a + 1..] {
                if adj[qa].insert(qb) {
                    adj[qb].insert(qa);
                    let (x, y) = pair(ids[qa], ids[qb]);
                    out.fill_events.insert((step, x, y));
                }
            }
        }
        ge_live[p] = false;
        for &q in &nbrs {
            adj[q].remove(&p);
        }

        let before: Vec<(EdgeId, Vec<usize>)> = st
            .live_ids()
            .into_iter()
            .map(|e| (e, st.edge_vertices(e).expect("live")))
            .collect();
        let (_, grown) = st.eliminate(id)?;
        let prior = |e: EdgeId| &before.iter().find(|(x, _)| *x == e).expect("was live").1;
        for (a, &ea) in grown.iter().enumerate() {
            for &eb in &grown[a + 1..] {
                if !sorted_intersects(prior(ea), prior(eb)) {
                    let (x, y) = pair(ea, eb);
                    out.growth_events.insert((step, x, y));
                }
            }
        }

        if check {
            let live = st.live_ids();
            let mut ok = true;
            'outer: for (a, &ea) in live.iter().enumerate() {
                for &eb in &live[a + 1..] {
                    let meets = sorted_intersects(
                        &st.edge_vertices(ea).expect("live"),
                        &st.edge_vertices(eb).expect("live"),
                    );
                    if meets != adj[index_of(ea)].contains(&index_of(eb)) {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if !ok {
                out.structure_mismatches.push(step);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjoint_edges_have_no_events() {
        let g = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let r = symbolic_ge_fill_equivalence(&g, &Ordering(vec![1, 0])).unwrap();
        assert!(r.fill_events.is_empty() && r.growth_events.is_empty());
        assert!(r.traces_equal());
    }

    #[test]
    fn chain_lexicographic_traces_match() {
        let g = Hypergraph::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let r = symbolic_ge_fill_equivalence(&g, &Ordering(vec![0, 1, 2])).unwrap();
        assert!(r.fill_events.is_empty());
        assert!(r.traces_equal());
        let r = symbolic_ge_fill_equivalence(&g, &Ordering(vec![1, 0, 2])).unwrap();
        assert_eq!(r.fill_events.iter().copied().collect::<Vec<_>>(), vec![(0, 0, 2)]);
        assert!(r.traces_equal());
    }

    #[test]
    fn worked_example_traces_match() {
        let g = Hypergraph::new(5, vec![vec![0, 1, 4], vec![1, 2], vec![0, 2, 3, 4], vec![2, 3]]).unwrap();
        let r = symbolic_ge_fill_equivalence(&g, &Ordering(vec![0, 1, 2, 3])).unwrap();
        assert!(r.structure_checked);
        assert!(r.traces_equal());
    }

    #[test]
    fn invalid_ordering_rejected() {
        let g = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        assert!(symbolic_ge_fill_equivalence(&g, &Ordering(vec![3])).is_err());
    }
}
