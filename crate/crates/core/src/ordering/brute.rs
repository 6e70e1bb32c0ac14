use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph};

use super::{EliminationState, Ordering};

pub const BRUTE_FORCE_EDGE_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CostMeasure {
    /// `Σ|x|`
    Roots,
    /// `Σ|x|²`
    Cost,
}

impl CostMeasure {
    fn step(self, size: usize) -> u64 {
        let s = size as u64;
        match self {
            CostMeasure::Roots => s,
            CostMeasure::Cost => s * s,
        }
    }
}

type StateKey = Vec<(EdgeId, Vec<usize>)>;

fn key(st: &EliminationState) -> StateKey {
    st.live_ids()
        .into_iter()
        .map(|id| (id, st.edge_vertices(id).expect("live")))
        .collect()
}

/// Exhaustive search over all elimination orderings, memoized on the live
/// hypergraph. Limited to [`BRUTE_FORCE_EDGE_LIMIT`] edges.
pub fn brute_force_optimal(g: &Hypergraph, measure: CostMeasure) -> Result<(Ordering, u64)> {
    if g.n_edges() > BRUTE_FORCE_EDGE_LIMIT {
        return Err(Error::TooManyEdges {
            edges: g.n_edges(),
            limit: BRUTE_FORCE_EDGE_LIMIT,
        });
    }
    let mut memo: HashMap<StateKey, (u64, Option<EdgeId>)> = HashMap::new();
    let root = EliminationState::new(g);
    let best = solve(&root, measure, &mut memo);

    let mut st = root;
    let mut order = Vec::with_capacity(g.n_edges());
    while st.n_live() > 0 {
        let (_, choice) = memo[&key(&st)];
        let id = choice.expect("nonempty state has a choice");
        order.push(id);
        st.eliminate(id)?;
    }
    Ok((Ordering(order), best))
}

fn solve(st: &EliminationState, measure: CostMeasure, memo: &mut HashMap<StateKey, (u64, Option<EdgeId>)>) -> u64 {
    let k = key(st);
    if let Some(&(v, _)) = memo.get(&k) {
        return v;
    }
    let mut best = (if st.n_live() == 0 { 0 } else { u64::MAX }, None);
    for id in st.live_ids() {
        let mut next = st.clone();
        let (size, _) = next.eliminate(id).expect("live");
        let v = measure.step(size) + solve(&next, measure, memo);
        if v < best.0 {
            best = (v, Some(id));
        }
    }
    memo.insert(k, best);
    best.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::simulate_ordering;

    fn chain(n: usize) -> Hypergraph {
        Hypergraph::new(n, (0..n - 1).map(|i| vec![i, i + 1]).collect()).unwrap()
    }

    #[test]
    fn chain4_optimum_by_enumeration() {
        // all 6 orderings of 3 edges, replayed by hand-verified simulation
        let g = chain(4);
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let min = perms
            .iter()
            .map(|p| simulate_ordering(&g, &Ordering(p.to_vec())).unwrap().total_roots)
            .min()
            .unwrap();
        assert_eq!(min, 8);
        let (ord, best) = brute_force_optimal(&g, CostMeasure::Roots).unwrap();
        assert_eq!(best, 8);
        assert_eq!(simulate_ordering(&g, &ord).unwrap().total_roots, 8);
    }

    #[test]
    fn single_edge() {
        let (_, best) = brute_force_optimal(&chain(2), CostMeasure::Roots).unwrap();
        assert_eq!(best, 2);
        let (_, best) = brute_force_optimal(&chain(2), CostMeasure::Cost).unwrap();
        assert_eq!(best, 4);
    }

    #[test]
    fn chain8_optimum() {
        let (_, best) = brute_force_optimal(&chain(8), CostMeasure::Roots).unwrap();
        assert_eq!(best, 24);
    }

    #[test]
    fn limit_enforced() {
        let err = brute_force_optimal(&chain(13), CostMeasure::Roots).unwrap_err();
        assert!(err.to_string().contains("limited to 10"));
    }
}
