use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, HyperEdge, Hypergraph};

use super::store::{Store, StoreKind};
use super::{CostReport, HeuristicKind, Ordering};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineOptions {
    /// Recompute every live score after each step instead of only the
    /// affected neighbourhood. Used to cross-check the incremental path.
    pub full_recompute: bool,
    /// Count the edge itself among its incident edges when scoring MI.
    pub mi_count_self: bool,
    /// Force a storage layout instead of choosing by graph size.
    pub store: Option<StoreKind>,
}

/// Mutable symbolic state of one elimination run.
///
/// Edges are addressed internally by position, with positions sorted by
/// edge id so that "smallest position" and "smallest id" coincide. The
/// hypergraph the state was built from is never touched.
#[derive(Debug, Clone)]
pub struct EliminationState {
    n_vertices: usize,
    ids: Vec<EdgeId>,
    pos_of: HashMap<EdgeId, usize>,
    live: Vec<bool>,
    n_live: usize,
    store: Store,
}

impl EliminationState {
    pub fn new(g: &Hypergraph) -> Self {
        Self::with_store(g, StoreKind::auto(g.n_vertices(), g.n_edges()))
    }

    pub fn with_store(g: &Hypergraph, kind: StoreKind) -> Self {
        let mut edges: Vec<&HyperEdge> = g.edges().iter().collect();
        edges.sort_by_key(|e| e.id);
        let ids: Vec<EdgeId> = edges.iter().map(|e| e.id).collect();
        let sets: Vec<Vec<usize>> = edges.iter().map(|e| e.vertices().to_vec()).collect();
        let m = ids.len();
        Self {
            n_vertices: g.n_vertices(),
            pos_of: ids.iter().enumerate().map(|(p, &id)| (id, p)).collect(),
            ids,
            live: vec![true; m],
            n_live: m,
            store: Store::new(kind, g.n_vertices(), sets),
        }
    }

    pub fn n_live(&self) -> usize {
        self.n_live
    }

    pub fn live_ids(&self) -> Vec<EdgeId> {
        (0..self.ids.len())
            .filter(|&p| self.live[p])
            .map(|p| self.ids[p])
            .collect()
    }

    /// Current vertices of a live edge, ascending.
    pub fn edge_vertices(&self, id: EdgeId) -> Result<Vec<usize>> {
        let p = self.live_pos(id)?;
        Ok(self.store.vertices(p))
    }

    /// Current hypergraph of live edges.
    pub fn to_hypergraph(&self) -> Hypergraph {
        let edges = (0..self.ids.len())
            .filter(|&p| self.live[p])
            .map(|p| HyperEdge::new(self.ids[p], self.store.vertices(p)).expect("nonempty"))
            .collect();
        Hypergraph::from_edges(self.n_vertices, edges).expect("state is consistent")
    }

    fn live_pos(&self, id: EdgeId) -> Result<usize> {
        match self.pos_of.get(&id) {
            Some(&p) if self.live[p] => Ok(p),
            _ => Err(Error::UnknownEdge(id)),
        }
    }

    /// Number of other live edges sharing a vertex with `id`.
    pub fn mu_i(&mut self, id: EdgeId) -> Result<u64> {
        let p = self.live_pos(id)?;
        Ok(self.store.neighbours(p).len() as u64)
    }

    /// Current vertex count of `id`.
    pub fn mu_r(&self, id: EdgeId) -> Result<u64> {
        let p = self.live_pos(id)?;
        Ok(self.store.size(p) as u64)
    }

    /// `|x|^k` plus, over live neighbours `e`, the growth `|x ∪ e|^k - |e|^k`.
    pub fn mu_c(&mut self, id: EdgeId, k: u32) -> Result<u64> {
        HeuristicKind::MinCost(k).validate()?;
        let p = self.live_pos(id)?;
        Ok(self.mu_c_pos(p, k))
    }

    fn mu_c_pos(&mut self, p: usize, k: u32) -> u64 {
        let x = self.store.size(p) as u64;
        let mut total = x.pow(k);
        for (f, common) in self.store.neighbours_with_common(p) {
            let e = self.store.size(f) as u64;
            let union = x + e - common as u64;
            total += union.pow(k) - e.pow(k);
        }
        total
    }

    /// Score of `id` under a greedy heuristic.
    pub fn score(&mut self, h: &HeuristicKind, id: EdgeId, opts: EngineOptions) -> Result<u64> {
        let p = self.live_pos(id)?;
        self.score_pos(h, p, opts)
    }

    fn score_pos(&mut self, h: &HeuristicKind, p: usize, opts: EngineOptions) -> Result<u64> {
        Ok(match h {
            HeuristicKind::MinIncidence => self.store.neighbours(p).len() as u64 + u64::from(opts.mi_count_self),
            HeuristicKind::MinRoots => self.store.size(p) as u64,
            HeuristicKind::MinCost(k) => {
                h.validate()?;
                self.mu_c_pos(p, *k)
            }
            HeuristicKind::Random(_) | HeuristicKind::Given(_) => {
                return Err(Error::InvalidHeuristic(format!("{h} has no per-edge score")))
            }
        })
    }

    /// Eliminates `id`; returns its size at elimination time and the ids of
    /// the edges that grew.
    pub fn eliminate(&mut self, id: EdgeId) -> Result<(usize, Vec<EdgeId>)> {
        let p = self.live_pos(id)?;
        let (size, grown) = self.eliminate_pos(p);
        Ok((size, grown.into_iter().map(|q| self.ids[q]).collect()))
    }

    fn eliminate_pos(&mut self, p: usize) -> (usize, Vec<usize>) {
        let (size, grown) = self.store.eliminate(p);
        self.live[p] = false;
        self.n_live -= 1;
        (size, grown)
    }
}

/// Runs the heuristic to completion with default options.
pub fn run_elimination(g: &Hypergraph, h: &HeuristicKind) -> Result<(Ordering, CostReport)> {
    run_elimination_with(g, h, EngineOptions::default())
}

pub fn run_elimination_with(g: &Hypergraph, h: &HeuristicKind, opts: EngineOptions) -> Result<(Ordering, CostReport)> {
    h.validate()?;
    match h {
        HeuristicKind::Given(ord) => {
            let report = simulate_ordering(g, ord)?;
            Ok((ord.clone(), report))
        }
        HeuristicKind::Random(seed) => {
            let ord = super::random_ordering(g, *seed);
            let report = simulate_ordering(g, &ord)?;
            Ok((ord, report))
        }
        _ => greedy(g, h, opts),
    }
}

fn greedy(g: &Hypergraph, h: &HeuristicKind, opts: EngineOptions) -> Result<(Ordering, CostReport)> {
    let mut st = match opts.store {
        Some(kind) => EliminationState::with_store(g, kind),
        None => EliminationState::new(g),
    };
    let m = st.ids.len();
    let mut keys = Vec::with_capacity(m);
    for p in 0..m {
        keys.push(st.score_pos(h, p, opts)?);
    }
    let mut queue: BTreeSet<(u64, usize)> = keys.iter().copied().zip(0..).collect();
    let look_ahead = matches!(h, HeuristicKind::MinCost(_));
    let mut order = Vec::with_capacity(m);
    let mut sizes = Vec::with_capacity(m);
    while let Some((_, p)) = queue.pop_first() {
        let (size, grown) = st.eliminate_pos(p);
        order.push(st.ids[p]);
        sizes.push(size);

        let affected: Vec<usize> = if opts.full_recompute {
            (0..m).filter(|&q| st.live[q]).collect()
        } else if look_ahead {
            st.store.around(&grown)
        } else {
            grown
        };
        for q in affected {
            let new_key = st.score_pos(h, q, opts)?;
            if new_key != keys[q] {
                queue.remove(&(keys[q], q));
                keys[q] = new_key;
                queue.insert((new_key, q));
            }
        }
    }
    Ok((Ordering(order), CostReport::from_sizes(sizes)))
}

/// Replays `ord` on `g` and records the size of each eliminated edge.
pub fn simulate_ordering(g: &Hypergraph, ord: &Ordering) -> Result<CostReport> {
    ord.validate_against(&g.edge_ids())?;
    let mut st = EliminationState::new(g);
    let mut sizes = Vec::with_capacity(ord.len());
    for id in ord.iter() {
        let p = st.live_pos(id)?;
        sizes.push(st.eliminate_pos(p).0);
    }
    Ok(CostReport::from_sizes(sizes))
}
