//! Symbolic edge-elimination engine and ordering heuristics.
//!
//! Every heuristic is greedy: at each step the live edge with the smallest
//! score is eliminated, ties going to the smallest edge id. The cost of a
//! step is the current vertex count `|x|` of the eliminated edge, which is
//! the number of secular-equation roots the numeric step has to find.

mod baseline;
mod brute;
mod engine;
mod fill;
mod store;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::EdgeId;

pub use baseline::{random_baseline, random_ordering, BaselineStats, Summary, PRNG_NAME};
pub use brute::{brute_force_optimal, CostMeasure, BRUTE_FORCE_EDGE_LIMIT};
pub use engine::{run_elimination, run_elimination_with, simulate_ordering, EliminationState, EngineOptions};
pub use fill::{symbolic_ge_fill_equivalence, FillEquivalence, FillEvent};
pub use store::StoreKind;

/// An edge-elimination sequence, by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ordering(pub Vec<EdgeId>);

impl Ordering {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.iter().copied()
    }

    /// Checks that `self` is a permutation of `ids`.
    pub fn validate_against(&self, ids: &[EdgeId]) -> Result<()> {
        if self.0.len() != ids.len() {
            return Err(Error::InvalidOrdering(format!(
                "ordering has {} entries but there are {} edges",
                self.0.len(),
                ids.len()
            )));
        }
        let mut a = self.0.clone();
        let mut b = ids.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if let Some(w) = a.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidOrdering(format!("edge {} appears twice", w[0])));
        }
        if a != b {
            let missing = b.iter().find(|id| a.binary_search(id).is_err());
            return Err(Error::InvalidOrdering(match missing {
                Some(id) => format!("edge {id} is never eliminated"),
                None => "ordering references unknown edges".into(),
            }));
        }
        Ok(())
    }
}

/// Greedy selection rule, or an ordering supplied from outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeuristicKind {
    /// Fewest intersecting live edges.
    MinIncidence,
    /// Fewest vertices.
    MinRoots,
    /// Fewest vertices plus look-ahead growth of the neighbours, in the
    /// `k`-th power (`k` is 1 or 2).
    MinCost(u32),
    /// Uniform random permutation from the given seed.
    Random(u64),
    Given(Ordering),
}

impl HeuristicKind {
    /// The four greedy heuristics, in report order.
    pub fn greedy() -> [HeuristicKind; 4] {
        [
            HeuristicKind::MinIncidence,
            HeuristicKind::MinRoots,
            HeuristicKind::MinCost(1),
            HeuristicKind::MinCost(2),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            HeuristicKind::MinCost(k) if !(1..=2).contains(k) => Err(Error::InvalidHeuristic(format!(
                "look-ahead power must be 1 or 2, got {k}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn short_name(&self) -> String {
        match self {
            HeuristicKind::MinIncidence => "mi".into(),
            HeuristicKind::MinRoots => "mr".into(),
            HeuristicKind::MinCost(k) => format!("mc{k}"),
            HeuristicKind::Random(seed) => format!("random:{seed}"),
            HeuristicKind::Given(_) => "given".into(),
        }
    }
}

impl fmt::Display for HeuristicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_name())
    }
}

impl FromStr for HeuristicKind {
    type Err = Error;

    /// Accepts `mi`, `mr`, `mc1`, `mc2` and `random:<seed>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "mi" => Ok(HeuristicKind::MinIncidence),
            "mr" => Ok(HeuristicKind::MinRoots),
            "mc1" => Ok(HeuristicKind::MinCost(1)),
            "mc2" => Ok(HeuristicKind::MinCost(2)),
            _ => {
                if let Some(seed) = s.strip_prefix("random:") {
                    let seed = seed
                        .parse()
                        .map_err(|_| Error::InvalidHeuristic(format!("bad seed in `{s}`")))?;
                    return Ok(HeuristicKind::Random(seed));
                }
                if let Some(k) = s.strip_prefix("mc") {
                    let k: u32 = k
                        .parse()
                        .map_err(|_| Error::InvalidHeuristic(format!("unknown heuristic `{s}`")))?;
                    let h = HeuristicKind::MinCost(k);
                    h.validate()?;
                    return Ok(h);
                }
                Err(Error::InvalidHeuristic(format!(
                    "unknown heuristic `{s}` (expected mi, mr, mc1, mc2 or random:<seed>)"
                )))
            }
        }
    }
}

/// Per-step sizes and the two accumulated cost measures of one elimination run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub per_step_sizes: Vec<usize>,
    pub total_roots: u64,
    pub total_root_cost: u64,
}

impl CostReport {
    pub fn from_sizes(per_step_sizes: Vec<usize>) -> Self {
        let total_roots = per_step_sizes.iter().map(|&s| s as u64).sum();
        let total_root_cost = per_step_sizes.iter().map(|&s| (s as u64) * (s as u64)).sum();
        Self {
            per_step_sizes,
            total_roots,
            total_root_cost,
        }
    }

    /// CSV with one row per elimination step:
    /// `step,edge_id,size,cum_roots,cum_cost`. Steps are 1-based.
    pub fn to_csv(&self, ordering: &Ordering) -> String {
        let mut out = String::from("step,edge_id,size,cum_roots,cum_cost\n");
        let (mut roots, mut cost) = (0u64, 0u64);
        for (i, (&size, id)) in self.per_step_sizes.iter().zip(ordering.iter()).enumerate() {
            roots += size as u64;
            cost += (size as u64) * (size as u64);
            out.push_str(&format!("{},{},{},{},{}\n", i + 1, id, size, roots, cost));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_heuristics() {
        assert_eq!("MR".parse::<HeuristicKind>().unwrap(), HeuristicKind::MinRoots);
        assert_eq!("mc2".parse::<HeuristicKind>().unwrap(), HeuristicKind::MinCost(2));
        assert_eq!("random:9".parse::<HeuristicKind>().unwrap(), HeuristicKind::Random(9));
        assert!("mc3".parse::<HeuristicKind>().is_err());
        assert!("md".parse::<HeuristicKind>().is_err());
        assert!(HeuristicKind::MinCost(0).validate().is_err());
    }

    #[test]
    fn ordering_validation() {
        let ids = [0, 1, 2];
        assert!(Ordering(vec![2, 0, 1]).validate_against(&ids).is_ok());
        assert!(Ordering(vec![0, 1]).validate_against(&ids).is_err());
        assert!(Ordering(vec![0, 0, 1]).validate_against(&ids).is_err());
        assert!(Ordering(vec![0, 1, 5]).validate_against(&ids).is_err());
    }

    #[test]
    fn csv_rows() {
        let r = CostReport::from_sizes(vec![2, 3, 3]);
        assert_eq!((r.total_roots, r.total_root_cost), (8, 22));
        let csv = r.to_csv(&Ordering(vec![1, 0, 2]));
        assert_eq!(
            csv,
            "step,edge_id,size,cum_roots,cum_cost\n1,1,2,2,4\n2,0,3,5,13\n3,2,3,8,22\n"
        );
    }
}
