use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

use super::{simulate_ordering, Ordering};

/// Generator and shuffle used for every random ordering, recorded in reports.
pub const PRNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.3) + Fisher-Yates shuffle (rand 0.8)";

/// Five-number summary; quartiles use linear interpolation between order
/// statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl Summary {
    pub fn of(values: &[u64]) -> Self {
        let mut v: Vec<f64> = values.iter().map(|&x| x as f64).collect();
        v.sort_by(f64::total_cmp);
        let q = |p: f64| {
            if v.is_empty() {
                return f64::NAN;
            }
            let h = p * (v.len() - 1) as f64;
            let lo = h.floor() as usize;
            let hi = h.ceil() as usize;
            v[lo] + (h - lo as f64) * (v[hi] - v[lo])
        };
        Self {
            min: q(0.0),
            q1: q(0.25),
            median: q(0.5),
            q3: q(0.75),
            max: q(1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineStats {
    pub trials: usize,
    pub seed: u64,
    pub prng: String,
    pub roots: Summary,
    pub cost: Summary,
    pub raw_roots: Vec<u64>,
    pub raw_cost: Vec<u64>,
}

/// Uniform random permutation of `g`'s edge ids.
pub fn random_ordering(g: &Hypergraph, seed: u64) -> Ordering {
    let mut ids = g.edge_ids();
    ids.sort_unstable();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ids.shuffle(&mut rng);
    Ordering(ids)
}

/// Simulates `trials` random orderings; trial `t` uses seed `seed + t`, so
/// the result does not depend on how trials are scheduled across threads.
pub fn random_baseline(g: &Hypergraph, trials: usize, seed: u64) -> Result<BaselineStats> {
    if trials == 0 {
        return Err(Error::InvalidInput("baseline needs at least one trial".into()));
    }
    let reports = (0..trials as u64)
        .into_par_iter()
        .map(|t| simulate_ordering(g, &random_ordering(g, seed.wrapping_add(t))))
        .collect::<Result<Vec<_>>>()?;
    let raw_roots: Vec<u64> = reports.iter().map(|r| r.total_roots).collect();
    let raw_cost: Vec<u64> = reports.iter().map(|r| r.total_root_cost).collect();
    Ok(BaselineStats {
        trials,
        seed,
        prng: PRNG_NAME.to_string(),
        roots: Summary::of(&raw_roots),
        cost: Summary::of(&raw_cost),
        raw_roots,
        raw_cost,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Hypergraph {
        Hypergraph::new(n, (0..n - 1).map(|i| vec![i, i + 1]).collect()).unwrap()
    }

    #[test]
    fn summary_quartiles() {
        let s = Summary::of(&[4, 1, 3, 2, 5]);
        assert_eq!((s.min, s.q1, s.median, s.q3, s.max), (1.0, 2.0, 3.0, 4.0, 5.0));
        let s = Summary::of(&[1, 2, 3, 4]);
        assert_eq!((s.q1, s.median, s.q3), (1.75, 2.5, 3.25));
    }

    #[test]
    fn single_trial_single_edge() {
        let b = random_baseline(&chain(2), 1, 3).unwrap();
        assert_eq!(b.roots.min, 2.0);
        assert_eq!(b.roots.max, 2.0);
        assert!(random_baseline(&chain(2), 0, 3).is_err());
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let g = chain(40);
        assert_eq!(random_baseline(&g, 8, 11).unwrap(), random_baseline(&g, 8, 11).unwrap());
        assert_ne!(random_ordering(&g, 1), random_ordering(&g, 2));
    }

    #[test]
    fn random_orderings_on_long_chain_exceed_optimum() {
        let b = random_baseline(&chain(256), 20, 2024).unwrap();
        assert!(b.roots.min > 2048.0, "min {}", b.roots.min);
    }
}
