mod common;

use common::{chain, random_hypergraph, random_irreducible_pattern};
use edgelim::ordering::{
    brute_force_optimal, random_ordering, run_elimination, run_elimination_with, simulate_ordering,
    symbolic_ge_fill_equivalence, CostMeasure, EliminationState, EngineOptions, HeuristicKind, StoreKind,
};
use edgelim::Hypergraph;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    (1usize..=10, 1usize..=12, any::<u64>()).prop_map(|(n, m, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_hypergraph(&mut rng, n, m)
    })
}

fn small_hypergraph() -> impl Strategy<Value = Hypergraph> {
    (1usize..=8, 1usize..=7, any::<u64>()).prop_map(|(n, m, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_hypergraph(&mut rng, n, m)
    })
}

proptest! {
    #[test]
    fn incremental_scores_match_full_recompute(g in hypergraph()) {
        for h in HeuristicKind::greedy() {
            let fast = run_elimination(&g, &h).unwrap();
            let full = run_elimination_with(&g, &h, EngineOptions { full_recompute: true, ..Default::default() }).unwrap();
            prop_assert_eq!(fast, full, "{}", h);
        }
    }

    #[test]
    fn bitset_and_list_stores_agree(g in hypergraph()) {
        for h in HeuristicKind::greedy() {
            let bits = run_elimination_with(&g, &h, EngineOptions { store: Some(StoreKind::Bits), ..Default::default() }).unwrap();
            let lists = run_elimination_with(&g, &h, EngineOptions { store: Some(StoreKind::Lists), ..Default::default() }).unwrap();
            prop_assert_eq!(bits, lists, "{}", h);
        }
    }

    #[test]
    fn mi_self_count_does_not_change_ordering(g in hypergraph()) {
        let h = HeuristicKind::MinIncidence;
        let a = run_elimination(&g, &h).unwrap();
        let b = run_elimination_with(&g, &h, EngineOptions { mi_count_self: true, ..Default::default() }).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn greedy_report_replays_and_is_a_permutation(g in hypergraph()) {
        for h in HeuristicKind::greedy() {
            let (ord, report) = run_elimination(&g, &h).unwrap();
            ord.validate_against(&g.edge_ids()).unwrap();
            prop_assert_eq!(simulate_ordering(&g, &ord).unwrap(), report.clone());
        }
    }

    #[test]
    fn state_matches_functional_elimination(g in hypergraph(), seed in any::<u64>()) {
        let ord = random_ordering(&g, seed);
        let mut st = EliminationState::new(&g);
        let mut h = g.clone();
        for id in ord.iter() {
            prop_assert_eq!(st.edge_vertices(id).unwrap(), h.edge(id).unwrap().vertices().to_vec());
            st.eliminate(id).unwrap();
            h = h.eliminate_edge(id).unwrap();
            prop_assert_eq!(st.to_hypergraph().edge_map(), h.edge_map());
        }
        prop_assert_eq!(st.n_live(), 0);
    }

    #[test]
    fn eliminated_edge_sizes_never_shrink(g in hypergraph(), seed in any::<u64>()) {
        let ord = random_ordering(&g, seed);
        let mut st = EliminationState::new(&g);
        for id in ord.iter() {
            let before: Vec<_> = st.live_ids().into_iter().map(|e| (e, st.mu_r(e).unwrap())).collect();
            st.eliminate(id).unwrap();
            for (e, size) in before.into_iter().filter(|&(e, _)| e != id) {
                prop_assert!(st.mu_r(e).unwrap() >= size);
            }
        }
    }

    #[test]
    fn heuristics_never_beat_brute_force(g in small_hypergraph()) {
        let (_, best_roots) = brute_force_optimal(&g, CostMeasure::Roots).unwrap();
        let (_, best_cost) = brute_force_optimal(&g, CostMeasure::Cost).unwrap();
        for h in HeuristicKind::greedy() {
            let (_, r) = run_elimination(&g, &h).unwrap();
            prop_assert!(r.total_roots >= best_roots);
            prop_assert!(r.total_root_cost >= best_cost);
        }
    }

    #[test]
    fn fill_trace_equals_growth_trace(g in hypergraph(), seed in any::<u64>()) {
        let ord = random_ordering(&g, seed);
        let f = symbolic_ge_fill_equivalence(&g, &ord).unwrap();
        prop_assert!(f.structure_checked);
        prop_assert!(f.traces_equal(), "{:?}", f);
    }

    #[test]
    fn spd_pattern_round_trip(n in 1usize..=12, extra in 0.0f64..0.6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_irreducible_pattern(&mut rng, n, extra);
        let g = Hypergraph::from_spd_pattern(&p).unwrap();
        let (_, ae) = g.adjacency_matrices();
        prop_assert_eq!(ae, p);
    }
}

#[test]
fn mr_is_optimal_on_short_chains() {
    for n in 2..=9 {
        let g = chain(n);
        let (_, best) = brute_force_optimal(&g, CostMeasure::Roots).unwrap();
        let (_, r) = run_elimination(&g, &HeuristicKind::MinRoots).unwrap();
        assert_eq!(r.total_roots, best, "chain with {} edges", n - 1);
    }
}

#[test]
fn brute_force_rejects_large_graphs() {
    assert!(brute_force_optimal(&chain(20), CostMeasure::Roots).is_err());
}

#[test]
fn power_of_two_chains() {
    for k in 3..=8u32 {
        let n = 1usize << k;
        for h in [HeuristicKind::MinRoots, HeuristicKind::MinCost(1)] {
            let (_, r) = run_elimination(&chain(n), &h).unwrap();
            assert_eq!(r.total_roots, (n as u64) * k as u64, "{h} on chain of {n}");
        }
    }
}
