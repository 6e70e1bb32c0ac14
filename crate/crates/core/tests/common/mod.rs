#![allow(dead_code)]

use edgelim::eliminator::HermitianInput;
use edgelim::{Hypergraph, SparsityPattern};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random Hermitian matrix with complex off-diagonal entries kept with
/// probability `density` and a diagonal in `[-2, 2]`.
pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize, density: f64) -> HermitianInput {
    let mut a = HermitianInput::new(n);
    for i in 0..n {
        a.set_diag(i, rng.gen_range(-2.0..2.0)).unwrap();
        for j in 0..i {
            if rng.gen_bool(density) {
                a.add(i, j, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .unwrap();
            }
        }
    }
    a
}

/// Sorted eigenvalues from nalgebra's dense Hermitian solver.
pub fn dense_eigenvalues(a: &DMatrix<Complex64>) -> Vec<f64> {
    let mut v: Vec<f64> = a.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Random hypergraph with `m` edges of 1 to 4 vertices over `n` vertices.
pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Hypergraph {
    let verts: Vec<usize> = (0..n).collect();
    let edges = (0..m)
        .map(|_| {
            let k = rng.gen_range(1..=4.min(n));
            verts.choose_multiple(rng, k).copied().collect()
        })
        .collect();
    Hypergraph::new(n, edges).unwrap()
}

pub fn chain(n: usize) -> Hypergraph {
    Hypergraph::new(n, (0..n - 1).map(|i| vec![i, i + 1]).collect()).unwrap()
}

/// Connected symmetric pattern with a full diagonal: a random spanning
/// tree plus extra entries with probability `extra`.
pub fn random_irreducible_pattern<R: Rng>(rng: &mut R, n: usize, extra: f64) -> SparsityPattern {
    let mut p = SparsityPattern::new(n, n);
    for i in 0..n {
        p.insert(i, i).unwrap();
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    for k in 1..n {
        let (a, b) = (perm[k], perm[rng.gen_range(0..k)]);
        p.insert(a, b).unwrap();
        p.insert(b, a).unwrap();
    }
    for i in 0..n {
        for j in 0..i {
            if rng.gen_bool(extra) {
                p.insert(i, j).unwrap();
                p.insert(j, i).unwrap();
            }
        }
    }
    p
}
