use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{RankOneProblem, SecularRoots};

/// Eigenvectors of a deflated problem (distinct `d`, nonzero `z`).
///
/// `|z_i|` is recomputed from the roots with the Löwner product formula
/// before forming `ẑ_i / (d_i − λ_j)`, which keeps the columns orthogonal
/// for clustered roots. The phases of `z` are reattached afterwards.
pub fn eigenvectors(p: &RankOneProblem, roots: &SecularRoots) -> DMatrix<Complex64> {
    let d = p.d();
    let m = d.len();
    let rho = p.rho();

    let zhat: Vec<f64> = (0..m)
        .map(|i| {
            let mut prod = -roots.d_minus_lambda(d, i, i) / rho;
            for j in 0..m {
                if j != i {
                    prod *= -roots.d_minus_lambda(d, i, j) / (d[j] - d[i]);
                }
            }
            prod.abs().sqrt()
        })
        .collect();

    let mut q = DMatrix::<Complex64>::zeros(m, m);
    for j in 0..m {
        let col: Vec<f64> = (0..m).map(|i| zhat[i] / roots.d_minus_lambda(d, i, j)).collect();
        let norm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
        for i in 0..m {
            let r = p.z()[i].norm();
            let phase = if r > 0.0 {
                p.z()[i] / r
            } else {
                Complex64::new(1.0, 0.0)
            };
            q[(i, j)] = phase * (col[i] / norm);
        }
    }
    q
}
