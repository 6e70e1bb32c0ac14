use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::{EigResult, HermitianInput};

/// `[[0, Bᴴ], [B, 0]]` for an `m×n` matrix `B`; the first `n` indices carry
/// the right singular vectors and the last `m` the left ones.
pub fn svd_embedding(b: &DMatrix<Complex64>) -> Result<HermitianInput> {
    let (m, n) = b.shape();
    if b.iter().all(|v| *v == Complex64::new(0.0, 0.0)) {
        return Err(Error::InvalidInput("SVD embedding needs a nonzero matrix".into()));
    }
    let mut h = HermitianInput::new(m + n);
    for i in 0..m {
        for j in 0..n {
            if b[(i, j)] != Complex64::new(0.0, 0.0) {
                h.add(n + i, j, b[(i, j)])?;
            }
        }
    }
    Ok(h)
}

#[derive(Debug, Clone)]
pub struct SvdResult {
    /// `m × k`
    pub u: DMatrix<Complex64>,
    /// descending, length `k = min(m, n)`
    pub sigma: Vec<f64>,
    /// `n × k`
    pub v: DMatrix<Complex64>,
}

/// Reads `(U, Σ, V)` off an eigendecomposition of [`svd_embedding`]: the
/// eigenvector of `+σ` is `[v; u]/√2`.
pub fn svd_from_embedding(eig: &EigResult, m: usize, n: usize) -> Result<SvdResult> {
    if eig.lambda.len() != m + n {
        return Err(Error::InvalidInput(format!(
            "embedding has size {}, expected {}",
            eig.lambda.len(),
            m + n
        )));
    }
    let k = m.min(n);
    let s2 = std::f64::consts::SQRT_2;
    let mut u = DMatrix::<Complex64>::zeros(m, k);
    let mut v = DMatrix::<Complex64>::zeros(n, k);
    let mut sigma = Vec::with_capacity(k);
    for c in 0..k {
        let col = m + n - 1 - c;
        sigma.push(eig.lambda[col].max(0.0));
        for r in 0..n {
            v[(r, c)] = eig.q[(r, col)] * s2;
        }
        for r in 0..m {
            u[(r, c)] = eig.q[(n + r, col)] * s2;
        }
    }
    Ok(SvdResult { u, sigma, v })
}
