//! Eigensolver for diagonal-plus-rank-1 Hermitian matrices `D + ρ z zᴴ`.
//!
//! The pipeline is: normalise and sort, deflate components that need no
//! root (tiny `z_j` or repeated `d_j`), solve the secular equation once per
//! remaining interval, and rebuild eigenvectors from a recomputed `ẑ` so
//! they stay orthogonal when roots cluster.

mod deflate;
mod eigvec;
mod solve;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use deflate::{deflate, DeflationResult, PlaneRotation};
pub use eigvec::eigenvectors;
pub use solve::{secular_function, solve_secular, SecularRoots};

/// Default relative deflation threshold.
pub const DEFAULT_DEFLATION_TOL: f64 = 64.0 * f64::EPSILON;

/// Allowed deviation of `‖z‖` from one in a [`RankOneProblem`].
const NORM_TOL: f64 = 1e-12;

/// `D + ρ z zᴴ` with `d` sorted non-decreasing, `ρ > 0` and `‖z‖ = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankOneProblem {
    d: Vec<f64>,
    rho: f64,
    z: Vec<Complex64>,
}

impl RankOneProblem {
    pub fn new(d: Vec<f64>, rho: f64, z: Vec<Complex64>) -> Result<Self> {
        if d.len() != z.len() {
            return Err(Error::InvalidInput(format!(
                "d has {} entries but z has {}",
                d.len(),
                z.len()
            )));
        }
        if d.windows(2).any(|w| w[0].partial_cmp(&w[1]).is_none_or(|o| o.is_gt())) {
            return Err(Error::InvalidInput("d must be sorted non-decreasing".into()));
        }
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::InvalidInput(format!("rho must be positive, got {rho}")));
        }
        let norm = z.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL * (z.len().max(1) as f64) {
            return Err(Error::InvalidInput(format!("z must have unit norm, got {norm}")));
        }
        Ok(Self { d, rho, z })
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn z(&self) -> &[Complex64] {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// `(d, ρ, |z|², roots)` as JSON, for triaging solver failures.
    pub fn debug_dump(&self, roots: Option<&SecularRoots>) -> String {
        let zabs2: Vec<f64> = self.z.iter().map(|v| v.norm_sqr()).collect();
        serde_json::json!({
            "d": self.d,
            "rho": self.rho,
            "zabs2": zabs2,
            "roots": roots.map(|r| &r.lambda),
        })
        .to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecularOptions {
    pub deflation_tol: f64,
}

impl Default for SecularOptions {
    fn default() -> Self {
        Self {
            deflation_tol: DEFAULT_DEFLATION_TOL,
        }
    }
}

/// Eigendecomposition of `diag(d) + ρ z zᴴ`: `lambda` ascending, column `k`
/// of `q` the eigenvector for `lambda[k]`, rows in the caller's index order.
#[derive(Debug, Clone)]
pub struct RankOneEig {
    pub q: DMatrix<Complex64>,
    pub lambda: Vec<f64>,
    /// Set when `z` or `ρ` was zero and nothing had to be solved.
    pub trivial: bool,
    /// Number of secular roots actually computed.
    pub n_roots: usize,
}

pub fn rank_one_eig(d_in: &[f64], rho: f64, z_in: &[Complex64]) -> Result<RankOneEig> {
    rank_one_eig_with(d_in, rho, z_in, SecularOptions::default())
}

/// Full rank-1 update for arbitrary `d` order, any sign of `ρ` and any norm
/// of `z`.
///
/// `ρ‖z‖²` is folded into `ρ`; a negative `ρ` is handled by solving the
/// mirrored problem `-D + |ρ| z zᴴ` and negating its eigenvalues.
pub fn rank_one_eig_with(d_in: &[f64], rho: f64, z_in: &[Complex64], opts: SecularOptions) -> Result<RankOneEig> {
    let m = d_in.len();
    if z_in.len() != m {
        return Err(Error::InvalidInput(format!(
            "d has {m} entries but z has {}",
            z_in.len()
        )));
    }
    if !rho.is_finite() || d_in.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite input to rank-1 update".into()));
    }
    let nz2: f64 = z_in.iter().map(|v| v.norm_sqr()).sum();
    let mirror = rho < 0.0;
    let sign = if mirror { -1.0 } else { 1.0 };

    // sorted order of the (possibly mirrored) diagonal
    let dm: Vec<f64> = d_in.iter().map(|&v| sign * v).collect();
    let mut perm: Vec<usize> = (0..m).collect();
    perm.sort_by(|&a, &b| dm[a].total_cmp(&dm[b]).then(a.cmp(&b)));

    if nz2 == 0.0 || rho == 0.0 {
        return Ok(finish(m, &perm, sign, dm_sorted(&dm, &perm), real_identity(m), true, 0));
    }

    let norm = nz2.sqrt();
    let d_s = dm_sorted(&dm, &perm);
    let z_s: Vec<Complex64> = perm.iter().map(|&i| z_in[i] / norm).collect();
    let problem = RankOneProblem::new(d_s.clone(), rho.abs() * nz2, z_s)?;
    let defl = deflate(&problem, opts.deflation_tol);

    // eigenvalues and real eigenvectors in the deflated basis
    let mut values = d_s.clone();
    let mut basis = real_identity(m);
    let k = defl.kept.len();
    if k > 0 {
        let wk: Vec<f64> = defl.kept.iter().map(|&i| defl.weights[i]).collect();
        let s2: f64 = wk.iter().map(|w| w * w).sum();
        let dk: Vec<f64> = defl.kept.iter().map(|&i| d_s[i]).collect();
        let zk2: Vec<f64> = wk.iter().map(|w| w * w / s2).collect();
        let rho_k = problem.rho() * s2;
        let roots = solve_secular(&dk, rho_k, &zk2)?;
        let kept_problem =
            RankOneProblem::new(dk, rho_k, zk2.iter().map(|&v| Complex64::new(v.sqrt(), 0.0)).collect())?;
        let u = eigenvectors(&kept_problem, &roots);
        for (a, &i) in defl.kept.iter().enumerate() {
            values[i] = roots.lambda[a];
            basis[(i, i)] = 0.0;
        }
        for (a, &i) in defl.kept.iter().enumerate() {
            for (b, &r) in defl.kept.iter().enumerate() {
                basis[(r, i)] = u[(b, a)].re;
            }
        }
    }
    // Undo the deflation rotations: basis <- G_1 ... G_t basis.
    for rot in defl.rotations.iter().rev() {
        rot.apply_rows(&mut basis);
    }
    Ok(finish_with_phases(
        m,
        &perm,
        sign,
        values,
        basis,
        &defl.phase_scalings,
        k,
    ))
}

fn dm_sorted(dm: &[f64], perm: &[usize]) -> Vec<f64> {
    perm.iter().map(|&i| dm[i]).collect()
}

fn real_identity(m: usize) -> DMatrix<f64> {
    DMatrix::identity(m, m)
}

fn finish(
    m: usize,
    perm: &[usize],
    sign: f64,
    values: Vec<f64>,
    basis: DMatrix<f64>,
    trivial: bool,
    n_roots: usize,
) -> RankOneEig {
    let ones = vec![Complex64::new(1.0, 0.0); m];
    let mut out = finish_with_phases(m, perm, sign, values, basis, &ones, n_roots);
    out.trivial = trivial;
    out
}

/// Reorders eigenpairs ascending and maps rows back to caller order.
fn finish_with_phases(
    m: usize,
    perm: &[usize],
    sign: f64,
    values: Vec<f64>,
    basis: DMatrix<f64>,
    phases: &[Complex64],
    n_roots: usize,
) -> RankOneEig {
    let lambda_all: Vec<f64> = values.iter().map(|&v| sign * v).collect();
    let mut cols: Vec<usize> = (0..m).collect();
    cols.sort_by(|&a, &b| lambda_all[a].total_cmp(&lambda_all[b]).then(a.cmp(&b)));
    let mut q = DMatrix::<Complex64>::zeros(m, m);
    for (c_new, &c) in cols.iter().enumerate() {
        for r in 0..m {
            q[(perm[r], c_new)] = phases[r] * basis[(r, c)];
        }
    }
    RankOneEig {
        q,
        lambda: cols.iter().map(|&c| lambda_all[c]).collect(),
        trivial: false,
        n_roots,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn residual(d: &[f64], rho: f64, z: &[Complex64], e: &RankOneEig) -> f64 {
        let m = d.len();
        let mut a = DMatrix::<Complex64>::zeros(m, m);
        for i in 0..m {
            a[(i, i)] += c(d[i]);
            for j in 0..m {
                a[(i, j)] += z[i] * z[j].conj() * rho;
            }
        }
        let lam = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(m, e.lambda.iter().map(|&v| c(v))));
        (&a * &e.q - &e.q * lam).norm()
    }

    #[test]
    fn problem_validation() {
        assert!(RankOneProblem::new(vec![1.0, 0.0], 1.0, vec![c(1.0), c(0.0)]).is_err());
        assert!(RankOneProblem::new(vec![0.0, 1.0], -1.0, vec![c(1.0), c(0.0)]).is_err());
        assert!(RankOneProblem::new(vec![0.0, 1.0], 1.0, vec![c(1.0), c(1.0)]).is_err());
        assert!(RankOneProblem::new(vec![0.0, 1.0], 1.0, vec![c(0.6), Complex64::new(0.0, 0.8)]).is_ok());
    }

    #[test]
    fn unsorted_input_with_single_kept_component() {
        // z = √2·e₂ → ρ' = 2 and the kept 1x1 system moves -1 to 1
        let e = rank_one_eig(&[5.0, -1.0], 1.0, &[c(0.0), c(2f64.sqrt())]).unwrap();
        assert_abs_diff_eq!(e.lambda[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.lambda[1], 5.0, epsilon = 0.0);
        assert_abs_diff_eq!(e.q[(1, 0)].norm(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.q[(0, 1)].norm(), 1.0, epsilon = 1e-14);
        assert_eq!(e.n_roots, 1);
    }

    #[test]
    fn negative_rho_against_closed_form() {
        // [[−1, −1], [−1, 1]] has eigenvalues ±√2
        let z = [c(1.0 / 2f64.sqrt()), c(1.0 / 2f64.sqrt())];
        let e = rank_one_eig(&[0.0, 2.0], -2.0, &z).unwrap();
        assert_abs_diff_eq!(e.lambda[0], -(2f64.sqrt()), epsilon = 1e-14);
        assert_abs_diff_eq!(e.lambda[1], 2f64.sqrt(), epsilon = 1e-14);
        assert!(residual(&[0.0, 2.0], -2.0, &z, &e) < 1e-14);
    }

    #[test]
    fn zero_vector_is_trivial() {
        let e = rank_one_eig(&[3.0, 1.0, 2.0], 4.0, &[c(0.0); 3]).unwrap();
        assert!(e.trivial);
        assert_eq!(e.lambda, vec![1.0, 2.0, 3.0]);
        assert_eq!(e.q[(1, 0)], c(1.0));
        assert_eq!(e.q[(2, 1)], c(1.0));
        assert_eq!(e.q[(0, 2)], c(1.0));
    }

    #[test]
    fn trace_identity_with_complex_z() {
        let d = [0.3, -1.2, 2.5, 0.9];
        let z = [
            Complex64::new(0.4, -0.2),
            Complex64::new(-0.1, 0.7),
            Complex64::new(0.0, 0.3),
            Complex64::new(1.1, 0.2),
        ];
        let rho = 0.8;
        let e = rank_one_eig(&d, rho, &z).unwrap();
        let nz2: f64 = z.iter().map(|v| v.norm_sqr()).sum();
        let tr: f64 = e.lambda.iter().sum();
        assert_abs_diff_eq!(tr, d.iter().sum::<f64>() + rho * nz2, epsilon = 1e-13);
        assert!(residual(&d, rho, &z, &e) < 1e-13);
        let qhq = e.q.adjoint() * &e.q;
        assert!((qhq - DMatrix::<Complex64>::identity(4, 4)).norm() < 1e-14);
    }

    #[test]
    fn repeated_diagonal_deflates() {
        let z = [c(1.0), c(1.0), c(0.0)];
        let e = rank_one_eig(&[0.0, 0.0, 3.0], 0.5, &z).unwrap();
        assert_eq!(e.n_roots, 1);
        assert_eq!(e.lambda[0], 0.0);
        assert_abs_diff_eq!(e.lambda[1], 1.0, epsilon = 1e-15);
        assert_eq!(e.lambda[2], 3.0);
        assert!(residual(&[0.0, 0.0, 3.0], 0.5, &z, &e) < 1e-15);
    }
}
