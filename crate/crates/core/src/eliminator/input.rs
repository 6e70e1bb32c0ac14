use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::pattern::SparsityPattern;

/// Sparse Hermitian matrix stored as its real diagonal and strict lower
/// triangle. Zero off-diagonal values are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianInput {
    n: usize,
    diag: Vec<f64>,
    /// `a_{k,ℓ}` keyed by `(ℓ, k)` with `ℓ < k`, so iteration runs column
    /// by column like the edge numbering of [`Hypergraph::from_matrix_pattern`].
    lower: BTreeMap<(usize, usize), Complex64>,
}

impl HermitianInput {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            diag: vec![0.0; n],
            lower: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn set_diag(&mut self, i: usize, v: f64) -> Result<()> {
        self.check(i, i)?;
        self.diag[i] = v;
        Ok(())
    }

    /// Adds `v` to the entry at `(row, col)`, which must lie on or below the
    /// diagonal. Diagonal values must be real.
    pub fn add(&mut self, row: usize, col: usize, v: Complex64) -> Result<()> {
        self.check(row, col)?;
        if row < col {
            return Err(Error::InvalidInput(format!(
                "entry ({row}, {col}) is above the diagonal; store the lower triangle only"
            )));
        }
        if row == col {
            if v.im != 0.0 {
                return Err(Error::InvalidInput(format!(
                    "diagonal entry ({row}, {row}) has imaginary part {}",
                    v.im
                )));
            }
            self.diag[row] += v.re;
            return Ok(());
        }
        let slot = self.lower.entry((col, row)).or_insert(Complex64::new(0.0, 0.0));
        *slot += v;
        if *slot == Complex64::new(0.0, 0.0) {
            self.lower.remove(&(col, row));
        }
        Ok(())
    }

    fn check(&self, row: usize, col: usize) -> Result<()> {
        if row >= self.n || col >= self.n {
            return Err(Error::InvalidInput(format!(
                "entry ({row}, {col}) outside a {n}x{n} matrix",
                n = self.n
            )));
        }
        Ok(())
    }

    /// Builds from a dense matrix, rejecting it unless it is Hermitian to
    /// within `tol·max|a_ij|`.
    pub fn from_dense(a: &DMatrix<Complex64>, tol: f64) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::InvalidInput(format!("matrix is {}x{}", a.nrows(), a.ncols())));
        }
        let n = a.nrows();
        let amax = a.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        let mut out = Self::new(n);
        for i in 0..n {
            for j in 0..=i {
                if (a[(i, j)] - a[(j, i)].conj()).norm() > tol * amax {
                    return Err(Error::InvalidInput(format!("matrix is not Hermitian at ({i}, {j})")));
                }
            }
            out.diag[i] = a[(i, i)].re;
            for j in 0..i {
                if a[(i, j)] != Complex64::new(0.0, 0.0) {
                    out.lower.insert((j, i), a[(i, j)]);
                }
            }
        }
        Ok(out)
    }

    /// `(k, ℓ, a_{k,ℓ})` with `k > ℓ`, ordered by `(ℓ, k)`.
    pub fn lower_entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.lower.iter().map(|(&(l, k), &v)| (k, l, v))
    }

    pub fn n_offdiag(&self) -> usize {
        self.lower.len()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut a = DMatrix::<Complex64>::zeros(self.n, self.n);
        for i in 0..self.n {
            a[(i, i)] = Complex64::new(self.diag[i], 0.0);
        }
        for (k, l, v) in self.lower_entries() {
            a[(k, l)] = v;
            a[(l, k)] = v.conj();
        }
        a
    }

    pub fn frobenius_norm(&self) -> f64 {
        let d: f64 = self.diag.iter().map(|v| v * v).sum();
        let o: f64 = self.lower.values().map(|v| v.norm_sqr()).sum();
        (d + 2.0 * o).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        let d = self.diag.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        self.lower.values().fold(d, |m, v| m.max(v.norm()))
    }

    /// Symmetric off-diagonal pattern.
    pub fn pattern(&self) -> SparsityPattern {
        SparsityPattern::symmetric_from_positions(self.n, self.lower.keys().map(|&(l, k)| (k, l)))
            .expect("indices validated on insert")
    }

    /// Graph with one edge `{ℓ, k}` per stored off-diagonal pair; edge ids
    /// follow [`Self::lower_entries`].
    pub fn hypergraph(&self) -> Hypergraph {
        Hypergraph::new(self.n, self.lower.keys().map(|&(l, k)| vec![l, k]).collect())
            .expect("off-diagonal pairs are valid edges")
    }
}
