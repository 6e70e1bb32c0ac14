use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::EdgeId;
use crate::ordering::{run_elimination, HeuristicKind, Ordering};
use crate::secular::rank_one_eig;

use super::{decompose, Decomposition, GershgorinSide, HermitianInput, Term};

#[derive(Debug, Clone, PartialEq)]
pub struct EliminationOptions {
    pub gershgorin_side: GershgorinSide,
    /// Entries of an updated `z` with `|z_i| ≤ drop_tolerance·‖z‖` are
    /// dropped. Zero keeps every nonzero.
    pub drop_tolerance: f64,
    pub ordering: HeuristicKind,
}

impl Default for EliminationOptions {
    fn default() -> Self {
        Self {
            gershgorin_side: GershgorinSide::Lower,
            drop_tolerance: 0.0,
            ordering: HeuristicKind::MinRoots,
        }
    }
}

impl EliminationOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.drop_tolerance >= 0.0 && self.drop_tolerance.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "drop tolerance must be a finite nonnegative number, got {}",
                self.drop_tolerance
            )));
        }
        self.ordering.validate()
    }
}

#[derive(Debug, Clone)]
pub struct EigResult {
    pub q: DMatrix<Complex64>,
    pub lambda: Vec<f64>,
    pub residual_eig: f64,
    pub residual_orth: f64,
    pub per_step_nnz: Vec<usize>,
    /// `Σ |λ_j − d_j|` over the entries each step changed, both sorted.
    pub per_step_displacement: Vec<f64>,
    pub ordering: Ordering,
    pub drop_tolerance: f64,
}

/// Serializable summary of an [`EigResult`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigDiagnostics {
    pub n: usize,
    pub n_terms: usize,
    pub residual_eig: f64,
    pub residual_orth: f64,
    pub norm_a: f64,
    pub drop_tolerance: f64,
    pub total_nnz: u64,
    pub per_step_nnz: Vec<usize>,
    pub per_step_displacement: Vec<f64>,
    pub ordering: Ordering,
}

impl EigResult {
    pub fn diagnostics(&self, norm_a: f64) -> EigDiagnostics {
        EigDiagnostics {
            n: self.lambda.len(),
            n_terms: self.per_step_nnz.len(),
            residual_eig: self.residual_eig,
            residual_orth: self.residual_orth,
            norm_a,
            drop_tolerance: self.drop_tolerance,
            total_nnz: self.per_step_nnz.iter().map(|&v| v as u64).sum(),
            per_step_nnz: self.per_step_nnz.clone(),
            per_step_displacement: self.per_step_displacement.clone(),
            ordering: self.ordering.clone(),
        }
    }
}

/// Sparse vector that switches to dense storage once more than half its
/// entries are nonzero.
#[derive(Debug, Clone)]
pub(crate) enum ZVec {
    Sparse(Vec<(usize, Complex64)>),
    Dense(Vec<Complex64>),
}

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

impl ZVec {
    fn from_term(t: &Term) -> Self {
        ZVec::Sparse(t.z.clone())
    }

    pub(crate) fn support(&self) -> Vec<usize> {
        match self {
            ZVec::Sparse(v) => v.iter().filter(|(_, x)| *x != ZERO).map(|&(i, _)| i).collect(),
            ZVec::Dense(v) => (0..v.len()).filter(|&i| v[i] != ZERO).collect(),
        }
    }

    fn norm(&self) -> f64 {
        let s: f64 = match self {
            ZVec::Sparse(v) => v.iter().map(|(_, x)| x.norm_sqr()).sum(),
            ZVec::Dense(v) => v.iter().map(|x| x.norm_sqr()).sum(),
        };
        s.sqrt()
    }

    /// Values at the sorted positions `s`, or `None` if all are zero.
    fn gather(&self, s: &[usize]) -> Option<Vec<Complex64>> {
        let out: Vec<Complex64> = match self {
            ZVec::Sparse(v) => {
                let mut out = vec![ZERO; s.len()];
                let (mut a, mut b) = (0, 0);
                while a < v.len() && b < s.len() {
                    match v[a].0.cmp(&s[b]) {
                        std::cmp::Ordering::Less => a += 1,
                        std::cmp::Ordering::Greater => b += 1,
                        std::cmp::Ordering::Equal => {
                            out[b] = v[a].1;
                            a += 1;
                            b += 1;
                        }
                    }
                }
                out
            }
            ZVec::Dense(v) => s.iter().map(|&i| v[i]).collect(),
        };
        out.iter().any(|x| *x != ZERO).then_some(out)
    }

    /// Writes `vals` at positions `s`, dropping entries at or below `thr`.
    fn scatter(&mut self, s: &[usize], vals: &[Complex64], thr: f64, n: usize) {
        let keep = |x: &Complex64| *x != ZERO && (thr == 0.0 || x.norm() > thr);
        match self {
            ZVec::Sparse(v) => {
                let mut merged = Vec::with_capacity(v.len() + s.len());
                let (mut a, mut b) = (0, 0);
                while a < v.len() || b < s.len() {
                    let take_old = b == s.len() || (a < v.len() && v[a].0 < s[b]);
                    if take_old {
                        merged.push(v[a]);
                        a += 1;
                    } else {
                        if a < v.len() && v[a].0 == s[b] {
                            a += 1;
                        }
                        if keep(&vals[b]) {
                            merged.push((s[b], vals[b]));
                        }
                        b += 1;
                    }
                }
                if 2 * merged.len() > n {
                    let mut dense = vec![ZERO; n];
                    for (i, x) in merged {
                        dense[i] = x;
                    }
                    *self = ZVec::Dense(dense);
                } else {
                    *v = merged;
                }
            }
            ZVec::Dense(v) => {
                for (&i, x) in s.iter().zip(vals) {
                    v[i] = if keep(x) { *x } else { ZERO };
                }
            }
        }
    }
}

/// Information about one numeric elimination step.
#[derive(Debug, Clone)]
pub(crate) struct StepInfo {
    pub support: Vec<usize>,
    pub displacement: f64,
}

/// Right-looking numeric elimination state. `d` stays in matrix index
/// positions; each step only touches the support of the eliminated vector.
pub(crate) struct NumericEliminator {
    n: usize,
    d: Vec<f64>,
    q: DMatrix<Complex64>,
    weights: Vec<f64>,
    pending: Vec<Option<ZVec>>,
    index_of: HashMap<EdgeId, usize>,
    drop_tolerance: f64,
}

impl NumericEliminator {
    pub(crate) fn new(dec: &Decomposition, drop_tolerance: f64) -> Self {
        Self {
            n: dec.n,
            d: dec.d0.clone(),
            q: DMatrix::identity(dec.n, dec.n),
            weights: dec.terms.iter().map(|t| t.weight).collect(),
            pending: dec.terms.iter().map(|t| Some(ZVec::from_term(t))).collect(),
            index_of: dec.terms.iter().enumerate().map(|(i, t)| (t.edge, i)).collect(),
            drop_tolerance,
        }
    }

    /// Current numeric support of a pending term.
    pub(crate) fn support_of(&self, edge: EdgeId) -> Option<Vec<usize>> {
        let t = *self.index_of.get(&edge)?;
        self.pending[t].as_ref().map(|z| z.support())
    }

    pub(crate) fn step(&mut self, edge: EdgeId) -> Result<StepInfo> {
        let t = *self.index_of.get(&edge).ok_or(Error::UnknownEdge(edge))?;
        let z = self.pending[t]
            .take()
            .ok_or_else(|| Error::InvalidOrdering(format!("edge {edge} eliminated twice")))?;
        let s = z.support();
        if s.is_empty() {
            return Ok(StepInfo {
                support: s,
                displacement: 0.0,
            });
        }
        let zs = z.gather(&s).expect("support is nonzero");
        let ds: Vec<f64> = s.iter().map(|&i| self.d[i]).collect();
        let eig = rank_one_eig(&ds, self.weights[t], &zs)?;
        let b = eig.q;

        let mut old = ds;
        old.sort_by(f64::total_cmp);
        let displacement = old.iter().zip(&eig.lambda).map(|(a, l)| (l - a).abs()).sum();
        for (a, &i) in s.iter().enumerate() {
            self.d[i] = eig.lambda[a];
        }

        // Q[:, S] <- Q[:, S] B
        let mut qs = DMatrix::<Complex64>::zeros(self.n, s.len());
        for (a, &i) in s.iter().enumerate() {
            qs.set_column(a, &self.q.column(i));
        }
        let qs = complex_mul(&qs, &b);
        for (a, &i) in s.iter().enumerate() {
            self.q.set_column(i, &qs.column(a));
        }

        // z[S] <- Bᴴ z[S] for every pending vector that meets S, as one product
        let hit: Vec<(usize, Vec<Complex64>)> = self
            .pending
            .par_iter()
            .enumerate()
            .filter_map(|(k, slot)| slot.as_ref().and_then(|zv| zv.gather(&s)).map(|v| (k, v)))
            .collect();
        if hit.is_empty() {
            return Ok(StepInfo {
                support: s,
                displacement,
            });
        }
        let zs = DMatrix::from_fn(s.len(), hit.len(), |r, c| hit[c].1[r]);
        let w = complex_mul(&b.adjoint(), &zs);
        let mut col_of = vec![usize::MAX; self.pending.len()];
        for (c, (k, _)) in hit.iter().enumerate() {
            col_of[*k] = c;
        }
        let drop = self.drop_tolerance;
        let n = self.n;
        self.pending.par_iter_mut().enumerate().for_each(|(k, slot)| {
            if let (Some(zv), true) = (slot.as_mut(), col_of[k] != usize::MAX) {
                let thr = if drop > 0.0 { drop * zv.norm() } else { 0.0 };
                zv.scatter(&s, w.column(col_of[k]).as_slice(), thr, n);
            }
        });
        Ok(StepInfo {
            support: s,
            displacement,
        })
    }

    /// Sorts eigenpairs ascending and returns `(Q, λ)`.
    pub(crate) fn finish(self) -> (DMatrix<Complex64>, Vec<f64>) {
        let mut idx: Vec<usize> = (0..self.n).collect();
        idx.sort_by(|&a, &b| self.d[a].total_cmp(&self.d[b]).then(a.cmp(&b)));
        let mut q = DMatrix::<Complex64>::zeros(self.n, self.n);
        for (c, &i) in idx.iter().enumerate() {
            q.set_column(c, &self.q.column(i));
        }
        (q, idx.iter().map(|&i| self.d[i]).collect())
    }
}

/// Complex product through four real products, which use the blocked
/// real matrix kernel.
fn complex_mul(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ar, ai) = (a.map(|v| v.re), a.map(|v| v.im));
    let (br, bi) = (b.map(|v| v.re), b.map(|v| v.im));
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    re.zip_map(&im, Complex64::new)
}

pub(crate) fn residuals(a: &DMatrix<Complex64>, q: &DMatrix<Complex64>, lambda: &[f64]) -> (f64, f64) {
    let n = lambda.len();
    let mut ql = q.clone();
    for (c, &l) in lambda.iter().enumerate() {
        ql.column_mut(c).scale_mut(l);
    }
    let eig = (a * q - ql).norm();
    let orth = (q.adjoint() * q - DMatrix::<Complex64>::identity(n, n)).norm();
    (eig, orth)
}

/// Eliminates the terms of `dec` in `ordering` and checks the result
/// against the reassembled matrix.
pub fn eliminate_decomposition(dec: &Decomposition, ordering: &Ordering, drop_tolerance: f64) -> Result<EigResult> {
    let ids: Vec<EdgeId> = dec.terms.iter().map(|t| t.edge).collect();
    ordering.validate_against(&ids)?;
    run(dec, ordering, drop_tolerance, &dec.reconstruct())
}

fn run(dec: &Decomposition, ordering: &Ordering, drop_tolerance: f64, a: &DMatrix<Complex64>) -> Result<EigResult> {
    let mut el = NumericEliminator::new(dec, drop_tolerance);
    let mut per_step_nnz = Vec::with_capacity(ordering.len());
    let mut per_step_displacement = Vec::with_capacity(ordering.len());
    for id in ordering.iter() {
        let info = el.step(id)?;
        per_step_nnz.push(info.support.len());
        per_step_displacement.push(info.displacement);
    }
    let (q, lambda) = el.finish();
    let (residual_eig, residual_orth) = residuals(a, &q, &lambda);
    Ok(EigResult {
        q,
        lambda,
        residual_eig,
        residual_orth,
        per_step_nnz,
        per_step_displacement,
        ordering: ordering.clone(),
        drop_tolerance,
    })
}

/// Full eigendecomposition of `a` by successive edge elimination.
pub fn eliminate_all(a: &HermitianInput, opts: &EliminationOptions) -> Result<EigResult> {
    opts.validate()?;
    let dec = decompose(a, opts.gershgorin_side);
    let (ordering, _) = run_elimination(&a.hypergraph(), &opts.ordering)?;
    run(&dec, &ordering, opts.drop_tolerance, &a.to_dense())
}
