use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph};

use super::HermitianInput;

/// Which Gershgorin endpoint the diagonal `D` holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GershgorinSide {
    #[default]
    Lower,
    Upper,
}

impl fmt::Display for GershgorinSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GershgorinSide::Lower => "lower",
            GershgorinSide::Upper => "upper",
        })
    }
}

impl FromStr for GershgorinSide {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(GershgorinSide::Lower),
            "upper" => Ok(GershgorinSide::Upper),
            _ => Err(Error::InvalidInput(format!("unknown Gershgorin side `{s}`"))),
        }
    }
}

/// One rank-1 term `weight · z zᴴ` with sparse `z` (sorted by index).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub edge: EdgeId,
    pub weight: f64,
    pub z: Vec<(usize, Complex64)>,
}

impl Term {
    pub fn support(&self) -> Vec<usize> {
        self.z.iter().map(|&(i, _)| i).collect()
    }
}

/// `A = diag(d0) + Σ weight_e z_e z_eᴴ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub n: usize,
    pub d0: Vec<f64>,
    pub terms: Vec<Term>,
}

/// Splits `a` into its diagonal Gershgorin endpoints and one rank-1 term per
/// off-diagonal pair.
///
/// For `a_{k,ℓ} = r e^{iθ}` (`k > ℓ`) the lower side uses `z = e_ℓ + e^{iθ} e_k`
/// with weight `r`; the upper side uses `z = e_ℓ − e^{iθ} e_k` with weight `−r`.
pub fn decompose(a: &HermitianInput, side: GershgorinSide) -> Decomposition {
    let sign = match side {
        GershgorinSide::Lower => 1.0,
        GershgorinSide::Upper => -1.0,
    };
    let mut d0 = a.diag().to_vec();
    let mut terms = Vec::with_capacity(a.n_offdiag());
    for (edge, (k, l, v)) in a.lower_entries().enumerate() {
        let r = v.norm();
        let phase = v / r;
        d0[k] -= sign * r;
        d0[l] -= sign * r;
        terms.push(Term {
            edge,
            weight: sign * r,
            z: vec![(l, Complex64::new(1.0, 0.0)), (k, phase * sign)],
        });
    }
    Decomposition { n: a.n(), d0, terms }
}

impl Decomposition {
    /// Caller-supplied decomposition with arbitrary sparse terms, e.g.
    /// several off-diagonal entries grouped into one hyperedge.
    pub fn general(n: usize, d0: Vec<f64>, mut terms: Vec<Term>) -> Result<Self> {
        if d0.len() != n {
            return Err(Error::InvalidInput(format!(
                "d0 has {} entries, expected {n}",
                d0.len()
            )));
        }
        let mut ids = BTreeSet::new();
        for t in &mut terms {
            if !ids.insert(t.edge) {
                return Err(Error::InvalidInput(format!("duplicate term id {}", t.edge)));
            }
            t.z.sort_by_key(|&(i, _)| i);
            t.z.retain(|&(_, v)| v != Complex64::new(0.0, 0.0));
            if t.z.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::InvalidInput(format!("term {} repeats an index", t.edge)));
            }
            if t.z.is_empty() {
                return Err(Error::InvalidInput(format!("term {} has an all-zero vector", t.edge)));
            }
            if let Some(&(i, _)) = t.z.iter().find(|&&(i, _)| i >= n) {
                return Err(Error::InvalidInput(format!("term {} has index {i} >= {n}", t.edge)));
            }
        }
        Ok(Self { n, d0, terms })
    }

    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let mut a = DMatrix::<Complex64>::zeros(self.n, self.n);
        for (i, &d) in self.d0.iter().enumerate() {
            a[(i, i)] = Complex64::new(d, 0.0);
        }
        for t in &self.terms {
            for &(i, zi) in &t.z {
                for &(j, zj) in &t.z {
                    a[(i, j)] += zi * zj.conj() * t.weight;
                }
            }
        }
        a
    }

    /// Hypergraph of term supports; edge ids are the term ids.
    pub fn hypergraph(&self) -> Result<Hypergraph> {
        let edges = self
            .terms
            .iter()
            .map(|t| crate::hypergraph::HyperEdge::new(t.edge, t.support()))
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::from_edges(self.n, edges)
    }
}
