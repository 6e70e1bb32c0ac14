use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::RankOneProblem;

/// Plane rotation in the `(i, j)` coordinate plane.
///
/// Acting on a weight vector it maps `(w_i, w_j)` to
/// `(c·w_i − s·w_j, s·w_i + c·w_j)`; deflation picks `c, s` so the new
/// `w_i` is zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneRotation {
    pub i: usize,
    pub j: usize,
    pub c: f64,
    pub s: f64,
}

impl PlaneRotation {
    /// `w ← Gᵀ w`.
    pub fn apply_to_weights(&self, w: &mut [f64]) {
        let (a, b) = (w[self.i], w[self.j]);
        w[self.i] = self.c * a - self.s * b;
        w[self.j] = self.s * a + self.c * b;
    }

    /// `M ← G M`, i.e. maps row coordinates of the rotated basis back.
    pub fn apply_rows(&self, m: &mut DMatrix<f64>) {
        for col in 0..m.ncols() {
            let (a, b) = (m[(self.i, col)], m[(self.j, col)]);
            m[(self.i, col)] = self.c * a + self.s * b;
            m[(self.j, col)] = -self.s * a + self.c * b;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeflationResult {
    /// Components that go to the secular solver, ascending.
    pub kept: Vec<usize>,
    pub rotations: Vec<PlaneRotation>,
    /// `z_j = phase_j · |z_j|`; one for zero entries.
    pub phase_scalings: Vec<Complex64>,
    pub locked_eigenpairs: Vec<(usize, f64)>,
    /// Real weights after phases and rotations are removed; exactly zero
    /// outside `kept`.
    pub weights: Vec<f64>,
}

/// Locks components with negligible `z_j` and merges nearly equal `d_j`
/// with plane rotations, leaving a system with distinct `d` and nonzero
/// weights.
pub fn deflate(p: &RankOneProblem, tol: f64) -> DeflationResult {
    let d = p.d();
    let m = d.len();
    let znorm = p.z().iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let dscale = d.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));

    let mut phase_scalings = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for v in p.z() {
        let r = v.norm();
        phase_scalings.push(if r > 0.0 { v / r } else { Complex64::new(1.0, 0.0) });
        weights.push(r);
    }

    let mut locked = Vec::new();
    let mut active = Vec::with_capacity(m);
    for j in 0..m {
        if weights[j] <= tol * znorm {
            weights[j] = 0.0;
            locked.push((j, d[j]));
        } else {
            active.push(j);
        }
    }

    let mut rotations = Vec::new();
    let mut kept = Vec::with_capacity(active.len());
    let mut prev: Option<usize> = None;
    for &j in &active {
        if let Some(i) = prev {
            if (d[j] - d[i]).abs() <= tol * dscale {
                let r = weights[i].hypot(weights[j]);
                let rot = PlaneRotation {
                    i,
                    j,
                    c: weights[j] / r,
                    s: weights[i] / r,
                };
                weights[i] = 0.0;
                weights[j] = r;
                rotations.push(rot);
                locked.push((i, d[i]));
                kept.pop();
            }
        }
        kept.push(j);
        prev = Some(j);
    }
    locked.sort_by_key(|&(i, _)| i);

    DeflationResult {
        kept,
        rotations,
        phase_scalings,
        locked_eigenpairs: locked,
        weights,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn unit_vector_keeps_one() {
        let p = RankOneProblem::new(vec![0.0, 1.0, 2.0], 1.0, vec![c(1.0), c(0.0), c(0.0)]).unwrap();
        let r = deflate(&p, 1e-14);
        assert_eq!(r.kept, vec![0]);
        assert_eq!(r.locked_eigenpairs, vec![(1, 1.0), (2, 2.0)]);
        assert!(r.rotations.is_empty());
    }

    #[test]
    fn equal_diagonal_pair_rotates() {
        let h = 1.0 / 2f64.sqrt();
        let p = RankOneProblem::new(vec![0.0, 0.0], 1.0, vec![c(h), c(h)]).unwrap();
        let r = deflate(&p, 1e-14);
        assert_eq!(r.rotations.len(), 1);
        assert_eq!(r.locked_eigenpairs, vec![(0, 0.0)]);
        assert_eq!(r.kept, vec![1]);
        assert!((r.weights[1] - 1.0).abs() < 1e-15);
        // rotating the original weights reproduces the deflated ones
        let mut w = vec![h, h];
        r.rotations[0].apply_to_weights(&mut w);
        assert!(w[0].abs() < 1e-16 && (w[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn distinct_and_nonzero_keeps_all() {
        let z = vec![c(0.6), Complex64::new(0.0, -0.8)];
        let p = RankOneProblem::new(vec![-1.0, 3.0], 2.0, z).unwrap();
        let r = deflate(&p, 1e-14);
        assert_eq!(r.kept, vec![0, 1]);
        assert!(r.rotations.is_empty());
        assert!((r.phase_scalings[1] - Complex64::new(0.0, -1.0)).norm() < 1e-16);
    }

    #[test]
    fn group_of_three_leaves_last() {
        let t = 1.0 / 3f64.sqrt();
        let p = RankOneProblem::new(vec![1.0, 1.0, 1.0], 1.0, vec![c(t), c(t), c(t)]).unwrap();
        let r = deflate(&p, 1e-14);
        assert_eq!(r.kept, vec![2]);
        assert_eq!(r.rotations.len(), 2);
        assert!((r.weights[2] - 1.0).abs() < 1e-15);
    }
}
