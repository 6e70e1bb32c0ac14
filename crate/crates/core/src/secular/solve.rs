use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;
const MAX_ITER: usize = 200;
/// Iterations after which every step is a bisection.
const MODEL_ITER: usize = 60;
/// Below this many roots the intervals are solved on the calling thread.
const PAR_THRESHOLD: usize = 64;
const WEIGHT_SUM_TOL: f64 = 1e-10;

/// Roots of `f(λ) = 1 + ρ Σ zabs2_i / (d_i − λ)`.
///
/// Each root is stored as `d[origin[j]] + tau[j]` with `origin[j]` the
/// closer pole, so `d_i − λ_j` can be formed as `(d_i − d_origin) − tau`
/// without cancellation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SecularRoots {
    pub lambda: Vec<f64>,
    pub mu: Vec<f64>,
    pub origin: Vec<usize>,
    pub tau: Vec<f64>,
    pub iterations: Vec<usize>,
}

impl SecularRoots {
    /// `d_i − λ_j`, computed relative to the root's origin.
    pub fn d_minus_lambda(&self, d: &[f64], i: usize, j: usize) -> f64 {
        (d[i] - d[self.origin[j]]) - self.tau[j]
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }
}

/// `f(λ_j)` evaluated through the stored offsets, together with the
/// gap-scaled magnitude `1 + ρ Σ zabs2_i / |d_i − λ_j|`.
pub fn secular_function(d: &[f64], rho: f64, zabs2: &[f64], roots: &SecularRoots, j: usize) -> (f64, f64) {
    let mut f = 1.0;
    let mut scale = 1.0;
    for (i, w) in zabs2.iter().enumerate() {
        let t = rho * w / roots.d_minus_lambda(d, i, j);
        f += t;
        scale += t.abs();
    }
    (f, scale)
}

pub fn solve_secular(d: &[f64], rho: f64, zabs2: &[f64]) -> Result<SecularRoots> {
    let m = d.len();
    if zabs2.len() != m {
        return Err(Error::InvalidInput(format!(
            "d has {m} entries but zabs2 has {}",
            zabs2.len()
        )));
    }
    if d.windows(2)
        .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
    {
        return Err(Error::InvalidInput("secular solve needs strictly increasing d".into()));
    }
    if zabs2.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
        return Err(Error::InvalidInput("secular solve needs positive weights".into()));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidInput(format!("rho must be positive, got {rho}")));
    }
    let sum: f64 = zabs2.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::InvalidInput(format!("weights must sum to one, got {sum}")));
    }

    let solve_one = |j: usize| solve_interval(d, rho, zabs2, j);
    let per: Vec<(usize, f64, usize)> = if m >= PAR_THRESHOLD {
        (0..m).into_par_iter().map(solve_one).collect()
    } else {
        (0..m).map(solve_one).collect()
    };

    let mut out = SecularRoots {
        lambda: Vec::with_capacity(m),
        mu: Vec::with_capacity(m),
        origin: Vec::with_capacity(m),
        tau: Vec::with_capacity(m),
        iterations: Vec::with_capacity(m),
    };
    for (j, &(o, tau, it)) in per.iter().enumerate() {
        let mut lam = d[o] + tau;
        if lam <= d[j] {
            lam = d[j].next_up();
        }
        if j + 1 < m && lam >= d[j + 1] {
            lam = d[j + 1].next_down();
        }
        let shift = if o == j { tau } else { (d[o] - d[j]) + tau };
        out.lambda.push(lam);
        out.mu.push(shift / rho);
        out.origin.push(o);
        out.tau.push(tau);
        out.iterations.push(it);
    }
    Ok(out)
}

struct Eval {
    g: f64,
    dpsi: f64,
    dphi: f64,
    psi: f64,
    phi: f64,
    abs_sum: f64,
}

/// `g(τ) = 1/ρ + Σ w_i / (diff_i − τ)`, split into the terms at or below
/// interval `j` (`psi`) and above it (`phi`).
fn eval(diff: &[f64], w: &[f64], inv_rho: f64, j: usize, tau: f64) -> Eval {
    let (mut psi, mut dpsi, mut phi, mut dphi, mut abs_sum) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..diff.len() {
        let del = diff[i] - tau;
        let t = w[i] / del;
        let dt = t / del;
        if i <= j {
            psi += t;
            dpsi += dt;
        } else {
            phi += t;
            dphi += dt;
        }
        abs_sum += t.abs();
    }
    Eval {
        g: inv_rho + psi + phi,
        dpsi,
        dphi,
        psi,
        phi,
        abs_sum,
    }
}

/// Returns `(origin, tau, iterations)` for the root in `(d_j, d_{j+1})`.
fn solve_interval(d: &[f64], rho: f64, w: &[f64], j: usize) -> (usize, f64, usize) {
    let m = d.len();
    if m == 1 {
        return (0, rho * w[0], 0);
    }
    let inv_rho = 1.0 / rho;
    let last = j + 1 == m;

    let (origin, mut lo, mut hi) = if last {
        let wsum: f64 = w.iter().sum();
        (j, 0.0, rho * wsum * (1.0 + 16.0 * EPS))
    } else {
        let gap = d[j + 1] - d[j];
        let half = 0.5 * gap;
        let gm = inv_rho + (0..m).map(|i| w[i] / ((d[i] - d[j]) - half)).sum::<f64>();
        if gm >= 0.0 {
            (j, 0.0, half)
        } else {
            (j + 1, -gap + half, 0.0)
        }
    };
    let diff: Vec<f64> = d.iter().map(|&v| v - d[origin]).collect();
    if last {
        while eval(&diff, w, inv_rho, j, hi).g < 0.0 {
            hi *= 2.0;
        }
    }

    // initial guess where the two neighbouring pole terms balance
    let mut tau = if last {
        (rho * w[j]).min(hi)
    } else {
        let gap = d[j + 1] - d[j];
        let from_j = gap * w[j] / (w[j] + w[j + 1]);
        if origin == j {
            from_j
        } else {
            from_j - gap
        }
    };
    if !(tau > lo && tau < hi) {
        tau = 0.5 * (lo + hi);
    }

    let mut iters = 0;
    while iters < MAX_ITER {
        iters += 1;
        let e = eval(&diff, w, inv_rho, j, tau);
        if e.g == 0.0 {
            break;
        }
        if e.g < 0.0 {
            lo = tau;
        } else {
            hi = tau;
        }
        let tol = EPS * (8.0 * (inv_rho + e.abs_sum) + tau.abs() * (e.dpsi + e.dphi));
        if e.g.abs() <= tol {
            break;
        }
        if hi - lo <= 2.0 * EPS * lo.abs().max(hi.abs()) {
            break;
        }
        let next = if iters <= MODEL_ITER {
            model_step(&diff, j, last, tau, &e, inv_rho)
        } else {
            None
        };
        let cand = match next {
            Some(t) if t > lo && t < hi => t,
            _ => 0.5 * (lo + hi),
        };
        if cand <= lo || cand >= hi {
            break;
        }
        tau = cand;
    }
    (origin, tau, iters)
}

/// Zero of the two-pole hyperbolic model of `g` around `tau`, returned as
/// the new `tau`.
fn model_step(diff: &[f64], j: usize, last: bool, tau: f64, e: &Eval, inv_rho: f64) -> Option<f64> {
    let dlo = diff[j] - tau;
    if last {
        // c + s/(dlo − η) = 0
        let s = e.dpsi * dlo * dlo;
        let c = inv_rho + e.psi - e.dpsi * dlo;
        if c <= 0.0 {
            return None;
        }
        return Some(tau + dlo + s / c);
    }
    let dhi = diff[j + 1] - tau;
    let s = e.dpsi * dlo * dlo;
    let big_s = e.dphi * dhi * dhi;
    let c = inv_rho + (e.psi - e.dpsi * dlo) + (e.phi - e.dphi * dhi);
    // c(dlo−η)(dhi−η) + s(dhi−η) + S(dlo−η) = 0
    let a = c;
    let b = -(c * (dlo + dhi) + s + big_s);
    let cc = c * dlo * dhi + s * dhi + big_s * dlo;
    let inside = |eta: f64| eta.is_finite() && eta > dlo && eta < dhi;
    let disc = b * b - 4.0 * a * cc;
    if disc < 0.0 {
        return None;
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut cands = Vec::with_capacity(2);
    if a != 0.0 {
        cands.push(q / a);
    }
    if q != 0.0 {
        cands.push(cc / q);
    }
    cands.into_iter().find(|&eta| inside(eta)).map(|eta| tau + eta)
}
