use std::f64::consts::PI;

use nalgebra::DMatrix;
use num::BigInt;
use serde::{Deserialize, Serialize};

use super::complex::TropicalComplex;
use crate::error::{Error, Result};
use crate::geom::{distance, norm};
use crate::lattice::vector::rat_to_f64;

/// Polyhedral constants controlling the localization estimates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TropicalConstants {
    /// Max l1 norm over subdivision edges and over the support.
    pub n: u64,
    /// Length distortion bound of the simplices (both directions).
    pub rho: f64,
    /// Sampled separation constant.
    pub c_est: f64,
    pub card_a: usize,
}

/// Number of sampled directions around each vertex for `c_est`.
pub const SEPARATION_DIRECTIONS: usize = 256;

/// Unit directions: evenly spaced on the circle for n = 2, a Fibonacci
/// lattice on the sphere for n = 3, coordinate directions otherwise.
fn directions(n: usize, count: usize) -> Vec<Vec<f64>> {
    match n {
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..count)
            .map(|k| {
                let a = 2.0 * PI * (k as f64 + 0.5) / count as f64;
                vec![a.cos(), a.sin()]
            })
            .collect(),
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..count)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / count as f64;
                    let r = (1.0 - z * z).sqrt();
                    let a = golden * k as f64;
                    vec![r * a.cos(), r * a.sin(), z]
                })
                .collect()
        }
        _ => (0..n)
            .flat_map(|i| {
                [1.0, -1.0].into_iter().map(move |s| {
                    let mut e = vec![0.0; n];
                    e[i] = s;
                    e
                })
            })
            .collect(),
    }
}

/// Largest singular value and reciprocal of the smallest.
fn distortion(m: &DMatrix<f64>) -> f64 {
    let sv = m.singular_values();
    let max = sv.max();
    let min = sv.min();
    max.max(1.0 / min)
}

pub fn tropical_constants(pi: &TropicalComplex) -> Result<TropicalConstants> {
    let h = pi.height();
    let sub = pi.subdivision();
    if !sub.is_triangulation() {
        return Err(Error::NotTriangulation);
    }
    let n_dim = h.dim();
    let support = h.support();

    let mut n_max = BigInt::from(0);
    for (a, b) in sub.edges() {
        n_max = n_max.max((&support[a] - &support[b]).l1_norm());
    }
    for a in support {
        n_max = n_max.max(a.l1_norm());
    }
    let n = u64::try_from(n_max).map_err(|_| Error::Unsupported("l1 norm overflows u64".into()))?;

    // The simplex is labelled by its lowest support index (the origin for
    // bundle data); the distortion depends on which vertex is the base.
    let mut rho: f64 = 1.0;
    for cell in sub.cells() {
        let base = support[cell.points[0]].to_f64();
        let cols: Vec<Vec<f64>> = cell.points[1..]
            .iter()
            .map(|&i| support[i].to_f64().iter().zip(&base).map(|(x, y)| x - y).collect())
            .collect();
        let m = DMatrix::from_fn(n_dim, n_dim, |r, c| cols[c][r]);
        rho = rho.max(distortion(&m));
    }

    let c_est = separation_estimate(pi);
    Ok(TropicalConstants {
        n,
        rho,
        c_est,
        card_a: h.len(),
    })
}

/// Half the smallest ratio `d(p, H(a, b)) / d(p, C_a)` over points `p` of
/// `C_b` sampled near the vertices shared by the two components.
fn separation_estimate(pi: &TropicalComplex) -> f64 {
    let h = pi.height();
    let n = h.dim();
    let verts: Vec<Vec<f64>> = pi.vertices().iter().map(|v| v.to_f64()).collect();
    let mut diam: f64 = 0.0;
    for a in &verts {
        for b in &verts {
            diam = diam.max(distance(a, b));
        }
    }
    let radius = 1e-3 * if diam > 0.0 { diam } else { 1.0 };
    let base_dirs = directions(n, SEPARATION_DIRECTIONS);
    let support: Vec<Vec<f64>> = h.support().iter().map(|a| a.to_f64()).collect();
    let heights: Vec<f64> = h.heights().iter().map(rat_to_f64).collect();
    let polys: Vec<_> = (0..h.len()).map(|a| pi.component_polyhedron(a)).collect();

    let mut best = f64::INFINITY;
    for (ci, cell) in pi.subdivision().cells().iter().enumerate() {
        let v = &verts[ci];
        // exact directions of the edges leaving this vertex
        let mut dirs = base_dirs.clone();
        for e in pi.faces_of_dim(1).filter(|f| f.vertices.contains(&ci)) {
            let d: Vec<f64> = if let Some(&o) = e.vertices.iter().find(|&&o| o != ci) {
                verts[o].iter().zip(v).map(|(x, y)| x - y).collect()
            } else {
                e.rays[0].to_f64()
            };
            let l = norm(&d);
            dirs.push(d.iter().map(|x| x / l).collect());
        }
        let full: Vec<usize> = cell
            .points
            .iter()
            .copied()
            .filter(|&a| pi.component(a).full)
            .collect();
        for &alpha in &full {
            for &beta in &full {
                if alpha == beta {
                    continue;
                }
                let diff: Vec<f64> = support[beta].iter().zip(&support[alpha]).map(|(x, y)| x - y).collect();
                let dn = norm(&diff);
                let rhs = heights[beta] - heights[alpha];
                for d in &dirs {
                    let p: Vec<f64> = v.iter().zip(d).map(|(x, y)| x + radius * y).collect();
                    if !polys[beta].contains(&p) {
                        continue;
                    }
                    let da = polys[alpha].distance(&p);
                    if da <= 1e-9 * radius {
                        continue;
                    }
                    let dh = (diff.iter().zip(&p).map(|(x, y)| x * y).sum::<f64>() - rhs).abs() / dn;
                    best = best.min(dh / da);
                }
            }
        }
    }
    if best.is_finite() {
        0.5 * best
    } else {
        0.5
    }
}

/// `log t`; the scale itself overflows quickly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scale {
    pub log_t: f64,
}

impl Scale {
    pub fn t(&self) -> f64 {
        self.log_t.exp()
    }
}

/// Whether the two scale inequalities hold at `log t`:
/// `exp(-c eps log t) / (eps log t) < 1/(40|A| rho)` and
/// `exp(-c eps log t) < 1/(5|A|^2 rho N)`.
pub fn scale_conditions(k: &TropicalConstants, eps: f64, log_t: f64) -> (bool, bool) {
    let x = eps * log_t;
    if x <= 0.0 {
        return (false, false);
    }
    let a = k.card_a as f64;
    let first = -k.c_est * x - x.ln() < -(40.0 * a * k.rho).ln();
    let second = -k.c_est * x < -(5.0 * a * a * k.rho * k.n as f64).ln();
    (first, second)
}

/// Smallest `t > 1` (to relative precision 1e-6) satisfying both scale
/// inequalities. Both hold for every larger `t`.
pub fn choose_scale(k: &TropicalConstants, eps: f64) -> Result<Scale> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidEps(eps));
    }
    if !(k.c_est > 0.0) {
        return Err(Error::Unsupported("separation constant must be positive".into()));
    }
    let ok = |l: f64| {
        let (a, b) = scale_conditions(k, eps, l);
        a && b
    };
    let mut hi = 1.0;
    while !ok(hi) {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    while hi - lo > 1e-8 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    debug_assert!(ok(hi));
    Ok(Scale { log_t: hi })
}

/// Closed-form threshold of the second inequality.
pub fn second_threshold(k: &TropicalConstants, eps: f64) -> f64 {
    let a = k.card_a as f64;
    (5.0 * a * a * k.rho * k.n as f64).ln() / (k.c_est * eps)
}
