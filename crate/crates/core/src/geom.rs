//! Floating-point polyhedra: Euclidean projection and distances.
//!
//! Exact data from the tropical module is converted once into these
//! structures; the amoeba engine and the sampled constants only need metric
//! information.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::polytope::combinations;

/// `{x : a.x = b for equalities, a.x <= b for inequalities}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyhedron {
    dim: usize,
    equalities: Vec<(Vec<f64>, f64)>,
    inequalities: Vec<(Vec<f64>, f64)>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Solves a small dense system with partial pivoting.
pub(crate) fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(p, c);
        b.swap(p, c);
        for i in (c + 1)..n {
            let f = a[i][c] / a[c][c];
            if f != 0.0 {
                for j in c..n {
                    a[i][j] -= f * a[c][j];
                }
                b[i] -= f * b[c];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = ((i + 1)..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

impl Polyhedron {
    pub fn new(
        dim: usize,
        equalities: Vec<(Vec<f64>, f64)>,
        inequalities: Vec<(Vec<f64>, f64)>,
    ) -> Self {
        Self {
            dim,
            equalities,
            inequalities,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equalities(&self) -> &[(Vec<f64>, f64)] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[(Vec<f64>, f64)] {
        &self.inequalities
    }

    /// `k * P` for `k > 0`.
    pub fn scaled(&self, k: f64) -> Polyhedron {
        let sc = |v: &[(Vec<f64>, f64)]| v.iter().map(|(a, b)| (a.clone(), b * k)).collect();
        Polyhedron {
            dim: self.dim,
            equalities: sc(&self.equalities),
            inequalities: sc(&self.inequalities),
        }
    }

    fn tol(&self, x: &[f64]) -> f64 {
        let mag = self
            .equalities
            .iter()
            .chain(&self.inequalities)
            .fold(norm(x), |m, (_, b)| m.max(b.abs()));
        1e-9 * (1.0 + mag)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        let tol = self.tol(x);
        self.equalities.iter().all(|(a, b)| (dot(a, x) - b).abs() <= tol)
            && self.inequalities.iter().all(|(a, b)| dot(a, x) <= b + tol)
    }

    /// Euclidean projection; `None` if the polyhedron is empty.
    ///
    /// Enumerates active sets (equalities always active) and returns the
    /// nearest candidate satisfying the KKT conditions. Exact up to rounding
    /// for the handful of constraints occurring at desk scale.
    pub fn project(&self, x: &[f64]) -> Option<Vec<f64>> {
        if self.equalities.is_empty() && self.contains(x) {
            return Some(x.to_vec());
        }
        let tol = self.tol(x);
        let m = self.inequalities.len();
        let max_active = self.dim.saturating_sub(0);
        let mut best: Option<(f64, Vec<f64>)> = None;
        for k in 0..=max_active.min(m) {
            for subset in combinations(m, k) {
                let rows: Vec<&(Vec<f64>, f64)> = self
                    .equalities
                    .iter()
                    .chain(subset.iter().map(|&i| &self.inequalities[i]))
                    .collect();
                if rows.len() > self.dim {
                    continue;
                }
                let (y, lambda) = if rows.is_empty() {
                    (x.to_vec(), Vec::new())
                } else {
                    let gram: Vec<Vec<f64>> = rows
                        .iter()
                        .map(|(ai, _)| rows.iter().map(|(aj, _)| dot(ai, aj)).collect())
                        .collect();
                    let rhs: Vec<f64> = rows.iter().map(|(a, b)| dot(a, x) - b).collect();
                    let Some(lambda) = solve_dense(gram, rhs) else {
                        continue;
                    };
                    let mut y = x.to_vec();
                    for ((a, _), l) in rows.iter().zip(&lambda) {
                        for (yi, ai) in y.iter_mut().zip(a) {
                            *yi -= l * ai;
                        }
                    }
                    (y, lambda)
                };
                let ne = self.equalities.len();
                // Multipliers of active inequalities must be non-negative.
                let scale = rows.iter().map(|(a, _)| norm(a)).fold(1.0, f64::max);
                if lambda[ne..].iter().any(|&l| l < -1e-9 * (1.0 + scale * norm(x))) {
                    continue;
                }
                if !self.contains_with(&y, tol) {
                    continue;
                }
                let d = distance(x, &y);
                if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                    best = Some((d, y));
                }
            }
            if best.is_some() {
                // KKT point found at this active-set size; larger active sets
                // can only reproduce it.
                break;
            }
        }
        best.map(|(_, y)| y)
    }

    fn contains_with(&self, x: &[f64], tol: f64) -> bool {
        self.equalities.iter().all(|(a, b)| (dot(a, x) - b).abs() <= tol)
            && self.inequalities.iter().all(|(a, b)| dot(a, x) <= b + tol)
    }

    /// Distance to the polyhedron (`+inf` when empty).
    pub fn distance(&self, x: &[f64]) -> f64 {
        self.project(x).map_or(f64::INFINITY, |y| distance(x, &y))
    }

    /// Distance and its gradient `(x - P(x)) / d` (zero inside).
    pub fn distance_with_gradient(&self, x: &[f64]) -> (f64, Vec<f64>) {
        match self.project(x) {
            None => (f64::INFINITY, vec![0.0; self.dim]),
            Some(y) => {
                let d = distance(x, &y);
                if d == 0.0 {
                    (0.0, vec![0.0; self.dim])
                } else {
                    (d, x.iter().zip(&y).map(|(a, b)| (a - b) / d).collect())
                }
            }
        }
    }

    /// Dykstra's alternating projection onto the half-spaces. Slow but
    /// independent of the active-set search; kept as a reference method.
    pub fn dykstra_project(&self, x: &[f64], iterations: usize) -> Vec<f64> {
        let mut sets: Vec<(Vec<f64>, f64, bool)> = self
            .equalities
            .iter()
            .map(|(a, b)| (a.clone(), *b, true))
            .collect();
        sets.extend(self.inequalities.iter().map(|(a, b)| (a.clone(), *b, false)));
        let mut y = x.to_vec();
        let mut incr = vec![vec![0.0; self.dim]; sets.len()];
        for _ in 0..iterations {
            for (k, (a, b, eq)) in sets.iter().enumerate() {
                let z: Vec<f64> = y.iter().zip(&incr[k]).map(|(p, q)| p + q).collect();
                let aa = dot(a, a);
                let viol = dot(a, &z) - b;
                let step = if *eq || viol > 0.0 { viol / aa } else { 0.0 };
                let proj: Vec<f64> = z.iter().zip(a).map(|(zi, ai)| zi - step * ai).collect();
                incr[k] = z.iter().zip(&proj).map(|(zi, pi)| zi - pi).collect();
                y = proj;
            }
        }
        y
    }
}

/// Axis-aligned box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Window {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::Parse("window bounds have mismatched lengths".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| !(l < h) || !l.is_finite() || !h.is_finite()) {
            return Err(Error::Parse("window must have lo < hi in every coordinate".into()));
        }
        Ok(Self { lo, hi })
    }

    pub fn square(half_width: f64, dim: usize) -> Self {
        Self {
            lo: vec![-half_width; dim],
            hi: vec![half_width; dim],
        }
    }

    /// Parses `x0,x1,y0,y1,...`.
    pub fn parse(s: &str) -> Result<Self> {
        let vals = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("bad window value {t:?}: {e}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if vals.is_empty() || vals.len() % 2 != 0 {
            return Err(Error::Parse("window needs an even number of values".into()));
        }
        let (lo, hi) = vals.chunks(2).map(|c| (c[0], c[1])).unzip();
        Self::new(lo, hi)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(v, (l, h))| *l <= *v && *v <= *h)
    }

    pub fn scaled(&self, k: f64) -> Window {
        Window {
            lo: self.lo.iter().map(|v| v * k).collect(),
            hi: self.hi.iter().map(|v| v * k).collect(),
        }
    }

    pub fn center(&self) -> Vec<f64> {
        self.lo.iter().zip(&self.hi).map(|(l, h)| 0.5 * (l + h)).collect()
    }

    pub fn diameter(&self) -> f64 {
        distance(&self.lo, &self.hi)
    }

    pub fn as_polyhedron(&self) -> Polyhedron {
        let n = self.dim();
        let mut ineq = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            ineq.push((e.clone(), self.hi[i]));
            e[i] = -1.0;
            ineq.push((e, -self.lo[i]));
        }
        Polyhedron::new(n, Vec::new(), ineq)
    }
}
