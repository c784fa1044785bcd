//! Roots of one-variable fibers in log coordinates.
//!
//! A fiber `g(v) = sum_k exp(l_k + k v)` is split along the upper Newton
//! polygon of `(k, Re l_k)`. Each slope is rescaled to modulus one and solved
//! by companion eigenvalues, then every root is polished by Newton in `v`.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

const TWO_PI: f64 = std::f64::consts::TAU;

/// `sum_k exp(log_coeffs[k - kmin] + k v)`; `None` marks a vanishing group.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberPolynomial {
    pub kmin: i64,
    pub log_coeffs: Vec<Option<Complex64>>,
}

/// Complex log-sum-exp; `None` when the sum cancels to rounding level.
pub fn log_sum_exp(logs: &[Complex64]) -> Option<Complex64> {
    let m = logs.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return None;
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mass = 0.0;
    for l in logs {
        let e = (l - m).exp();
        sum += e;
        mass += e.norm();
    }
    if sum.norm() <= 64.0 * f64::EPSILON * mass {
        return None;
    }
    Some(sum.ln() + m)
}

impl FiberPolynomial {
    /// Groups `(k, log term)` pairs by `k`.
    pub fn from_terms(terms: &[(i64, Complex64)]) -> Self {
        let kmin = terms.iter().map(|t| t.0).min().unwrap_or(0);
        let kmax = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut groups: Vec<Vec<Complex64>> = vec![Vec::new(); (kmax - kmin + 1) as usize];
        for (k, l) in terms {
            groups[(k - kmin) as usize].push(*l);
        }
        Self {
            kmin,
            log_coeffs: groups.iter().map(|g| log_sum_exp(g)).collect(),
        }
    }

    /// Indices and log coefficients of the non-vanishing groups.
    fn support(&self) -> Vec<(i64, Complex64)> {
        self.log_coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, l)| l.map(|l| (self.kmin + i as i64, l)))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.log_coeffs.iter().all(Option::is_none)
    }

    /// Number of roots in the punctured plane, counted with multiplicity.
    pub fn degree(&self) -> usize {
        let s = self.support();
        match (s.first(), s.last()) {
            (Some(a), Some(b)) => (b.0 - a.0) as usize,
            _ => 0,
        }
    }

    /// Scaled value `g(v) e^{-M}`, derivative likewise, and the scaled
    /// absolute term sum.
    pub fn eval(&self, v: Complex64) -> (Complex64, Complex64, f64) {
        let s = self.support();
        let logs: Vec<Complex64> = s.iter().map(|(k, l)| l + v * (*k as f64)).collect();
        let m = logs.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
        let mut g = Complex64::new(0.0, 0.0);
        let mut dg = Complex64::new(0.0, 0.0);
        let mut mass = 0.0;
        for ((k, _), l) in s.iter().zip(&logs) {
            let e = (l - m).exp();
            g += e;
            dg += e * (*k as f64);
            mass += e.norm();
        }
        (g, dg, mass)
    }

    pub fn relative_residual(&self, v: Complex64) -> f64 {
        let (g, _, mass) = self.eval(v);
        g.norm() / mass
    }
}

/// Upper hull of `(k, h_k)`, as indices into `pts`, left to right.
fn upper_hull(pts: &[(i64, f64)]) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::new();
    for i in 0..pts.len() {
        while hull.len() >= 2 {
            let a = pts[hull[hull.len() - 2]];
            let b = pts[hull[hull.len() - 1]];
            let c = pts[i];
            let cross = (b.0 - a.0) as f64 * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0) as f64;
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    hull
}

/// Roots of `sum_{i} c_i y^i`, `c` listed from the constant term up with a
/// non-zero leading coefficient.
pub fn polynomial_roots(c: &[Complex64]) -> Vec<Complex64> {
    let d = c.len().saturating_sub(1);
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![-c[0] / c[1]];
    }
    let lead = c[d];
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        m[(i, d - 1)] = -c[i] / lead;
    }
    match Schur::try_new(m, 1e-15, 2000) {
        Some(s) => s.unpack().1.diagonal().iter().copied().collect(),
        None => aberth(c),
    }
}

/// Aberth iteration, used when the Schur iteration stalls.
fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let radius = c
        .iter()
        .take(d)
        .map(|x| (x / c[d]).norm())
        .fold(0.0, f64::max)
        + 1.0;
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, TWO_PI * (k as f64 + 0.25) / d as f64))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for a in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..d).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * sum);
            z[i] -= w;
            moved = moved.max(w.norm() / z[i].norm().max(1e-300));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Newton in `v`; returns the polished root when the relative residual
/// drops below `tol`.
pub fn polish(poly: &FiberPolynomial, mut v: Complex64, tol: f64) -> Option<Complex64> {
    for _ in 0..60 {
        let (g, dg, mass) = poly.eval(v);
        if g.norm() <= 1e-15 * mass {
            break;
        }
        if dg.norm() == 0.0 {
            return None;
        }
        let step = g / dg;
        v -= step;
        if !v.is_finite() {
            return None;
        }
        if step.norm() <= 1e-15 * (1.0 + v.norm()) {
            break;
        }
    }
    v.im = v.im.rem_euclid(TWO_PI);
    (poly.relative_residual(v) < tol).then_some(v)
}

fn same_root(a: Complex64, b: Complex64) -> bool {
    let dre = (a.re - b.re).abs();
    let dim = (a.im - b.im).rem_euclid(TWO_PI);
    let dim = dim.min(TWO_PI - dim);
    dre.max(dim) <= 1e-8 * (1.0 + a.re.abs())
}

/// Roots `v = log z` of the fiber with relative residual below `tol`,
/// imaginary parts reduced to `[0, 2 pi)`. Also returns how many roots were
/// expected but lost in polishing or merged as duplicates.
pub fn fiber_roots(poly: &FiberPolynomial, tol: f64) -> (Vec<Complex64>, usize) {
    let s = poly.support();
    if s.len() < 2 {
        return (Vec::new(), 0);
    }
    let expected = poly.degree();
    let pts: Vec<(i64, f64)> = s.iter().map(|(k, l)| (*k, l.re)).collect();
    let hull = upper_hull(&pts);
    let mut guesses: Vec<Complex64> = Vec::new();
    for w in hull.windows(2) {
        let (ka, la) = s[w[0]];
        let (kb, lb) = s[w[1]];
        let width = (kb - ka) as usize;
        let sigma = (lb.re - la.re) / (kb - ka) as f64;
        let base = la.re - sigma * ka as f64;
        // rescaled coefficients; the segment endpoints have modulus one
        let scaled: Vec<(i64, Complex64)> = s
            .iter()
            .map(|(k, l)| (*k, (l - (base + sigma * *k as f64)).exp()))
            .filter(|(_, b)| b.norm() >= 1e-12)
            .collect();
        let lo = scaled.first().map_or(ka, |x| x.0);
        let hi = scaled.last().map_or(kb, |x| x.0);
        let mut c = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (k, b) in &scaled {
            c[(k - lo) as usize] = *b;
        }
        let mut ys = polynomial_roots(&c);
        ys.retain(|y| y.norm() > 0.0 && y.is_finite());
        ys.sort_by(|a, b| a.norm().ln().abs().total_cmp(&b.norm().ln().abs()));
        guesses.extend(ys.into_iter().take(width).map(|y| y.ln() - sigma));
    }
    let mut roots: Vec<Complex64> = Vec::new();
    for g in guesses {
        if let Some(v) = polish(poly, g, tol) {
            if !roots.iter().any(|r| same_root(*r, v)) {
                roots.push(v);
            }
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let lost = expected.saturating_sub(roots.len());
    (roots, lost)
}
