use num::BigRational;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cutoff::{cutoff, CutoffProfile};
use super::laurent::{mirror_potential, LaurentPolynomial};
use crate::error::{Error, Result};
use crate::geom::{Polyhedron, Window};
use crate::lattice::vector::rat_to_f64;
use crate::lattice::{Fan, SupportFunction};
use crate::tropical::{tropical_complex, HeightFunction, TropicalComplex, TropicalConstants};

/// Point `z = exp(u + i theta)` of the torus, kept in log coordinates so
/// that scales like `t = e^400` never have to be formed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogPoint {
    pub u: Vec<f64>,
    pub theta: Vec<f64>,
}

impl LogPoint {
    pub fn new(u: Vec<f64>, theta: Vec<f64>) -> Self {
        Self { u, theta }
    }

    pub fn real(u: Vec<f64>) -> Self {
        let n = u.len();
        Self { u, theta: vec![0.0; n] }
    }

    pub fn from_z(z: &[Complex64]) -> Self {
        Self {
            u: z.iter().map(|c| c.norm().ln()).collect(),
            theta: z.iter().map(|c| c.arg()).collect(),
        }
    }

    /// May overflow for large `u`.
    pub fn to_z(&self) -> Vec<Complex64> {
        self.u
            .iter()
            .zip(&self.theta)
            .map(|(u, t)| Complex64::from_polar(u.exp(), *t))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }
}

/// `f_{t,s} = sum c_alpha t^{-nu(alpha)} (1 - s phi_alpha) z^alpha` with
/// `phi_alpha` a smoothstep of the distance to `log t * C_alpha`.
#[derive(Clone, Debug)]
pub struct PatchworkFamily {
    height: HeightFunction,
    complex: TropicalComplex,
    log_coeffs: Vec<Complex64>,
    exps: Vec<Vec<f64>>,
    nu: Vec<f64>,
    components: Vec<Polyhedron>,
    log_t: f64,
    s: f64,
    eps: f64,
    profile: CutoffProfile,
}

/// Evaluation scaled by `exp(-log_scale)`, where `log_scale` is the largest
/// log-modulus among the monomials. Covectors are in the coframe
/// `dz_j / z_j`, so their Euclidean norm is the metric norm.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyEval {
    pub log_scale: f64,
    pub value: Complex64,
    pub del: Vec<Complex64>,
    pub delbar: Vec<Complex64>,
    /// Scaled `c_alpha t^{-nu(alpha)} z^alpha`, before the cutoff factor.
    pub terms: Vec<Complex64>,
    pub phi: Vec<f64>,
    /// `sum |terms_alpha| (1 - s phi_alpha)`.
    pub term_sum: f64,
}

fn covector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

impl FamilyEval {
    pub fn relative_residual(&self) -> f64 {
        self.value.norm() / self.term_sum
    }

    pub fn del_norm(&self) -> f64 {
        covector_norm(&self.del)
    }

    pub fn delbar_norm(&self) -> f64 {
        covector_norm(&self.delbar)
    }

    /// Index of the largest monomial.
    pub fn dominant(&self) -> usize {
        (0..self.terms.len())
            .max_by(|&a, &b| self.terms[a].norm().total_cmp(&self.terms[b].norm()))
            .unwrap_or(0)
    }
}

impl PatchworkFamily {
    pub fn new(height: HeightFunction, coeffs: Vec<Complex64>, log_t: f64, s: f64, eps: f64) -> Result<Self> {
        if coeffs.len() != height.len() {
            return Err(Error::DimensionMismatch {
                expected: height.len(),
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| c.norm() == 0.0 || !c.is_finite()) {
            return Err(Error::Unsupported("coefficients must be finite and non-zero".into()));
        }
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Unsupported(format!("s must lie in [0, 1], got {s}")));
        }
        let profile = CutoffProfile::new(eps, log_t)?;
        let complex = tropical_complex(&height)?;
        let components = (0..height.len()).map(|a| complex.component_polyhedron(a)).collect();
        Ok(Self {
            exps: height.support().iter().map(|a| a.to_f64()).collect(),
            nu: height.heights().iter().map(rat_to_f64).collect(),
            log_coeffs: coeffs.iter().map(|c| c.ln()).collect(),
            height,
            complex,
            components,
            log_t,
            s,
            eps,
            profile,
        })
    }

    /// Family of the mirror potential: constant term -1, other coefficients 1.
    pub fn from_bundle(fan: &Fan, phi: &SupportFunction, log_t: f64, s: f64, eps: f64) -> Result<Self> {
        let height = HeightFunction::from_bundle(fan, phi)?;
        let w = mirror_potential(fan);
        let coeffs = height.support().iter().map(|a| w.coefficient(a)).collect();
        Self::new(height, coeffs, log_t, s, eps)
    }

    /// Heights listed in the order of `f.terms()`.
    pub fn from_polynomial(f: &LaurentPolynomial, heights: Vec<BigRational>, log_t: f64, s: f64, eps: f64) -> Result<Self> {
        let height = HeightFunction::new(f.exponents(), heights)?;
        let coeffs = f.terms().iter().map(|(_, c)| *c).collect();
        Self::new(height, coeffs, log_t, s, eps)
    }

    pub fn with_s(&self, s: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Unsupported(format!("s must lie in [0, 1], got {s}")));
        }
        Ok(Self { s, ..self.clone() })
    }

    pub fn height(&self) -> &HeightFunction {
        &self.height
    }

    pub fn complex(&self) -> &TropicalComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.height.dim()
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn log_t(&self) -> f64 {
        self.log_t
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn profile(&self) -> &CutoffProfile {
        &self.profile
    }

    pub fn exponent(&self, i: usize) -> &[f64] {
        &self.exps[i]
    }

    pub fn log_coefficient(&self, i: usize) -> Complex64 {
        self.log_coeffs[i]
    }

    pub fn nu(&self, i: usize) -> f64 {
        self.nu[i]
    }

    /// `log(c_alpha t^{-nu(alpha)} z^alpha)`.
    pub fn log_term(&self, i: usize, p: &LogPoint) -> Complex64 {
        let a = &self.exps[i];
        let re: f64 = a.iter().zip(&p.u).map(|(x, y)| x * y).sum::<f64>() - self.nu[i] * self.log_t;
        let im: f64 = a.iter().zip(&p.theta).map(|(x, y)| x * y).sum();
        self.log_coeffs[i] + Complex64::new(re, im)
    }

    /// `<alpha, u> - nu(alpha) log t`, the coefficient-free log-modulus.
    pub fn tropical_term(&self, i: usize, u: &[f64]) -> f64 {
        self.exps[i].iter().zip(u).map(|(x, y)| x * y).sum::<f64>() - self.nu[i] * self.log_t
    }

    /// Distance from `u` to `log t * C_alpha` and its gradient.
    pub fn component_distance(&self, i: usize, u: &[f64]) -> (f64, Vec<f64>) {
        let scaled: Vec<f64> = u.iter().map(|x| x / self.log_t).collect();
        let (d, g) = self.components[i].distance_with_gradient(&scaled);
        (d * self.log_t, g)
    }

    /// `phi_alpha(u)` and its gradient in `u`.
    pub fn cutoff_at(&self, i: usize, u: &[f64]) -> (f64, Vec<f64>) {
        let (d, g) = self.component_distance(i, u);
        if d.is_infinite() {
            return (1.0, vec![0.0; u.len()]);
        }
        let (v, dv) = cutoff(d, &self.profile);
        (v, g.into_iter().map(|x| x * dv).collect())
    }

    /// Indices whose cutoff is not identically 1 at `u`.
    pub fn surviving_terms(&self, u: &[f64]) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.cutoff_at(i, u).0 < 1.0).collect()
    }
}

/// Value, `del f` and `delbar f` of the family at `p`.
pub fn eval_family(f: &PatchworkFamily, p: &LogPoint) -> FamilyEval {
    eval_at(f, p, f.s)
}

/// `eval_family` with the deformation parameter overridden.
pub(crate) fn eval_at(f: &PatchworkFamily, p: &LogPoint, s: f64) -> FamilyEval {
    let n = f.dim();
    let logs: Vec<Complex64> = (0..f.len()).map(|i| f.log_term(i, p)).collect();
    let log_scale = logs.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
    let terms: Vec<Complex64> = logs.iter().map(|l| (l - log_scale).exp()).collect();
    let mut value = Complex64::new(0.0, 0.0);
    let mut del = vec![Complex64::new(0.0, 0.0); n];
    let mut delbar = vec![Complex64::new(0.0, 0.0); n];
    let mut phi = vec![0.0; f.len()];
    let mut term_sum = 0.0;
    for (i, t) in terms.iter().enumerate() {
        let (ph, grad) = if s == 0.0 {
            (0.0, None)
        } else {
            let (ph, g) = f.cutoff_at(i, &p.u);
            (ph, Some(g))
        };
        phi[i] = ph;
        let w = 1.0 - s * ph;
        value += t * w;
        term_sum += t.norm() * w;
        for j in 0..n {
            del[j] += t * (w * f.exps[i][j]);
            if let Some(g) = &grad {
                let half = 0.5 * s * g[j];
                del[j] -= t * half;
                delbar[j] -= t * half;
            }
        }
    }
    FamilyEval {
        log_scale,
        value,
        del,
        delbar,
        terms,
        phi,
        term_sum,
    }
}

/// A monomial that outweighs all others for every `s` in `[0, 1]`:
/// `(1 - phi_alpha)|T_alpha| > sum_{beta != alpha} |T_beta|`. Certifies
/// that `u` is not in the amoeba of any member of the family. Real zeros sit
/// on the amoeba boundary where both sides agree to rounding, so the strict
/// inequality is asked to hold with `CERTIFICATE_SLACK` to spare.
pub fn lopsided_certificate(f: &PatchworkFamily, u: &[f64]) -> Option<usize> {
    let p = LogPoint::real(u.to_vec());
    let logs: Vec<f64> = (0..f.len()).map(|i| f.log_term(i, &p).re).collect();
    let (top, &m) = logs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))?;
    let rest: f64 = logs
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != top)
        .map(|(_, l)| (l - m).exp())
        .sum();
    let (ph, _) = f.cutoff_at(top, u);
    ((1.0 - ph) > rest + CERTIFICATE_SLACK).then_some(top)
}

pub const CERTIFICATE_SLACK: f64 = 1e-9;

/// Symplecticity margin `|del f| - |delbar f|` at a zero, in units of the
/// dominant monomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Margin {
    pub margin: f64,
    pub del_norm: f64,
    pub delbar_norm: f64,
    pub dominant: usize,
    pub residual: f64,
}

pub const ZERO_TOLERANCE: f64 = 1e-8;

pub fn symplectic_margin(f: &PatchworkFamily, p: &LogPoint) -> Result<Margin> {
    let e = eval_family(f, p);
    let residual = e.relative_residual();
    if !(residual < ZERO_TOLERANCE) {
        return Err(Error::NotOnZeroLocus(residual));
    }
    let del_norm = e.del_norm();
    let delbar_norm = e.delbar_norm();
    Ok(Margin {
        margin: del_norm - delbar_norm,
        del_norm,
        delbar_norm,
        dominant: e.dominant(),
        residual,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub samples: usize,
    /// Pairs `(alpha, beta)` with `phi_alpha != 0` that were tested.
    pub checked: usize,
    /// Pairs skipped because `phi_alpha = 0`.
    pub skipped: usize,
    pub violations: usize,
    /// Smallest `bound - log ratio` seen (positive when all pass).
    pub min_gap: f64,
}

/// Samples `p` uniformly in `log t * window`; for the component `C_beta`
/// containing `p` and every `alpha` with `phi_alpha(p) != 0`, checks
/// `log |T_alpha / T_beta| < -c eps log t |alpha - beta|`.
pub fn exponential_decay_check(
    f: &PatchworkFamily,
    k: &TropicalConstants,
    window: &Window,
    samples: usize,
    seed: u64,
) -> DecayReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DecayReport {
        samples,
        min_gap: f64::INFINITY,
        ..Default::default()
    };
    let l = f.log_t;
    for _ in 0..samples {
        let u: Vec<f64> = window
            .lo
            .iter()
            .zip(&window.hi)
            .map(|(a, b)| l * rng.gen_range(*a..*b))
            .collect();
        let trop: Vec<f64> = (0..f.len()).map(|i| f.tropical_term(i, &u)).collect();
        let beta = (0..f.len())
            .max_by(|&a, &b| trop[a].total_cmp(&trop[b]))
            .expect("non-empty support");
        for alpha in 0..f.len() {
            if alpha == beta {
                continue;
            }
            let (ph, _) = f.cutoff_at(alpha, &u);
            if ph == 0.0 {
                report.skipped += 1;
                continue;
            }
            report.checked += 1;
            let dist: f64 = f.exps[alpha]
                .iter()
                .zip(&f.exps[beta])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let bound = -k.c_est * f.eps * l * dist;
            let gap = bound - (trop[alpha] - trop[beta]);
            report.min_gap = report.min_gap.min(gap);
            if gap <= 0.0 {
                report.violations += 1;
            }
        }
    }
    report
}
