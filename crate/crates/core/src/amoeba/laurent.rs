use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{Fan, LatticeVector, Polytope};

/// `sum c_alpha z^alpha` with distinct exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPolynomial {
    dim: usize,
    terms: Vec<(LatticeVector, Complex64)>,
}

impl LaurentPolynomial {
    /// Merges repeated exponents and drops zero coefficients.
    pub fn new(dim: usize, terms: Vec<(LatticeVector, Complex64)>) -> Result<Self> {
        let mut merged: BTreeMap<LatticeVector, Complex64> = BTreeMap::new();
        for (e, c) in terms {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: e.dim(),
                });
            }
            *merged.entry(e).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        Ok(Self {
            dim,
            terms: merged.into_iter().filter(|(_, c)| *c != Complex64::new(0.0, 0.0)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(LatticeVector, Complex64)] {
        &self.terms
    }

    pub fn exponents(&self) -> Vec<LatticeVector> {
        self.terms.iter().map(|(e, _)| e.clone()).collect()
    }

    pub fn coefficient(&self, e: &LatticeVector) -> Complex64 {
        self.terms
            .iter()
            .find(|(x, _)| x == e)
            .map_or(Complex64::new(0.0, 0.0), |(_, c)| *c)
    }

    pub fn newton_polytope(&self) -> Result<Polytope> {
        let pts: Vec<_> = self.terms.iter().map(|(e, _)| e.to_rational()).collect();
        Polytope::hull(&pts)
    }

    /// Value and holomorphic partials `df/dz_j`.
    pub fn eval_with_gradient(&self, z: &[Complex64]) -> (Complex64, Vec<Complex64>) {
        let mut value = Complex64::new(0.0, 0.0);
        let mut grad = vec![Complex64::new(0.0, 0.0); self.dim];
        for (e, c) in &self.terms {
            let ex = e.to_i64();
            let mono = ex
                .iter()
                .zip(z)
                .fold(*c, |acc, (&k, zj)| acc * zj.powi(k as i32));
            value += mono;
            for (j, g) in grad.iter_mut().enumerate() {
                if ex[j] != 0 {
                    *g += mono * ex[j] as f64 / z[j];
                }
            }
        }
        (value, grad)
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.eval_with_gradient(z).0
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (j, k) in e.to_i64().iter().enumerate() {
                if *k != 0 {
                    write!(f, "*z{}^{}", j + 1, k)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `W = -1 + sum over rays of z^v`.
pub fn mirror_potential(fan: &Fan) -> LaurentPolynomial {
    if !fan.is_smooth().unwrap_or(false) {
        log::warn!("mirror potential of a non-smooth fan");
    }
    let mut terms = vec![(LatticeVector::zero(fan.dim()), Complex64::new(-1.0, 0.0))];
    terms.extend(fan.rays().iter().map(|v| (v.clone(), Complex64::new(1.0, 0.0))));
    LaurentPolynomial::new(fan.dim(), terms).expect("rays share the fan dimension")
}

/// Tangent vector `sum v_j d/dz_j` at a point of the torus.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentVectorC {
    pub base: Vec<Complex64>,
    pub components: Vec<Complex64>,
}

impl TangentVectorC {
    /// Hermitian product of the invariant metric `|dz_j| = |z_j|`.
    pub fn hermitian(&self, other: &TangentVectorC) -> Complex64 {
        self.components
            .iter()
            .zip(&other.components)
            .zip(&self.base)
            .map(|((a, b), z)| a * b.conj() / z.norm_sqr())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.hermitian(self).re.sqrt()
    }

    /// Kähler form `omega(v, w) = -Im h(v, w)`.
    pub fn omega(&self, other: &TangentVectorC) -> f64 {
        -self.hermitian(other).im
    }
}

/// Horizontal lift of `a` at `z`: the unique `v` with `df(v) = a` that is
/// orthogonal to `ker df` in the invariant metric. Closed form
/// `v_j = a conj(g_j) |z_j|^2 / sum_k |g_k|^2 |z_k|^2`, `g = df`.
pub fn horizontal_lift(f: &LaurentPolynomial, z: &[Complex64], a: Complex64) -> Result<TangentVectorC> {
    if z.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: z.len(),
        });
    }
    let (_, g) = f.eval_with_gradient(z);
    let lambda: f64 = g.iter().zip(z).map(|(gj, zj)| gj.norm_sqr() * zj.norm_sqr()).sum();
    if lambda.sqrt() < 1e-12 {
        return Err(Error::CriticalPoint(lambda.sqrt()));
    }
    let components = g
        .iter()
        .zip(z)
        .map(|(gj, zj)| a * gj.conj() * zj.norm_sqr() / lambda)
        .collect();
    Ok(TangentVectorC {
        base: z.to_vec(),
        components,
    })
}

/// `df(v) = sum g_j v_j`.
pub fn pushforward(f: &LaurentPolynomial, v: &TangentVectorC) -> Complex64 {
    let (_, g) = f.eval_with_gradient(&v.base);
    g.iter().zip(&v.components).map(|(a, b)| a * b).sum()
}
