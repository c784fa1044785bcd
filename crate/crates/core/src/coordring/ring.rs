use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::polytope::{dilate_count, dilate_interior_count, integer_points};
use crate::lattice::{LatticeVector, Polytope};

/// `sum_{j <= J} C^{jQ ∩ Z^n}` with `(j, m) (k, m') = (j + k, m + m')`.
#[derive(Clone, Debug)]
pub struct SectionRing {
    q: Polytope,
    max_degree: usize,
    bases: Vec<Vec<LatticeVector>>,
    index: Vec<BTreeMap<LatticeVector, usize>>,
}

impl SectionRing {
    pub fn polytope(&self) -> &Polytope {
        &self.q
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn basis(&self, j: usize) -> &[LatticeVector] {
        &self.bases[j]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, j: usize, m: &LatticeVector) -> Option<usize> {
        self.index.get(j).and_then(|ix| ix.get(m).copied())
    }

    /// `None` when `j + k` exceeds the truncation degree.
    pub fn product(&self, j: usize, a: usize, k: usize, b: usize) -> Option<usize> {
        if j + k > self.max_degree {
            log::debug!("product of degrees {j} and {k} truncated at {}", self.max_degree);
            return None;
        }
        let m = &self.bases[j][a] + &self.bases[k][b];
        self.index_of(j + k, &m)
    }

    /// Unit `(0, 0)`.
    pub fn unit(&self) -> (usize, usize) {
        (0, 0)
    }
}

/// Bases by integer points of the dilates `jQ`.
pub fn section_ring(q: &Polytope, max_degree: usize) -> SectionRing {
    if !q.is_lattice_polytope() {
        log::warn!("Q is not a lattice polytope; the ring is built from lattice points of its dilates");
    }
    let bases: Vec<Vec<LatticeVector>> = (0..=max_degree)
        .map(|j| {
            let mut b = integer_points(&q.dilate(&BigInt::from(j)), false);
            b.sort();
            b
        })
        .collect();
    let index = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
        .collect();
    SectionRing {
        q: q.clone(),
        max_degree,
        bases,
        index,
    }
}

/// `[|jQ ∩ Z^n|]` for `j = 0..=j_max`.
pub fn hilbert_function(q: &Polytope, j_max: usize) -> Vec<usize> {
    (0..=j_max).map(|j| dilate_count(q, j as u64)).collect()
}

/// Interior counts of `jQ`; 0 at `j = 0` by convention.
pub fn interior_counts(q: &Polytope, j_max: usize) -> Vec<usize> {
    (0..=j_max).map(|j| dilate_interior_count(q, j as u64)).collect()
}

/// Lattice-point counting polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    coeffs: Vec<BigRational>,
}

impl EhrhartPolynomial {
    /// Interpolates `L(0), ..., L(n)` exactly.
    pub fn fit(q: &Polytope) -> Result<Self> {
        if !q.is_lattice_polytope() {
            return Err(Error::Unsupported(
                "counting function of a non-lattice polytope is a quasi-polynomial".into(),
            ));
        }
        let n = q.ambient_dim();
        let values: Vec<BigRational> = (0..=n)
            .map(|j| BigRational::from_integer(BigInt::from(dilate_count(q, j as u64))))
            .collect();
        Ok(Self::interpolate(&values))
    }

    /// Polynomial of degree `< values.len()` through `(j, values[j])`.
    pub fn interpolate(values: &[BigRational]) -> Self {
        let m = values.len();
        let mut coeffs = vec![BigRational::zero(); m];
        for (i, yi) in values.iter().enumerate() {
            // basis polynomial prod_{k != i} (x - k) / (i - k)
            let mut basis = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for k in 0..m {
                if k == i {
                    continue;
                }
                let kk = BigRational::from_integer(BigInt::from(k));
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (d, c) in basis.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * &kk;
                }
                basis = next;
                denom *= BigRational::from_integer(BigInt::from(i as i64 - k as i64));
            }
            for (d, c) in basis.iter().enumerate() {
                coeffs[d] += c * yi / &denom;
            }
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, j: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(j));
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRow {
    pub j: usize,
    pub count: usize,
    pub interior: usize,
}

pub fn hilbert_table(q: &Polytope, j_max: usize) -> Vec<HilbertRow> {
    hilbert_function(q, j_max)
        .into_iter()
        .zip(interior_counts(q, j_max))
        .enumerate()
        .map(|(j, (count, interior))| HilbertRow { j, count, interior })
        .collect()
}
