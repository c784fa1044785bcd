use std::collections::BTreeSet;

use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{format_rational, parse_rational, Fan, LatticeVector, RationalVector, SupportFunction};

/// Heights `nu(alpha)` on a finite support `A` of exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFunction {
    support: Vec<LatticeVector>,
    heights: Vec<BigRational>,
}

impl HeightFunction {
    pub fn new(support: Vec<LatticeVector>, heights: Vec<BigRational>) -> Result<Self> {
        if support.len() < 2 {
            return Err(Error::DegenerateSupport(format!(
                "support needs at least two points, got {}",
                support.len()
            )));
        }
        if support.len() != heights.len() {
            return Err(Error::DegenerateSupport(format!(
                "{} heights for {} support points",
                heights.len(),
                support.len()
            )));
        }
        let n = support[0].dim();
        if let Some(a) = support.iter().find(|a| a.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: a.dim(),
            });
        }
        if support.iter().collect::<BTreeSet<_>>().len() != support.len() {
            return Err(Error::DegenerateSupport("repeated exponent".into()));
        }
        Ok(Self { support, heights })
    }

    pub fn from_i64(support: &[&[i64]], heights: &[i64]) -> Result<Self> {
        Self::new(
            support.iter().map(|a| LatticeVector::from_i64(a)).collect(),
            heights.iter().map(|&h| BigRational::from_integer(h.into())).collect(),
        )
    }

    /// `A = {0} ∪ rays` with `nu(0) = 0` and `nu(v_i) = phi(v_i)`. The origin
    /// always has index 0 and ray `i` has index `i + 1`.
    pub fn from_bundle(fan: &Fan, phi: &SupportFunction) -> Result<Self> {
        if phi.values().len() != fan.rays().len() {
            return Err(Error::MalformedFan(format!(
                "{} support values for {} rays",
                phi.values().len(),
                fan.rays().len()
            )));
        }
        let mut support = vec![LatticeVector::zero(fan.dim())];
        support.extend(fan.rays().iter().cloned());
        let mut heights = vec![BigRational::zero()];
        heights.extend(phi.values().iter().cloned());
        Self::new(support, heights)
    }

    pub fn dim(&self) -> usize {
        self.support[0].dim()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn support(&self) -> &[LatticeVector] {
        &self.support
    }

    pub fn heights(&self) -> &[BigRational] {
        &self.heights
    }

    pub fn index_of(&self, alpha: &LatticeVector) -> Option<usize> {
        self.support.iter().position(|a| a == alpha)
    }

    /// `<alpha, u> - nu(alpha)`.
    pub fn affine_value(&self, i: usize, u: &RationalVector) -> BigRational {
        self.support[i].dot_rational(u) - &self.heights[i]
    }

    /// Support translated by `v`; heights unchanged.
    pub fn translate(&self, v: &LatticeVector) -> HeightFunction {
        HeightFunction {
            support: self.support.iter().map(|a| a + v).collect(),
            heights: self.heights.clone(),
        }
    }

    /// Adds the affine function `<w, alpha> + c` to the heights.
    pub fn add_affine(&self, w: &RationalVector, c: &BigRational) -> HeightFunction {
        HeightFunction {
            support: self.support.clone(),
            heights: self
                .support
                .iter()
                .zip(&self.heights)
                .map(|(a, h)| h + a.dot_rational(w) + c)
                .collect(),
        }
    }

    pub fn to_json(&self) -> HeightJson {
        HeightJson {
            support: self.support.iter().map(LatticeVector::to_i64).collect(),
            heights: self.heights.iter().map(format_rational).collect(),
        }
    }

    pub fn from_json(j: &HeightJson) -> Result<Self> {
        Self::new(
            j.support.iter().map(|a| LatticeVector::from_i64(a)).collect(),
            j.heights.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeightJson {
    pub support: Vec<Vec<i64>>,
    pub heights: Vec<String>,
}

/// `L(u) = max_alpha (<alpha, u> - nu(alpha))` together with every index
/// attaining the maximum.
pub fn legendre_value(h: &HeightFunction, u: &RationalVector) -> (BigRational, Vec<usize>) {
    let mut best = h.affine_value(0, u);
    let mut arg = vec![0];
    for i in 1..h.len() {
        let v = h.affine_value(i, u);
        if v > best {
            best = v;
            arg.clear();
            arg.push(i);
        } else if v == best {
            arg.push(i);
        }
    }
    (best, arg)
}

/// Floating-point Legendre value, used by the samplers.
pub fn legendre_value_f64(h: &HeightFunction, u: &[f64]) -> f64 {
    h.support
        .iter()
        .zip(&h.heights)
        .map(|(a, nu)| {
            let a = a.to_f64();
            a.iter().zip(u).map(|(x, y)| x * y).sum::<f64>() - crate::lattice::vector::rat_to_f64(nu)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}
