use std::collections::BTreeSet;

use num::{BigInt, BigRational};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ring::{interior_counts, EhrhartPolynomial, SectionRing};
use crate::error::Result;
use crate::floer::{serre_dual_dimension, GradedAlgebra};
use crate::lattice::polytope::dilate_count;
use crate::lattice::vector::format_rational;
use crate::lattice::{LatticeVector, Polytope, RationalVector};

/// `Phi(x y) != Phi(x) Phi(y)` for one basis pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub j: usize,
    pub k: usize,
    pub p: usize,
    pub q: usize,
    /// `Phi` of the Floer product, `None` for zero.
    pub floer: Option<LatticeVector>,
    pub ring: Option<LatticeVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomorphismReport {
    /// `"pass"` or `"fail"`.
    pub verdict: String,
    pub max_degree: usize,
    pub bijection_ok: Vec<bool>,
    pub products_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl IsomorphismReport {
    pub fn success(&self) -> bool {
        self.verdict == "pass"
    }
}

/// `Phi(j, p) = j p`, or `None` when `j p` is not integral.
pub fn generator_map(j: usize, p: &RationalVector) -> Option<LatticeVector> {
    p.scale(&BigRational::from_integer(BigInt::from(j))).to_lattice()
}

/// Checks that `Phi` is a bijection in every degree and carries each
/// tabulated Floer product to the ring product. Exact throughout.
pub fn verify_isomorphism(alg: &GradedAlgebra, ring: &SectionRing) -> IsomorphismReport {
    let jmax = alg.max_twist().min(ring.max_degree());
    let images: Vec<Vec<Option<LatticeVector>>> = (0..=jmax)
        .map(|j| alg.piece(j).basis().iter().map(|g| generator_map(j, &g.point)).collect())
        .collect();
    let bijection_ok: Vec<bool> = (0..=jmax)
        .map(|j| {
            let img = &images[j];
            let distinct: BTreeSet<&LatticeVector> = img.iter().flatten().collect();
            img.iter().all(|m| m.as_ref().is_some_and(|m| ring.index_of(j, m).is_some()))
                && distinct.len() == img.len()
                && img.len() == ring.basis(j).len()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = alg.table_keys().filter(|(j, k)| j + k <= jmax).collect();
    let results: Vec<(usize, Vec<Mismatch>)> = pairs
        .par_iter()
        .map(|&(j, k)| {
            let mut checked = 0;
            let mut bad = Vec::new();
            for p in 0..alg.piece(j).dim() {
                for q in 0..alg.piece(k).dim() {
                    checked += 1;
                    let floer = alg.product(j, p, k, q).and_then(|r| images[j + k][r].clone());
                    let ring_prod = match (&images[j][p], &images[k][q]) {
                        (Some(a), Some(b)) => {
                            let ia = ring.index_of(j, a);
                            let ib = ring.index_of(k, b);
                            match (ia, ib) {
                                (Some(ia), Some(ib)) => ring.product(j, ia, k, ib).map(|r| ring.basis(j + k)[r].clone()),
                                _ => None,
                            }
                        }
                        _ => None,
                    };
                    if floer != ring_prod {
                        bad.push(Mismatch {
                            j,
                            k,
                            p,
                            q,
                            floer,
                            ring: ring_prod,
                        });
                    }
                }
            }
            (checked, bad)
        })
        .collect();
    let mut products_checked = 0;
    let mut mismatches = Vec::new();
    for (c, b) in results {
        products_checked += c;
        mismatches.extend(b);
    }
    let ok = bijection_ok.iter().all(|&b| b) && mismatches.is_empty();
    IsomorphismReport {
        verdict: if ok { "pass" } else { "fail" }.into(),
        max_degree: jmax,
        bijection_ok,
        products_checked,
        mismatches,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerreRow {
    pub j: usize,
    /// `dim HF^n(L, L(-j))`.
    pub floer_dual: usize,
    /// Interior points of `jQ`.
    pub interior: usize,
    /// `(-1)^n L(-j)` as `p/q`.
    pub reciprocity: String,
    /// `|jQ ∩ Z^n| - interior`, which must equal the boundary count.
    pub boundary: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerreReport {
    pub verdict: String,
    pub rows: Vec<SerreRow>,
}

impl SerreReport {
    pub fn success(&self) -> bool {
        self.verdict == "pass"
    }
}

/// `dim HF^n(L, L(-j)) = |int(jQ) ∩ Z^n| = (-1)^n L(-j)` for `1 <= j <= j_max`.
pub fn serre_check(q: &Polytope, j_max: usize) -> Result<SerreReport> {
    let n = q.ambient_dim();
    let ehrhart = EhrhartPolynomial::fit(q)?;
    let interior = interior_counts(q, j_max);
    let mut rows = Vec::new();
    for j in 1..=j_max {
        let floer_dual = serre_dual_dimension(q, -(j as i64))?;
        let mut recip = ehrhart.eval(-(j as i64));
        if n % 2 == 1 {
            recip = -recip;
        }
        let count = dilate_count(q, j as u64);
        let boundary_points = boundary_count(q, j);
        let ok = floer_dual == interior[j]
            && recip == BigRational::from_integer(BigInt::from(interior[j]))
            && count - floer_dual == boundary_points;
        rows.push(SerreRow {
            j,
            floer_dual,
            interior: interior[j],
            reciprocity: format_rational(&recip),
            boundary: boundary_points,
            ok,
        });
    }
    let ok = rows.iter().all(|r| r.ok);
    Ok(SerreReport {
        verdict: if ok { "pass" } else { "fail" }.into(),
        rows,
    })
}

/// Integer points on the boundary of `jQ`, tested facet by facet.
fn boundary_count(q: &Polytope, j: usize) -> usize {
    let p = q.dilate(&BigInt::from(j));
    crate::lattice::integer_points(&p, false)
        .iter()
        .filter(|m| p.on_boundary(&m.to_rational()))
        .count()
}
