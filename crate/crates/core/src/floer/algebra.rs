use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::group::{cup_product, floer_group, FloerGroup};
use crate::error::{Error, Result};
use crate::lattice::polytope::OriginPosition;
use crate::lattice::Polytope;

/// `sum_j HF^0(L, L(j))` for `0 <= j <= J` with the cup product tabulated
/// on `(0, j, j + k)`. All structure constants are 0 or 1, so a table entry
/// is the index of the product generator or `None`.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    q: Polytope,
    max_twist: usize,
    pieces: Vec<FloerGroup>,
    tables: BTreeMap<(usize, usize), Vec<Option<usize>>>,
    degree_violations: usize,
}

/// Exhaustive checks of the algebra axioms on the tables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub associativity_checked: usize,
    pub associativity_violations: usize,
    pub unit_checked: usize,
    pub unit_violations: usize,
    pub degree_checked: usize,
    pub degree_violations: usize,
    pub commutativity_checked: usize,
    pub commutativity_violations: usize,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.associativity_violations == 0
            && self.unit_violations == 0
            && self.degree_violations == 0
            && self.commutativity_violations == 0
    }
}

/// Basis of one piece, rationals as `p/q` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisManifest {
    pub twist: usize,
    pub points: Vec<Vec<String>>,
}

impl GradedAlgebra {
    pub fn polytope(&self) -> &Polytope {
        &self.q
    }

    pub fn max_twist(&self) -> usize {
        self.max_twist
    }

    pub fn piece(&self, j: usize) -> &FloerGroup {
        &self.pieces[j]
    }

    pub fn pieces(&self) -> &[FloerGroup] {
        &self.pieces
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(FloerGroup::dim).collect()
    }

    /// Product of basis element `p` of piece `j` with `q` of piece `k`.
    pub fn product(&self, j: usize, p: usize, k: usize, q: usize) -> Option<usize> {
        let dk = self.pieces[k].dim();
        self.tables.get(&(j, k)).and_then(|t| t[p * dk + q])
    }

    /// Overwrites one structure constant.
    pub fn set_product(&mut self, j: usize, p: usize, k: usize, q: usize, r: Option<usize>) {
        let dk = self.pieces[k].dim();
        if let Some(t) = self.tables.get_mut(&(j, k)) {
            t[p * dk + q] = r;
        }
    }

    /// Degree pairs `(j, k)` with `j + k <= J`.
    pub fn table_keys(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.tables.keys().copied()
    }

    /// Non-zero entries `[p, q, r]` of the `(j, k)` table.
    pub fn table(&self, j: usize, k: usize) -> Vec<[usize; 3]> {
        let dk = self.pieces[k].dim();
        self.tables
            .get(&(j, k))
            .map(|t| {
                t.iter()
                    .enumerate()
                    .filter_map(|(i, r)| r.map(|r| [i / dk, i % dk, r]))
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Number of tabulated basis pairs.
    pub fn products_tabulated(&self) -> usize {
        self.tables.values().map(Vec::len).sum()
    }

    /// `{"j,k": [[p, q, r], ...]}`.
    pub fn tables_json(&self) -> BTreeMap<String, Vec<[usize; 3]>> {
        self.tables
            .keys()
            .map(|&(j, k)| (format!("{j},{k}"), self.table(j, k)))
            .collect()
    }

    pub fn basis_manifests(&self) -> Vec<BasisManifest> {
        self.pieces
            .iter()
            .enumerate()
            .map(|(j, g)| BasisManifest {
                twist: j,
                points: g.basis().iter().map(|x| x.point.to_strings()).collect(),
            })
            .collect()
    }
}

/// Tabulates every product `(0, j, j + k)` with `j + k <= J` and checks
/// the axioms. An associativity failure is an error.
pub fn assemble_algebra(q: &Polytope, max_twist: usize) -> Result<GradedAlgebra> {
    if max_twist < 1 {
        return Err(Error::Unsupported("the maximal twist must be at least 1".into()));
    }
    if q.origin_position() != OriginPosition::Interior {
        log::warn!("origin is not interior to Q");
    }
    let jmax = max_twist as i64;
    let pieces: Vec<FloerGroup> = (0..=jmax).map(|j| floer_group(q, 0, j)).collect();
    let mut tables = BTreeMap::new();
    let mut degree_violations = 0;
    for j in 0..=max_twist {
        for k in 0..=(max_twist - j) {
            let (l2, l3) = (j as i64, (j + k) as i64);
            let left = &pieces[j];
            let right = floer_group(q, l2, l3);
            let target = &pieces[j + k];
            let rows: Vec<Vec<(Option<usize>, bool)>> = left
                .basis()
                .par_iter()
                .map(|x| {
                    right
                        .basis()
                        .iter()
                        .map(|y| match cup_product(x, y, q).expect("twists compose") {
                            None => (None, true),
                            Some(r) => {
                                let idx = target.index_of(&r.point);
                                let ok = idx.is_some() && r.l1 == 0 && r.l2 == l3 && r.cohomological_degree() == 0;
                                (idx, ok)
                            }
                        })
                        .collect()
                })
                .collect();
            let mut table = Vec::with_capacity(left.dim() * right.dim());
            for row in rows {
                for (r, ok) in row {
                    degree_violations += usize::from(!ok);
                    table.push(r);
                }
            }
            tables.insert((j, k), table);
        }
    }
    let alg = GradedAlgebra {
        q: q.clone(),
        max_twist,
        pieces,
        tables,
        degree_violations,
    };
    let report = check_axioms(&alg)?;
    if report.associativity_violations > 0 {
        return Err(Error::AssociativityViolation(format!(
            "{} of {} triples",
            report.associativity_violations, report.associativity_checked
        )));
    }
    Ok(alg)
}

/// Associativity over all basis triples with total twist at most `J`,
/// two-sided unit, degree additivity and `c(j,p;k,q) = c(k,q;j,p)`.
///
/// For associativity the inner product `y z` is recomputed with its actual
/// twists `(j, j+k, j+k+l)` rather than read from the tables.
pub fn check_axioms(alg: &GradedAlgebra) -> Result<AxiomReport> {
    let mut rep = AxiomReport {
        degree_violations: alg.degree_violations,
        degree_checked: alg.products_tabulated(),
        ..Default::default()
    };
    let jmax = alg.max_twist;
    let q = &alg.q;
    for j in 0..=jmax {
        for k in 0..=(jmax - j) {
            for l in 0..=(jmax - j - k) {
                let (a, b, c) = (j as i64, (j + k) as i64, (j + k + l) as i64);
                let gy = floer_group(q, a, b);
                let gz = floer_group(q, b, c);
                let dj = alg.pieces[j].dim();
                let counts: Vec<(usize, usize)> = (0..dj)
                    .into_par_iter()
                    .map(|p| {
                        let mut checked = 0;
                        let mut bad = 0;
                        for (qi, y) in gy.basis().iter().enumerate() {
                            let xy = alg.product(j, p, k, qi);
                            for (si, z) in gz.basis().iter().enumerate() {
                                let left = xy.and_then(|r| alg.product(j + k, r, l, si));
                                let yz = cup_product(y, z, q).expect("twists compose");
                                let right = yz.and_then(|g| {
                                    alg.pieces[k + l].index_of(&g.point).and_then(|r| alg.product(j, p, k + l, r))
                                });
                                checked += 1;
                                bad += usize::from(left != right);
                            }
                        }
                        (checked, bad)
                    })
                    .collect();
                for (c, b) in counts {
                    rep.associativity_checked += c;
                    rep.associativity_violations += b;
                }
            }
        }
    }
    for k in 0..=jmax {
        for p in 0..alg.pieces[k].dim() {
            rep.unit_checked += 2;
            rep.unit_violations += usize::from(alg.product(0, 0, k, p) != Some(p));
            rep.unit_violations += usize::from(alg.product(k, p, 0, 0) != Some(p));
        }
    }
    for j in 0..=jmax {
        for k in j..=(jmax - j) {
            for p in 0..alg.pieces[j].dim() {
                // each unordered pair once
                let start = if j == k { p + 1 } else { 0 };
                for qi in start..alg.pieces[k].dim() {
                    rep.commutativity_checked += 1;
                    rep.commutativity_violations += usize::from(alg.product(j, p, k, qi) != alg.product(k, qi, j, p));
                }
            }
        }
    }
    Ok(rep)
}
