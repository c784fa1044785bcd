use serde::{Deserialize, Serialize};

use super::group::{cup_product, floer_group};
use crate::error::{Error, Result};
use crate::lattice::Polytope;

/// `dim HF^n(L, L(j))` for `j < 0`: interior points of `Q ∩ (1/|j|) Z^n`.
pub fn serre_dual_dimension(q: &Polytope, j: i64) -> Result<usize> {
    if j >= 0 {
        return Err(Error::Unsupported(format!("twist must be negative, got {j}")));
    }
    Ok(floer_group(q, 0, j).dim())
}

/// Products `HF^0(L, L(l)) x HF^n(L(l), L(l + j)) -> HF^n(L, L(l + j))`
/// for `l > 0`, `j < -l`, read off the positive table
/// `(0, l, l + m)`, `m = -(l + j)`, by transposition: the entry
/// `[p, q, r]` exists iff the positive product sends `(p, r)` to `q`.
pub fn dual_product_table(q: &Polytope, l: i64, j: i64) -> Result<Vec<[usize; 3]>> {
    if !(l > 0 && j < -l) {
        return Err(Error::Unsupported(format!(
            "transpose rule needs l > 0 and j < -l, got l = {l}, j = {j}"
        )));
    }
    let m = -(l + j);
    let x_group = floer_group(q, 0, l);
    let y_group = floer_group(q, l, l + j);
    let r_group = floer_group(q, 0, l + j);
    let pos_right = floer_group(q, l, l + m);
    let mut out = Vec::new();
    for (pi, x) in x_group.basis().iter().enumerate() {
        for (ri, r) in r_group.basis().iter().enumerate() {
            // r is interior, so it is also a generator of (l, l + m)
            let Some(rr) = pos_right.index_of(&r.point) else {
                continue;
            };
            if let Some(prod) = cup_product(x, &pos_right.basis()[rr], q)? {
                if let Some(qi) = y_group.index_of(&prod.point) {
                    out.push([pi, qi, ri]);
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualReport {
    /// `(l, j)` pairs where the transpose rule was compared with the direct product.
    pub verified_cases: Vec<(i64, i64)>,
    pub mismatches: usize,
    /// Mixed-sign `(l, j)` pairs with non-zero products that the transpose
    /// rule does not cover; computed directly but not cross-checked.
    pub unverified_cases: Vec<(i64, i64)>,
}

/// Compares `dual_product_table` with the direct cup product for
/// `0 < l`, `l < -j <= max`, and lists the other mixed-sign cases.
pub fn verify_dual_products(q: &Polytope, max: i64) -> Result<DualReport> {
    let mut rep = DualReport::default();
    for l in 1..=max {
        for j in -max..0 {
            let x_group = floer_group(q, 0, l);
            let y_group = floer_group(q, l, l + j);
            let r_group = floer_group(q, 0, l + j);
            if l + j == 0 {
                continue;
            }
            let mut direct = Vec::new();
            for (pi, x) in x_group.basis().iter().enumerate() {
                for (qi, y) in y_group.basis().iter().enumerate() {
                    if let Some(r) = cup_product(x, y, q)? {
                        if let Some(ri) = r_group.index_of(&r.point) {
                            direct.push([pi, qi, ri]);
                        }
                    }
                }
            }
            direct.sort_unstable();
            if j < -l {
                rep.verified_cases.push((l, j));
                let t = dual_product_table(q, l, j)?;
                if t != direct {
                    rep.mismatches += 1;
                }
            } else if !direct.is_empty() {
                rep.unverified_cases.push((l, j));
            }
        }
    }
    if !rep.unverified_cases.is_empty() {
        log::info!("mixed-sign products without a transpose check: {:?}", rep.unverified_cases);
    }
    Ok(rep)
}
