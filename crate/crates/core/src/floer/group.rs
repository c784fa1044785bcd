use std::collections::BTreeMap;

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::polytope::{interior_lattice_points, lattice_points, OriginPosition};
use crate::lattice::{Polytope, RationalVector};

/// `L(j)`, the zero section twisted `j` times by `(u, theta) -> (u, theta - 2 pi u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwistedSection {
    pub twist: i64,
}

impl TwistedSection {
    pub fn new(twist: i64) -> Self {
        Self { twist }
    }

    pub fn zero_section() -> Self {
        Self { twist: 0 }
    }

    /// Twisting `L(j)` by `k` gives `L(j + k)`.
    pub fn twisted(self, k: i64) -> Self {
        Self { twist: self.twist + k }
    }
}

/// Intersection point of `L(l1)` and `L(l2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FloerGenerator {
    pub l1: i64,
    pub l2: i64,
    pub point: RationalVector,
    pub homological_degree: usize,
}

impl FloerGenerator {
    pub fn dim(&self) -> usize {
        self.point.dim()
    }

    pub fn cohomological_degree(&self) -> usize {
        self.dim() - self.homological_degree
    }

    /// Generator of `HF(L(l), L(l))`, placed at the origin.
    pub fn unit(l: i64, n: usize) -> Self {
        Self {
            l1: l,
            l2: l,
            point: RationalVector::zero(n),
            homological_degree: n,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.l1 == self.l2
    }
}

/// `HF(L(l1), L(l2))` with its basis in lexicographic order of points.
#[derive(Clone, Debug)]
pub struct FloerGroup {
    l1: i64,
    l2: i64,
    q: Polytope,
    basis: Vec<FloerGenerator>,
    index: BTreeMap<RationalVector, usize>,
}

impl FloerGroup {
    pub fn l1(&self) -> i64 {
        self.l1
    }

    pub fn l2(&self) -> i64 {
        self.l2
    }

    pub fn polytope(&self) -> &Polytope {
        &self.q
    }

    pub fn basis(&self) -> &[FloerGenerator] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, point: &RationalVector) -> Option<usize> {
        self.index.get(point).copied()
    }

    /// Cohomological degree shared by every generator (0 for an empty group).
    pub fn cohomological_degree(&self) -> usize {
        self.basis.first().map_or(0, FloerGenerator::cohomological_degree)
    }
}

/// Generators: `Q ∩ (1/(l2-l1)) Z^n` when `l1 < l2`, interior points of
/// `Q ∩ (1/(l1-l2)) Z^n` when `l1 > l2`, a single generator when equal.
pub fn floer_group(q: &Polytope, l1: i64, l2: i64) -> FloerGroup {
    let n = q.ambient_dim();
    if q.origin_position() != OriginPosition::Interior {
        log::warn!("origin is not interior to Q; Floer groups may not model the twisted sections");
    }
    let basis: Vec<FloerGenerator> = if l1 == l2 {
        vec![FloerGenerator::unit(l1, n)]
    } else {
        let d = l1.abs_diff(l2);
        let (points, degree) = if l1 < l2 {
            (lattice_points(q, d), n)
        } else {
            (interior_lattice_points(q, d).unwrap_or_default(), 0)
        };
        points
            .into_iter()
            .map(|point| FloerGenerator {
                l1,
                l2,
                point,
                homological_degree: degree,
            })
            .collect()
    };
    let index = basis.iter().enumerate().map(|(i, g)| (g.point.clone(), i)).collect();
    FloerGroup {
        l1,
        l2,
        q: q.clone(),
        basis,
        index,
    }
}

/// `r = ((l2 - l1) p + (l3 - l2) q) / (l3 - l1)`.
pub fn triangle_target(l1: i64, l2: i64, l3: i64, p: &RationalVector, q: &RationalVector) -> Result<RationalVector> {
    if l1 == l3 {
        return Err(Error::DegenerateTriple(l1));
    }
    let a = BigRational::from_integer(BigInt::from(l2 - l1));
    let b = BigRational::from_integer(BigInt::from(l3 - l2));
    let c = BigRational::from_integer(BigInt::from(l3 - l1));
    Ok(RationalVector::new(
        p.coords()
            .iter()
            .zip(q.coords())
            .map(|(x, y)| (&a * x + &b * y) / &c)
            .collect(),
    ))
}

/// The twist orderings that admit a holomorphic triangle.
pub fn ordering_condition(l1: i64, l2: i64, l3: i64) -> bool {
    (l1 < l2 && (l3 < l1 || l2 < l3)) || (l2 < l1 && l2 < l3 && l3 < l1)
}

/// Whether `r` is a generator of `HF(L(l1), L(l3))`: boundary points count
/// only when `l1 < l3`.
pub fn admissible(q: &Polytope, l1: i64, l3: i64, r: &RationalVector) -> bool {
    if l1 == l3 {
        return r.is_zero();
    }
    let d = BigRational::from_integer(BigInt::from(l1.abs_diff(l3)));
    let integral = r.coords().iter().all(|c| (c * &d).is_integer());
    integral && if l1 < l3 { q.contains(r) } else { q.contains_strictly(r) }
}

pub fn triangle_exists(l1: i64, l2: i64, l3: i64, p: &RationalVector, q: &RationalVector, poly: &Polytope) -> Result<bool> {
    let r = triangle_target(l1, l2, l3, p, q)?;
    Ok(ordering_condition(l1, l2, l3) && admissible(poly, l1, l3, &r))
}

/// Product of `x` in `HF(L(l1), L(l2))` and `y` in `HF(L(l2), L(l3))`: a
/// single generator of `HF(L(l1), L(l3))` with coefficient 1, or zero.
pub fn cup_product(x: &FloerGenerator, y: &FloerGenerator, q: &Polytope) -> Result<Option<FloerGenerator>> {
    if x.l2 != y.l1 {
        return Err(Error::TwistMismatch(x.l1, x.l2, y.l1, y.l2));
    }
    let (l1, l2, l3) = (x.l1, x.l2, y.l2);
    if l1 == l2 || l2 == l3 {
        let out = if l1 == l2 { y } else { x };
        if !out.is_unit() && q.on_boundary(&out.point) {
            log::debug!("unit acting on boundary generator {} ({l1},{l2},{l3})", out.point);
        }
        return Ok(Some(out.clone()));
    }
    if l1 == l3 {
        // the degrees add to n, but HF(L(l), L(l)) lives in degree 0
        return Ok(None);
    }
    if !triangle_exists(l1, l2, l3, &x.point, &y.point, q)? {
        return Ok(None);
    }
    let point = triangle_target(l1, l2, l3, &x.point, &y.point)?;
    let n = point.dim();
    Ok(Some(FloerGenerator {
        l1,
        l2: l3,
        point,
        homological_degree: if l1 < l3 { n } else { 0 },
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{polytope_from_bundle, standard, SupportFunction};

    fn p2() -> Polytope {
        let fan = standard::projective_plane();
        polytope_from_bundle(&fan, &SupportFunction::constant(&fan, 1)).unwrap()
    }

    fn v(a: i64, b: i64) -> RationalVector {
        RationalVector::from_ints(&[a, b])
    }

    #[test]
    fn group_sizes() {
        let q = p2();
        let g = floer_group(&q, 0, 1);
        assert_eq!(g.dim(), 10);
        assert_eq!(g.cohomological_degree(), 0);
        let g = floer_group(&q, 0, -1);
        assert_eq!(g.dim(), 1);
        assert_eq!(g.basis()[0].point, v(0, 0));
        assert_eq!(g.cohomological_degree(), 2);
        let g = floer_group(&q, 3, 3);
        assert_eq!(g.dim(), 1);
        assert_eq!(g.basis()[0].homological_degree, 2);
        assert_eq!(g.basis()[0].cohomological_degree(), 0);
    }

    #[test]
    fn targets() {
        assert_eq!(
            triangle_target(0, 1, 2, &v(1, 0), &v(0, 1)).unwrap(),
            RationalVector::from_ratios(&[(1, 2), (1, 2)])
        );
        assert_eq!(triangle_target(0, 1, 2, &v(1, 0), &v(1, 0)).unwrap(), v(1, 0));
        assert_eq!(triangle_target(0, 2, 3, &v(1, 1), &v(-2, 1)).unwrap(), v(0, 1));
        assert_eq!(triangle_target(1, 2, 1, &v(0, 0), &v(0, 0)), Err(Error::DegenerateTriple(1)));
    }

    #[test]
    fn orderings() {
        assert!(ordering_condition(0, 1, 2));
        assert!(ordering_condition(0, 1, -1));
        assert!(!ordering_condition(1, 0, 2));
        assert!(!triangle_exists(1, 0, 2, &v(0, 0), &v(0, 0), &p2()).unwrap());
    }

    #[test]
    fn products() {
        let q = p2();
        let g01 = floer_group(&q, 0, 1);
        let x = &g01.basis()[g01.index_of(&v(1, 0)).unwrap()];
        let g12 = floer_group(&q, 1, 2);
        let y = &g12.basis()[g12.index_of(&v(0, 1)).unwrap()];
        let r = cup_product(x, y, &q).unwrap().unwrap();
        assert_eq!(r.point, RationalVector::from_ratios(&[(1, 2), (1, 2)]));
        assert_eq!((r.l1, r.l2), (0, 2));

        let x = FloerGenerator { l1: 0, l2: 1, point: v(1, 1), homological_degree: 2 };
        let y = FloerGenerator { l1: 1, l2: 2, point: v(1, -2), homological_degree: 2 };
        let r = cup_product(&x, &y, &q).unwrap().unwrap();
        assert_eq!(r.point, RationalVector::from_ratios(&[(1, 1), (-1, 2)]));

        // unit on the left
        let e = FloerGenerator::unit(1, 2);
        let g13 = floer_group(&q, 1, 3);
        for y in g13.basis() {
            assert_eq!(cup_product(&e, y, &q).unwrap().as_ref(), Some(y));
        }
        assert!(matches!(cup_product(&e, &x, &q), Err(Error::TwistMismatch(..))));
    }

    #[test]
    fn composition_of_twists() {
        assert_eq!(TwistedSection::new(2).twisted(3), TwistedSection::new(5));
        assert_eq!(TwistedSection::zero_section().twisted(0), TwistedSection::zero_section());
    }
}
