use std::collections::BTreeSet;

use num::{BigInt, BigRational, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::{self, primitive_integer, RatMatrix};
use super::vector::{format_rational, parse_rational, LatticeVector, RationalVector};
use crate::error::{Error, Result};

/// `<normal, y> <= bound`, normal primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: LatticeVector,
    pub bound: BigRational,
}

impl HalfSpace {
    /// Normalizes a rational inequality to a primitive integer normal.
    pub fn normalized(normal: &[BigRational], bound: &BigRational) -> Self {
        let (normal, k) = primitive_integer(normal);
        Self {
            normal,
            bound: bound * k,
        }
    }

    pub fn from_lattice(normal: LatticeVector, bound: BigRational) -> Self {
        let q: Vec<BigRational> = normal
            .coords()
            .iter()
            .cloned()
            .map(BigRational::from_integer)
            .collect();
        Self::normalized(&q, &bound)
    }

    /// `bound - <normal, y>`; non-negative on the half-space.
    pub fn slack(&self, y: &RationalVector) -> BigRational {
        &self.bound - self.normal.dot_rational(y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OriginPosition {
    Interior,
    Boundary,
    Outside,
}

/// Bounded convex polytope kept in both representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    ambient_dim: usize,
    hrep: Vec<HalfSpace>,
    vertices: Vec<RationalVector>,
    affine_dim: usize,
}

impl Polytope {
    /// Builds a polytope from inequalities, enumerating its vertices exactly.
    pub fn from_hrep(ambient_dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        if let Some(h) = halfspaces.iter().find(|h| h.normal.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: h.normal.dim(),
            });
        }
        let hrep: Vec<HalfSpace> = halfspaces.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        // 0 <= b is either vacuous or infeasible
        if hrep.iter().any(|h| h.normal.is_zero() && h.bound.is_negative()) {
            return Err(Error::EmptyPolytope);
        }
        let hrep: Vec<HalfSpace> = hrep.into_iter().filter(|h| !h.normal.is_zero()).collect();
        check_bounded(ambient_dim, &hrep)?;
        let vertices = enumerate_vertices(ambient_dim, &hrep);
        if vertices.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        let affine_dim = linalg::affine_dim(&vertices);
        Ok(Self {
            ambient_dim,
            hrep,
            vertices,
            affine_dim,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.ambient_dim
    }

    pub fn hrep(&self) -> &[HalfSpace] {
        &self.hrep
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn is_lattice_polytope(&self) -> bool {
        self.vertices.iter().all(|v| v.to_lattice().is_some())
    }

    pub fn contains(&self, y: &RationalVector) -> bool {
        self.hrep.iter().all(|h| !h.slack(y).is_negative())
    }

    /// All inequalities strict; never true for lower-dimensional polytopes.
    pub fn contains_strictly(&self, y: &RationalVector) -> bool {
        self.hrep.iter().all(|h| h.slack(y).is_positive())
    }

    pub fn on_boundary(&self, y: &RationalVector) -> bool {
        self.contains(y) && !self.contains_strictly(y)
    }

    pub fn origin_position(&self) -> OriginPosition {
        let o = RationalVector::zero(self.ambient_dim);
        if self.contains_strictly(&o) {
            OriginPosition::Interior
        } else if self.contains(&o) {
            OriginPosition::Boundary
        } else {
            OriginPosition::Outside
        }
    }

    /// `k * P` for a positive integer `k` (k = 0 gives the origin).
    pub fn dilate(&self, k: &BigInt) -> Polytope {
        let kq = BigRational::from_integer(k.clone());
        if k.is_zero() {
            return Polytope::hull(&[RationalVector::zero(self.ambient_dim)])
                .expect("point hull");
        }
        Polytope {
            ambient_dim: self.ambient_dim,
            hrep: self
                .hrep
                .iter()
                .map(|h| HalfSpace {
                    normal: h.normal.clone(),
                    bound: &h.bound * &kq,
                })
                .collect(),
            vertices: self.vertices.iter().map(|v| v.scale(&kq)).collect(),
            affine_dim: self.affine_dim,
        }
    }

    pub fn translate(&self, t: &RationalVector) -> Polytope {
        let hrep = self
            .hrep
            .iter()
            .map(|h| HalfSpace {
                normal: h.normal.clone(),
                bound: &h.bound + h.normal.dot_rational(t),
            })
            .collect();
        let mut vertices: Vec<RationalVector> = self.vertices.iter().map(|v| v + t).collect();
        vertices.sort();
        Polytope {
            ambient_dim: self.ambient_dim,
            hrep,
            vertices,
            affine_dim: self.affine_dim,
        }
    }

    /// Coordinate-wise bounds of the vertex set.
    pub fn bounding_box(&self) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut lo = self.vertices[0].coords().to_vec();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for (i, c) in v.coords().iter().enumerate() {
                if c < &lo[i] {
                    lo[i] = c.clone();
                }
                if c > &hi[i] {
                    hi[i] = c.clone();
                }
            }
        }
        (lo, hi)
    }

    /// Convex hull of a finite point set; lower-dimensional hulls are
    /// returned with `is_full_dimensional() == false`.
    pub fn hull(points: &[RationalVector]) -> Result<Polytope> {
        let pts: Vec<RationalVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let Some(first) = pts.first() else {
            return Err(Error::EmptyPolytope);
        };
        let n = first.dim();
        if let Some(p) = pts.iter().find(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.dim(),
            });
        }
        let diffs: RatMatrix = pts[1..].iter().map(|p| (p - first).into_coords()).collect();
        let mut echelon = diffs.clone();
        let pivots = linalg::rref(&mut echelon);
        let d = pivots.len();

        let (mut hrep, vertices) = if d == n {
            full_dim_hull(&pts)
        } else {
            // Equations of the affine hull, then a hull in the coordinates
            // onto which the affine hull projects injectively.
            let mut hs = Vec::new();
            for c in linalg::null_space(&diffs, n) {
                let b = RationalVector::new(c.clone()).dot(first);
                let neg: Vec<BigRational> = c.iter().map(|x| -x).collect();
                hs.push(HalfSpace::normalized(&c, &b));
                hs.push(HalfSpace::normalized(&neg, &-b));
            }
            if d == 0 {
                (hs, vec![first.clone()])
            } else {
                let project = |p: &RationalVector| {
                    RationalVector::new(pivots.iter().map(|&i| p[i].clone()).collect())
                };
                let projected: Vec<RationalVector> = pts.iter().map(project).collect();
                let (facets, proj_vertices) = full_dim_hull(&projected);
                for f in facets {
                    let mut normal = vec![BigRational::zero(); n];
                    for (k, &i) in pivots.iter().enumerate() {
                        normal[i] = BigRational::from_integer(f.normal[k].clone());
                    }
                    hs.push(HalfSpace::normalized(&normal, &f.bound));
                }
                let verts = pts
                    .iter()
                    .zip(&projected)
                    .filter(|(_, q)| proj_vertices.contains(q))
                    .map(|(p, _)| p.clone())
                    .collect();
                (hs, verts)
            }
        };
        hrep.sort();
        hrep.dedup();
        let mut vertices = vertices;
        vertices.sort();
        Ok(Polytope {
            ambient_dim: n,
            hrep,
            vertices,
            affine_dim: d,
        })
    }

    /// Exact point sets of the facets (as vertex index lists).
    pub fn facet_vertex_sets(&self) -> Vec<Vec<usize>> {
        self.hrep
            .iter()
            .map(|h| {
                (0..self.vertices.len())
                    .filter(|&i| h.slack(&self.vertices[i]).is_zero())
                    .collect()
            })
            .collect()
    }
}

fn full_dim_hull(pts: &[RationalVector]) -> (Vec<HalfSpace>, Vec<RationalVector>) {
    let n = pts[0].dim();
    let mut facets = BTreeSet::new();
    for combo in combinations(pts.len(), n) {
        let base = &pts[combo[0]];
        let rows: RatMatrix = combo[1..]
            .iter()
            .map(|&i| (&pts[i] - base).into_coords())
            .collect();
        let ns = linalg::null_space(&rows, n);
        if ns.len() != 1 {
            continue;
        }
        let a = RationalVector::new(ns.into_iter().next().unwrap());
        let b = a.dot(base);
        let (mut le, mut ge) = (true, true);
        for p in pts {
            let s = a.dot(p) - &b;
            if s.is_positive() {
                le = false;
            } else if s.is_negative() {
                ge = false;
            }
            if !le && !ge {
                break;
            }
        }
        if le {
            facets.insert(HalfSpace::normalized(a.coords(), &b));
        } else if ge {
            let neg: Vec<BigRational> = a.coords().iter().map(|x| -x).collect();
            facets.insert(HalfSpace::normalized(&neg, &-b));
        }
    }
    let facets: Vec<HalfSpace> = facets.into_iter().collect();
    let vertices = pts
        .iter()
        .filter(|p| {
            let tight: Vec<LatticeVector> = facets
                .iter()
                .filter(|h| h.slack(p).is_zero())
                .map(|h| h.normal.clone())
                .collect();
            linalg::rank_lattice(&tight) == n
        })
        .cloned()
        .collect();
    (facets, vertices)
}

fn check_bounded(n: usize, hrep: &[HalfSpace]) -> Result<()> {
    let normals: Vec<LatticeVector> = hrep.iter().map(|h| h.normal.clone()).collect();
    if linalg::rank_lattice(&normals) < n {
        return Err(Error::Unbounded("inequality normals do not span".into()));
    }
    let rows = linalg::to_rat_rows(&normals);
    for combo in combinations(rows.len(), n - 1) {
        let sub: RatMatrix = combo.iter().map(|&i| rows[i].clone()).collect();
        let ns = linalg::null_space(&sub, n);
        if ns.len() != 1 {
            continue;
        }
        let d = RationalVector::new(ns.into_iter().next().unwrap());
        let signs: Vec<BigRational> = normals.iter().map(|a| a.dot_rational(&d)).collect();
        if signs.iter().all(|s| !s.is_positive()) || signs.iter().all(|s| !s.is_negative()) {
            return Err(Error::Unbounded(format!("recession direction {d}")));
        }
    }
    Ok(())
}

fn enumerate_vertices(n: usize, hrep: &[HalfSpace]) -> Vec<RationalVector> {
    let rows: RatMatrix = hrep
        .iter()
        .map(|h| h.normal.coords().iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let mut found = BTreeSet::new();
    for combo in combinations(hrep.len(), n) {
        let a: RatMatrix = combo.iter().map(|&i| rows[i].clone()).collect();
        let b: Vec<BigRational> = combo.iter().map(|&i| hrep[i].bound.clone()).collect();
        if let Some(x) = linalg::solve(&a, &b) {
            let x = RationalVector::new(x);
            if hrep.iter().all(|h| !h.slack(&x).is_negative()) {
                found.insert(x);
            }
        }
    }
    found.into_iter().collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn integer_range(lo: &BigRational, hi: &BigRational) -> (BigInt, BigInt) {
    (lo.ceil().to_integer(), hi.floor().to_integer())
}

/// Odometer over an integer box, first coordinate slowest (lexicographic).
fn for_each_box_point(lo: &[BigInt], hi: &[BigInt], mut f: impl FnMut(&[BigInt])) {
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return;
    }
    let n = lo.len();
    let mut cur = lo.to_vec();
    loop {
        f(&cur);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                for j in (i + 1)..n {
                    cur[j] = lo[j].clone();
                }
                break;
            }
        }
    }
}

/// `Q ∩ (1/d) Z^n`, boundary included, in lexicographic order.
///
/// Scans the integer box of `d * Q` and tests each candidate `m / d`
/// against the inequalities of `Q` in rational arithmetic.
pub fn lattice_points(q: &Polytope, d: u64) -> Vec<RationalVector> {
    refine_scan(q, d, false)
}

/// `(Q - ∂Q) ∩ (1/d) Z^n`; all inequalities strict.
pub fn interior_lattice_points(q: &Polytope, d: u64) -> Result<Vec<RationalVector>> {
    if !q.is_full_dimensional() {
        return Err(Error::LowerDimensional {
            affine_dim: q.affine_dim(),
            ambient_dim: q.ambient_dim(),
        });
    }
    Ok(refine_scan(q, d, true))
}

fn refine_scan(q: &Polytope, d: u64, strict: bool) -> Vec<RationalVector> {
    assert!(d > 0, "refinement must be positive");
    let dq = BigRational::from_integer(BigInt::from(d));
    let (lo, hi) = q.bounding_box();
    let (lo, hi): (Vec<BigInt>, Vec<BigInt>) = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| integer_range(&(l * &dq), &(h * &dq)))
        .unzip();
    let mut out = Vec::new();
    for_each_box_point(&lo, &hi, |m| {
        let y = RationalVector::new(
            m.iter()
                .map(|c| BigRational::new(c.clone(), BigInt::from(d)))
                .collect(),
        );
        let inside = if strict {
            q.contains_strictly(&y)
        } else {
            q.contains(&y)
        };
        if inside {
            out.push(y);
        }
    });
    out
}

/// Integer points of the polytope itself (`P ∩ Z^n`), tested with integer
/// arithmetic against floored bounds. Used on dilates `jQ` as the second,
/// independent enumeration path.
pub fn integer_points(p: &Polytope, strict: bool) -> Vec<LatticeVector> {
    let (lo, hi) = p.bounding_box();
    let (lo, hi): (Vec<BigInt>, Vec<BigInt>) =
        lo.iter().zip(&hi).map(|(l, h)| integer_range(l, h)).unzip();
    // <a, m> <= b  <=>  <a, m> <= floor(b);  <a, m> < b  <=>  <a, m> <= ceil(b) - 1
    let limits: Vec<BigInt> = p
        .hrep
        .iter()
        .map(|h| {
            if strict {
                h.bound.ceil().to_integer() - 1
            } else {
                h.bound.floor().to_integer()
            }
        })
        .collect();
    let mut out = Vec::new();
    for_each_box_point(&lo, &hi, |m| {
        let ok = p.hrep.iter().zip(&limits).all(|(h, lim)| {
            let s: BigInt = h.normal.coords().iter().zip(m).map(|(a, x)| a * x).sum();
            &s <= lim
        });
        if ok {
            out.push(LatticeVector::new(m.to_vec()));
        }
    });
    out
}

/// Number of integer points of `j * Q` (dilate-and-count).
pub fn dilate_count(q: &Polytope, j: u64) -> usize {
    integer_points(&q.dilate(&BigInt::from(j)), false).len()
}

/// Number of interior integer points of `j * Q`.
pub fn dilate_interior_count(q: &Polytope, j: u64) -> usize {
    if !q.is_full_dimensional() || j == 0 {
        return 0;
    }
    integer_points(&q.dilate(&BigInt::from(j)), true).len()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HalfSpaceJson {
    normal: Vec<i64>,
    bound: String,
}

/// `{"hrep": [{"normal": [...], "bound": "p/q"}], "vertices": [[...]]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeJson {
    hrep: Vec<HalfSpaceJson>,
    vertices: Vec<Vec<String>>,
    affine_dim: usize,
}

impl Polytope {
    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            hrep: self
                .hrep
                .iter()
                .map(|h| HalfSpaceJson {
                    normal: h.normal.to_i64(),
                    bound: format_rational(&h.bound),
                })
                .collect(),
            vertices: self.vertices.iter().map(|v| v.to_strings()).collect(),
            affine_dim: self.affine_dim,
        }
    }

    /// Rebuilds from the H-representation in the JSON form; the vertex list
    /// is recomputed and compared.
    pub fn from_json(j: &PolytopeJson) -> Result<Polytope> {
        let n = j
            .hrep
            .first()
            .map(|h| h.normal.len())
            .ok_or_else(|| Error::Parse("empty hrep".into()))?;
        let hs = j
            .hrep
            .iter()
            .map(|h| {
                Ok(HalfSpace::from_lattice(
                    LatticeVector::from_i64(&h.normal),
                    parse_rational(&h.bound)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Polytope::from_hrep(n, hs)?;
        let listed = j
            .vertices
            .iter()
            .map(|v| RationalVector::parse(v))
            .collect::<Result<BTreeSet<_>>>()?;
        if listed != p.vertices.iter().cloned().collect() {
            return Err(Error::Parse("vertices disagree with hrep".into()));
        }
        Ok(p)
    }
}
