use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::{self, RatMatrix};
use super::polytope::{combinations, HalfSpace, Polytope};
use super::vector::{format_rational, parse_rational, LatticeVector, RationalVector};
use crate::error::{Error, Result};

/// Simplicial fan given by primitive ray generators and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        let dim = rays
            .first()
            .map(LatticeVector::dim)
            .ok_or_else(|| Error::MalformedFan("no rays".into()))?;
        if dim == 0 {
            return Err(Error::MalformedFan("zero-dimensional rays".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.dim() != dim {
                return Err(Error::MalformedFan(format!("ray {i} has dimension {}", r.dim())));
            }
            if !r.is_primitive() {
                return Err(Error::MalformedFan(format!("ray {i} = {r} is not primitive")));
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for (c, cone) in max_cones.into_iter().enumerate() {
            if let Some(&bad) = cone.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::MalformedFan(format!("cone {c} references missing ray {bad}")));
            }
            let mut sorted = cone.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cone.len() {
                return Err(Error::MalformedFan(format!("cone {c} repeats a ray")));
            }
            cones.push(sorted);
        }
        if cones.is_empty() {
            return Err(Error::MalformedFan("no maximal cones".into()));
        }
        Ok(Self {
            dim,
            rays,
            max_cones: cones,
        })
    }

    pub fn from_i64(rays: &[&[i64]], max_cones: &[&[usize]]) -> Result<Self> {
        Self::new(
            rays.iter().map(|r| LatticeVector::from_i64(r)).collect(),
            max_cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    fn cone_rows(&self, cone: &[usize]) -> Vec<LatticeVector> {
        cone.iter().map(|&i| self.rays[i].clone()).collect()
    }

    fn require_simplicial(&self) -> Result<()> {
        for (c, cone) in self.max_cones.iter().enumerate() {
            if cone.len() != self.dim {
                return Err(Error::MalformedFan(format!(
                    "maximal cone {c} has {} rays in dimension {}",
                    cone.len(),
                    self.dim
                )));
            }
        }
        Ok(())
    }

    /// Pairs of maximal cones sharing `n - 1` rays, with the two rays not shared.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.max_cones.len() {
            for b in (a + 1)..self.max_cones.len() {
                let (ca, cb) = (&self.max_cones[a], &self.max_cones[b]);
                let shared = ca.iter().filter(|i| cb.contains(i)).count();
                if shared + 1 == self.dim && ca.len() == self.dim && cb.len() == self.dim {
                    let ra = *ca.iter().find(|i| !cb.contains(i)).unwrap();
                    let rb = *cb.iter().find(|i| !ca.contains(i)).unwrap();
                    out.push((a, b, ra, rb));
                }
            }
        }
        out
    }

    /// Every maximal cone is generated by a basis of Z^n.
    pub fn is_smooth(&self) -> Result<bool> {
        self.require_simplicial()?;
        Ok(self
            .max_cones
            .iter()
            .all(|c| linalg::int_det(&self.cone_rows(c)).abs().is_one()))
    }

    /// Completeness of a simplicial fan: every wall lies in exactly two
    /// maximal cones on opposite sides of it, and generic probe vectors lie in
    /// the interior of exactly one maximal cone.
    pub fn is_complete(&self) -> Result<bool> {
        self.require_simplicial()?;
        let n = self.dim;
        for c in &self.max_cones {
            if linalg::int_det(&self.cone_rows(c)).is_zero() {
                return Err(Error::MalformedFan(format!("cone {c:?} is not full-dimensional")));
            }
        }
        let mut walls: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, cone) in self.max_cones.iter().enumerate() {
            for sub in combinations(n, n - 1) {
                let wall: Vec<usize> = sub.iter().map(|&k| cone[k]).collect();
                walls.entry(wall).or_default().push(ci);
            }
        }
        for (wall, cones) in &walls {
            if cones.len() != 2 {
                return Ok(false);
            }
            let rows = linalg::to_rat_rows(&self.cone_rows(wall));
            let normal = RationalVector::new(linalg::null_space(&rows, n).remove(0));
            let side = |ci: usize| {
                let r = self.max_cones[ci].iter().find(|i| !wall.contains(i)).unwrap();
                self.rays[*r].dot_rational(&normal)
            };
            let (sa, sb) = (side(cones[0]), side(cones[1]));
            if (&sa * &sb).is_positive() || sa.is_zero() || sb.is_zero() {
                return Ok(false);
            }
        }
        let probes = self.generic_probes(3);
        for p in &probes {
            let mut covering = 0;
            for c in &self.max_cones {
                let coeffs = self.cone_coordinates(c, p).expect("full rank cone");
                if coeffs.iter().all(|x| x.is_positive()) {
                    covering += 1;
                }
            }
            if covering != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates of `p` in the basis of the cone's generators.
    fn cone_coordinates(&self, cone: &[usize], p: &RationalVector) -> Option<Vec<BigRational>> {
        // Solve M^T lambda = p where rows of M are the generators.
        let n = self.dim;
        let rows = self.cone_rows(cone);
        let mt: RatMatrix = (0..n)
            .map(|i| {
                rows.iter()
                    .map(|r| BigRational::from_integer(r[i].clone()))
                    .collect()
            })
            .collect();
        linalg::solve(&mt, p.coords())
    }

    /// Probe vectors avoiding every cone boundary.
    fn generic_probes(&self, count: usize) -> Vec<RationalVector> {
        let n = self.dim;
        let mut out = Vec::new();
        let mut seed: i64 = 1;
        while out.len() < count {
            // Moment-curve points (s, s^2 + 1, s^3 - 2, ...) with alternating signs.
            let coords: Vec<BigRational> = (0..n)
                .map(|i| {
                    let sign = if (seed as usize + i) % 2 == 0 { 1 } else { -1 };
                    BigRational::new(
                        BigInt::from(sign * (seed.pow(i as u32 + 1) + 7 * i as i64 + 3)),
                        BigInt::from(seed + 2 * i as i64 + 1),
                    )
                })
                .collect();
            let p = RationalVector::new(coords);
            let generic = self.max_cones.iter().all(|c| {
                self.cone_coordinates(c, &p)
                    .map(|l| l.iter().all(|x| !x.is_zero()))
                    .unwrap_or(true)
            });
            if generic {
                out.push(p);
            }
            seed += 1;
        }
        out
    }

    /// Applies the integer matrix `g` (rows) to every ray.
    pub fn transform(&self, g: &[Vec<i64>]) -> Result<Fan> {
        let rays = self
            .rays
            .iter()
            .map(|r| {
                LatticeVector::new(
                    g.iter()
                        .map(|row| {
                            row.iter()
                                .zip(r.coords())
                                .map(|(a, b)| BigInt::from(*a) * b)
                                .sum()
                        })
                        .collect(),
                )
            })
            .collect();
        Fan::new(rays, self.max_cones.clone())
    }
}

/// Values of a piecewise-linear function on the rays of a fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFunction {
    values: Vec<BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convexity {
    Strict,
    /// Convex but affine across at least one wall; the polytope degenerates.
    Weak,
}

impl SupportFunction {
    pub fn new(values: Vec<BigRational>) -> Self {
        Self { values }
    }

    pub fn constant(fan: &Fan, c: i64) -> Self {
        Self::new(vec![BigRational::from_integer(BigInt::from(c)); fan.rays().len()])
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    fn check_len(&self, fan: &Fan) -> Result<()> {
        if self.values.len() != fan.rays().len() {
            return Err(Error::MalformedFan(format!(
                "{} support values for {} rays",
                self.values.len(),
                fan.rays().len()
            )));
        }
        Ok(())
    }

    /// The linear function agreeing with the support values on a cone.
    pub fn cone_vertex(&self, fan: &Fan, cone: usize) -> Result<RationalVector> {
        let c = &fan.max_cones()[cone];
        let rows = linalg::to_rat_rows(&fan.cone_rows(c));
        let rhs: Vec<BigRational> = c.iter().map(|&i| self.values[i].clone()).collect();
        linalg::solve(&rows, &rhs)
            .map(RationalVector::new)
            .ok_or_else(|| Error::MalformedFan(format!("cone {cone} is not full-dimensional")))
    }

    /// Convexity in the sign convention `Q = {y : <v_i, y> <= phi(v_i)}`:
    /// each cone's vertex `m` must satisfy `<m, v_j> <= phi(v_j)` off the cone.
    pub fn convexity(&self, fan: &Fan) -> Result<Convexity> {
        self.check_len(fan)?;
        fan.require_simplicial()?;
        let vertices = (0..fan.max_cones().len())
            .map(|c| self.cone_vertex(fan, c))
            .collect::<Result<Vec<_>>>()?;
        let mut strict = true;
        // Adjacent pairs first so that a failure names the offending wall.
        for (a, b, ra, rb) in fan.adjacent_pairs() {
            for (x, y, r) in [(a, b, rb), (b, a, ra)] {
                let s = &self.values[r] - fan.rays()[r].dot_rational(&vertices[x]);
                if s.is_negative() {
                    return Err(Error::NotConvex { cone_a: x, cone_b: y, ray: r });
                }
                if s.is_zero() {
                    strict = false;
                }
            }
        }
        for (c, cone) in fan.max_cones().iter().enumerate() {
            for r in 0..fan.rays().len() {
                if cone.contains(&r) {
                    continue;
                }
                let s = &self.values[r] - fan.rays()[r].dot_rational(&vertices[c]);
                if s.is_negative() {
                    let other = fan
                        .max_cones()
                        .iter()
                        .position(|k| k.contains(&r))
                        .unwrap_or(c);
                    return Err(Error::NotConvex { cone_a: c, cone_b: other, ray: r });
                }
                if s.is_zero() {
                    strict = false;
                }
            }
        }
        Ok(if strict { Convexity::Strict } else { Convexity::Weak })
    }

    /// Smallest-norm integer values in `[-max_abs, max_abs]` (scanned in
    /// lexicographic order) giving a strictly convex function whose polytope
    /// has the origin in its interior.
    pub fn search_strictly_convex(fan: &Fan, max_abs: i64) -> Option<Self> {
        let m = fan.rays().len();
        let mut candidates: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..m {
            candidates = candidates
                .into_iter()
                .flat_map(|c| {
                    (-max_abs..=max_abs).map(move |v| {
                        let mut c = c.clone();
                        c.push(v);
                        c
                    })
                })
                .collect();
        }
        candidates.sort_by_key(|c| (c.iter().map(|v| v.abs()).sum::<i64>(), c.clone()));
        candidates.into_iter().find_map(|c| {
            if c.iter().any(|&v| v <= 0) {
                return None;
            }
            let phi = SupportFunction::new(
                c.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect(),
            );
            matches!(phi.convexity(fan), Ok(Convexity::Strict)).then_some(phi)
        })
    }
}

/// `Q = {y : <v_i, y> <= phi(v_i) for every ray}`.
pub fn polytope_from_bundle(fan: &Fan, phi: &SupportFunction) -> Result<Polytope> {
    phi.check_len(fan)?;
    if !fan.is_complete()? {
        return Err(Error::Unbounded("fan is not complete".into()));
    }
    phi.convexity(fan)?;
    let hs = fan
        .rays()
        .iter()
        .zip(phi.values())
        .map(|(v, b)| HalfSpace::from_lattice(v.clone(), b.clone()))
        .collect();
    Polytope::from_hrep(fan.dim(), hs)
}

/// Fan and support function input:
/// `{"rays": [[int,...],...], "max_cones": [[int,...],...], "phi": ["p/q",...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanSpec {
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    pub phi: Vec<String>,
}

impl FanSpec {
    pub fn parse(self) -> Result<(Fan, SupportFunction)> {
        let fan = Fan::new(
            self.rays.iter().map(|r| LatticeVector::from_i64(r)).collect(),
            self.max_cones,
        )?;
        let phi = SupportFunction::new(
            self.phi
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()?,
        );
        phi.check_len(&fan)?;
        Ok((fan, phi))
    }

    pub fn from_parts(fan: &Fan, phi: &SupportFunction) -> Self {
        Self {
            rays: fan.rays().iter().map(LatticeVector::to_i64).collect(),
            max_cones: fan.max_cones().to_vec(),
            phi: phi.values().iter().map(format_rational).collect(),
        }
    }
}

/// Standard test fans.
pub mod standard {
    use super::*;

    pub fn projective_line() -> Fan {
        Fan::from_i64(&[&[1], &[-1]], &[&[0], &[1]]).unwrap()
    }

    pub fn projective_plane() -> Fan {
        Fan::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]).unwrap()
    }

    pub fn p1_times_p1() -> Fan {
        Fan::from_i64(
            &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
        )
        .unwrap()
    }

    pub fn hirzebruch_f1() -> Fan {
        Fan::from_i64(
            &[&[1, 0], &[0, 1], &[-1, 1], &[0, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
        )
        .unwrap()
    }

    pub fn weighted_112() -> Fan {
        Fan::from_i64(&[&[1, 0], &[0, 1], &[-1, -2]], &[&[0, 1], &[1, 2], &[0, 2]]).unwrap()
    }

    pub fn projective_space3() -> Fan {
        Fan::from_i64(
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
        )
        .unwrap()
    }
}
