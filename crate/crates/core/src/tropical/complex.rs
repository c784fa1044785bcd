use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};

use super::height::{legendre_value, HeightFunction};
use super::subdivision::{regular_subdivision, CoherentSubdivision};
use crate::error::Result;
use crate::geom::Polyhedron;
use crate::lattice::linalg::{self, RatMatrix};
use crate::lattice::vector::rat_to_f64;
use crate::lattice::{format_rational, HalfSpace, Polytope, RationalVector};

/// Linear constraint `<normal, u> (= or <=) bound`.
pub type Constraint = (RationalVector, BigRational);

/// Face of the tropical hypersurface, dual to a face of the subdivision.
#[derive(Clone, Debug)]
pub struct PiFace {
    pub dim: usize,
    /// Index into `CoherentSubdivision::faces`.
    pub dual: usize,
    /// Support indices of the dual cell; the maximizers on the face.
    pub points: Vec<usize>,
    /// Independent equations of the affine span.
    pub equalities: Vec<Constraint>,
    pub inequalities: Vec<Constraint>,
    /// Indices into `TropicalComplex::vertices`.
    pub vertices: Vec<usize>,
    /// Generators of the recession cone (outer facet normals of P).
    pub rays: Vec<RationalVector>,
}

impl PiFace {
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, u: &RationalVector) -> bool {
        self.equalities.iter().all(|(a, b)| &a.dot(u) == b)
            && self.inequalities.iter().all(|(a, b)| &a.dot(u) <= b)
    }
}

/// Closure of the region where `alpha` is the unique maximizer.
#[derive(Clone, Debug)]
pub struct Component {
    pub alpha: usize,
    pub inequalities: Vec<Constraint>,
    /// Full-dimensional exactly when `alpha` is a vertex of the subdivision.
    pub full: bool,
}

impl Component {
    pub fn contains(&self, u: &RationalVector) -> bool {
        self.inequalities.iter().all(|(a, b)| &a.dot(u) <= b)
    }

    pub fn contains_strictly(&self, u: &RationalVector) -> bool {
        self.inequalities.iter().all(|(a, b)| &a.dot(u) < b)
    }
}

#[derive(Clone, Debug)]
pub struct TropicalComplex {
    height: HeightFunction,
    subdivision: CoherentSubdivision,
    /// Vertex `i` is dual to full cell `i`.
    vertices: Vec<RationalVector>,
    faces: Vec<PiFace>,
    components: Vec<Component>,
    q: Option<Polytope>,
}

fn to_f64_constraints(c: &[Constraint]) -> Vec<(Vec<f64>, f64)> {
    c.iter().map(|(a, b)| (a.to_f64(), rat_to_f64(b))).collect()
}

/// Independent rows of `[a | b]` after elimination.
fn independent_equalities(rows: Vec<Constraint>, n: usize) -> Vec<Constraint> {
    let mut m: RatMatrix = rows
        .into_iter()
        .map(|(a, b)| {
            let mut r = a.into_coords();
            r.push(b);
            r
        })
        .collect();
    let pivots = linalg::rref(&mut m);
    m.truncate(pivots.len());
    m.into_iter()
        .map(|mut r| {
            let b = r.pop().unwrap();
            debug_assert_eq!(r.len(), n);
            (RationalVector::new(r), b)
        })
        .collect()
}

impl TropicalComplex {
    pub fn height(&self) -> &HeightFunction {
        &self.height
    }

    pub fn subdivision(&self) -> &CoherentSubdivision {
        &self.subdivision
    }

    pub fn dim(&self) -> usize {
        self.height.dim()
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn faces(&self) -> &[PiFace] {
        &self.faces
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &PiFace> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, alpha: usize) -> &Component {
        &self.components[alpha]
    }

    /// Full components only.
    pub fn full_components(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.full)
    }

    /// `C_0` when the origin is in the support and the component is bounded.
    pub fn q(&self) -> Option<&Polytope> {
        self.q.as_ref()
    }

    /// `u` lies on the hypersurface: the maximum is attained at least twice.
    pub fn contains(&self, u: &RationalVector) -> bool {
        legendre_value(&self.height, u).1.len() >= 2
    }

    /// Relative-interior point of a face: barycenter of its vertices plus
    /// the sum of its recession generators.
    pub fn sample(&self, face: &PiFace) -> RationalVector {
        let n = self.dim();
        let k = BigRational::from_integer(face.vertices.len().into());
        let mut acc = vec![BigRational::zero(); n];
        for &v in &face.vertices {
            for (a, x) in acc.iter_mut().zip(self.vertices[v].coords()) {
                *a += x;
            }
        }
        let mut acc: Vec<BigRational> = acc.into_iter().map(|a| a / &k).collect();
        for r in &face.rays {
            for (a, x) in acc.iter_mut().zip(r.coords()) {
                *a += x;
            }
        }
        RationalVector::new(acc)
    }

    pub fn face_polyhedron(&self, face: &PiFace) -> Polyhedron {
        Polyhedron::new(
            self.dim(),
            to_f64_constraints(&face.equalities),
            to_f64_constraints(&face.inequalities),
        )
    }

    pub fn component_polyhedron(&self, alpha: usize) -> Polyhedron {
        Polyhedron::new(
            self.dim(),
            Vec::new(),
            to_f64_constraints(&self.components[alpha].inequalities),
        )
    }

    /// Polyhedra of the top-dimensional faces, whose union is the whole
    /// hypersurface.
    pub fn facet_polyhedra(&self) -> Vec<Polyhedron> {
        let n = self.dim();
        self.faces_of_dim(n - 1)
            .map(|f| self.face_polyhedron(f))
            .collect()
    }

    /// Euclidean distance to the hypersurface.
    pub fn distance(&self, facets: &[Polyhedron], x: &[f64]) -> f64 {
        facets
            .iter()
            .map(|p| p.distance(x))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn to_json(&self) -> ComplexJson {
        let cons = |c: &[Constraint]| {
            c.iter()
                .map(|(a, b)| ConstraintJson {
                    normal: a.to_strings(),
                    bound: format_rational(b),
                })
                .collect()
        };
        ComplexJson {
            height: self.height.to_json(),
            vertices: self.vertices.iter().map(RationalVector::to_strings).collect(),
            faces: self
                .faces
                .iter()
                .map(|f| FaceJson {
                    dim: f.dim,
                    dual_cell: f.points.clone(),
                    vertices: f.vertices.clone(),
                    rays: f.rays.iter().map(RationalVector::to_strings).collect(),
                    equalities: cons(&f.equalities),
                    inequalities: cons(&f.inequalities),
                })
                .collect(),
            components: self
                .components
                .iter()
                .map(|c| ComponentJson {
                    alpha: self.height.support()[c.alpha].to_i64(),
                    full: c.full,
                    inequalities: cons(&c.inequalities),
                })
                .collect(),
            q: self.q.as_ref().map(Polytope::to_json),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub normal: Vec<String>,
    pub bound: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceJson {
    pub dim: usize,
    pub dual_cell: Vec<usize>,
    pub vertices: Vec<usize>,
    pub rays: Vec<Vec<String>>,
    pub equalities: Vec<ConstraintJson>,
    pub inequalities: Vec<ConstraintJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentJson {
    pub alpha: Vec<i64>,
    pub full: bool,
    pub inequalities: Vec<ConstraintJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub height: super::height::HeightJson,
    pub vertices: Vec<Vec<String>>,
    pub faces: Vec<FaceJson>,
    pub components: Vec<ComponentJson>,
    pub q: Option<crate::lattice::PolytopeJson>,
}

/// The non-smooth locus of the Legendre transform, its faces by duality with
/// the subdivision, and the complement components.
pub fn tropical_complex(h: &HeightFunction) -> Result<TropicalComplex> {
    let n = h.dim();
    let sub = regular_subdivision(h)?;
    let support: Vec<RationalVector> = h.support().iter().map(|a| a.to_rational()).collect();
    let newton = Polytope::hull(&support)?;

    let vertices: Vec<RationalVector> = sub.cells().iter().map(|c| c.gradient.clone()).collect();

    let mut faces = Vec::new();
    for (fi, f) in sub.faces().iter().enumerate() {
        if f.dim == 0 {
            continue;
        }
        let a0 = f.points[0];
        let base = &support[a0];
        let nu0 = &h.heights()[a0];
        let eqs = f.points[1..]
            .iter()
            .map(|&i| (&support[i] - base, &h.heights()[i] - nu0))
            .collect();
        let equalities = independent_equalities(eqs, n);
        let inequalities = (0..h.len())
            .filter(|i| !f.points.contains(i))
            .map(|i| (&support[i] - base, &h.heights()[i] - nu0))
            .collect();
        let rays = newton
            .hrep()
            .iter()
            .filter(|hs| f.points.iter().all(|&i| hs.slack(&support[i]).is_zero()))
            .map(|hs| hs.normal.to_rational())
            .collect();
        faces.push(PiFace {
            dim: n - f.dim,
            dual: fi,
            points: f.points.clone(),
            equalities,
            inequalities,
            vertices: f.cells.clone(),
            rays,
        });
    }
    faces.sort_by(|a, b| (a.dim, &a.points).cmp(&(b.dim, &b.points)));

    let sub_vertices = sub.vertex_indices();
    let components: Vec<Component> = (0..h.len())
        .map(|alpha| Component {
            alpha,
            inequalities: (0..h.len())
                .filter(|&b| b != alpha)
                .map(|b| (&support[b] - &support[alpha], &h.heights()[b] - &h.heights()[alpha]))
                .collect(),
            full: sub_vertices.contains(&alpha),
        })
        .collect();

    let q = h
        .support()
        .iter()
        .position(|a| a.is_zero())
        .filter(|i| components[*i].full)
        .and_then(|i| {
            let hs = components[i]
                .inequalities
                .iter()
                .map(|(a, b)| HalfSpace::normalized(a.coords(), b))
                .collect();
            Polytope::from_hrep(n, hs).ok()
        });

    Ok(TropicalComplex {
        height: h.clone(),
        subdivision: sub,
        vertices,
        faces,
        components,
        q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{polytope_from_bundle, standard, SupportFunction};

    fn p2() -> TropicalComplex {
        let fan = standard::projective_plane();
        let phi = SupportFunction::constant(&fan, 1);
        tropical_complex(&HeightFunction::from_bundle(&fan, &phi).unwrap()).unwrap()
    }

    #[test]
    fn p2_faces() {
        let t = p2();
        let mut v = t.vertices().to_vec();
        v.sort();
        assert_eq!(
            v,
            vec![
                RationalVector::from_ints(&[-2, 1]),
                RationalVector::from_ints(&[1, -2]),
                RationalVector::from_ints(&[1, 1]),
            ]
        );
        let edges: Vec<&PiFace> = t.faces_of_dim(1).collect();
        assert_eq!(edges.len(), 6);
        assert_eq!(edges.iter().filter(|e| e.is_bounded()).count(), 3);
        assert_eq!(t.faces_of_dim(0).count(), 3);
    }

    #[test]
    fn q_matches_bundle_polytope() {
        let fan = standard::projective_plane();
        let phi = SupportFunction::constant(&fan, 1);
        assert_eq!(t_q(&p2()), polytope_from_bundle(&fan, &phi).unwrap());
    }

    fn t_q(t: &TropicalComplex) -> Polytope {
        t.q().cloned().unwrap()
    }

    #[test]
    fn vertex_dual_cell() {
        let t = p2();
        let v = t
            .faces_of_dim(0)
            .find(|f| t.sample(f) == RationalVector::from_ints(&[1, 1]))
            .unwrap();
        assert_eq!(v.points, vec![0, 1, 2]);
    }

    #[test]
    fn samples_have_dual_argmax() {
        let t = p2();
        for f in t.faces() {
            let (_, arg) = legendre_value(t.height(), &t.sample(f));
            assert_eq!(arg, f.points);
            assert!(f.contains(&t.sample(f)));
        }
    }

    #[test]
    fn one_dimensional() {
        let h = HeightFunction::from_i64(&[&[0], &[1]], &[0, 0]).unwrap();
        let t = tropical_complex(&h).unwrap();
        assert_eq!(t.faces().len(), 1);
        assert_eq!(t.vertices(), &[RationalVector::from_ints(&[0])]);
        assert_eq!(t.full_components().count(), 2);
    }
}
