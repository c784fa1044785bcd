use std::collections::{BTreeMap, BTreeSet};

use num::{BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::height::HeightFunction;
use crate::error::{Error, Result};
use crate::lattice::linalg::{self, RatMatrix};
use crate::lattice::polytope::combinations;
use crate::lattice::{format_rational, Fan, LatticeVector, Polytope, RationalVector, SupportFunction};

/// Full-dimensional cell of the subdivision together with the affine
/// function `alpha -> <gradient, alpha> + constant` whose graph supports the
/// lifted points from below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Every support index lying on the cell's lifted face.
    pub points: Vec<usize>,
    /// The extreme points among `points`.
    pub vertices: Vec<usize>,
    pub gradient: RationalVector,
    pub constant: BigRational,
}

impl Cell {
    pub fn affine_value(&self, alpha: &LatticeVector) -> BigRational {
        alpha.dot_rational(&self.gradient) + &self.constant
    }
}

/// A cell of any dimension; `cells` lists the full cells containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionFace {
    pub dim: usize,
    pub points: Vec<usize>,
    pub vertices: Vec<usize>,
    pub cells: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CoherentSubdivision {
    dim: usize,
    cells: Vec<Cell>,
    faces: Vec<SubdivisionFace>,
    adjacency: Vec<(usize, usize)>,
    triangulation: bool,
    maximal: bool,
}

impl CoherentSubdivision {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// All faces, sorted by dimension then point set.
    pub fn faces(&self) -> &[SubdivisionFace] {
        &self.faces
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = (usize, &SubdivisionFace)> {
        self.faces.iter().enumerate().filter(move |(_, f)| f.dim == k)
    }

    /// Pairs of full cells sharing a facet.
    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    pub fn is_triangulation(&self) -> bool {
        self.triangulation
    }

    /// Every cell a unimodular simplex.
    pub fn is_maximal(&self) -> bool {
        self.maximal
    }

    /// Indices of support points that are vertices of the subdivision.
    pub fn vertex_indices(&self) -> Vec<usize> {
        self.faces_of_dim(0).map(|(_, f)| f.points[0]).collect()
    }

    /// Edges as pairs of support indices (endpoints only).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces_of_dim(1)
            .map(|(_, f)| (f.vertices[0], f.vertices[1]))
            .collect()
    }

    pub fn face_index(&self, points: &[usize]) -> Option<usize> {
        self.faces.iter().position(|f| f.points == points)
    }

    pub fn to_json(&self, h: &HeightFunction) -> SubdivisionJson {
        SubdivisionJson {
            support: h.support().iter().map(LatticeVector::to_i64).collect(),
            heights: h.heights().iter().map(format_rational).collect(),
            cells: self
                .cells
                .iter()
                .map(|c| CellJson {
                    points: c.points.clone(),
                    vertices: c.vertices.clone(),
                    gradient: c.gradient.to_strings(),
                    constant: format_rational(&c.constant),
                })
                .collect(),
            adjacency: self.adjacency.clone(),
            triangulation: self.triangulation,
            maximal: self.maximal,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellJson {
    pub points: Vec<usize>,
    pub vertices: Vec<usize>,
    pub gradient: Vec<String>,
    pub constant: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubdivisionJson {
    pub support: Vec<Vec<i64>>,
    pub heights: Vec<String>,
    pub cells: Vec<CellJson>,
    pub adjacency: Vec<(usize, usize)>,
    pub triangulation: bool,
    pub maximal: bool,
}

fn coords(h: &HeightFunction, idx: &[usize]) -> Vec<RationalVector> {
    idx.iter().map(|&i| h.support()[i].to_rational()).collect()
}

fn vertex_subset(h: &HeightFunction, idx: &[usize]) -> Result<Vec<usize>> {
    let pts = coords(h, idx);
    let hull = Polytope::hull(&pts)?;
    Ok(idx
        .iter()
        .zip(&pts)
        .filter(|(_, p)| hull.vertices().contains(p))
        .map(|(&i, _)| i)
        .collect())
}

/// Point sets of the facets of `conv(points)`.
fn facets(h: &HeightFunction, idx: &[usize]) -> Result<Vec<Vec<usize>>> {
    let pts = coords(h, idx);
    let hull = Polytope::hull(&pts)?;
    let d = hull.affine_dim();
    let mut out = BTreeSet::new();
    for hs in hull.hrep() {
        let sub: Vec<usize> = idx
            .iter()
            .zip(&pts)
            .filter(|(_, p)| hs.slack(p).is_zero())
            .map(|(&i, _)| i)
            .collect();
        if sub.is_empty() || sub.len() == idx.len() {
            continue;
        }
        if linalg::affine_dim(&coords(h, &sub)) + 1 == d {
            out.insert(sub);
        }
    }
    Ok(out.into_iter().collect())
}

/// Lower-hull subdivision of the lifted points `(alpha, nu(alpha))`.
pub fn regular_subdivision(h: &HeightFunction) -> Result<CoherentSubdivision> {
    let n = h.dim();
    let all: Vec<RationalVector> = h.support().iter().map(LatticeVector::to_rational).collect();
    if linalg::affine_dim(&all) < n {
        return Err(Error::DegenerateSupport(format!(
            "support spans an affine space of dimension {} < {n}",
            linalg::affine_dim(&all)
        )));
    }

    let mut by_points: BTreeMap<Vec<usize>, (RationalVector, BigRational)> = BTreeMap::new();
    for subset in combinations(h.len(), n + 1) {
        // g(alpha) = <w, alpha> + c through the lifted subset
        let rows: RatMatrix = subset
            .iter()
            .map(|&i| {
                let mut r = all[i].coords().to_vec();
                r.push(BigRational::one());
                r
            })
            .collect();
        let rhs: Vec<BigRational> = subset.iter().map(|&i| h.heights()[i].clone()).collect();
        let Some(sol) = linalg::solve(&rows, &rhs) else {
            continue;
        };
        let c = sol[n].clone();
        let w = RationalVector::new(sol[..n].to_vec());
        let mut points = Vec::new();
        let mut below = true;
        for (i, a) in h.support().iter().enumerate() {
            let slack = &h.heights()[i] - (a.dot_rational(&w) + &c);
            if slack.is_negative() {
                below = false;
                break;
            }
            if slack.is_zero() {
                points.push(i);
            }
        }
        if below {
            by_points.entry(points).or_insert((w, c));
        }
    }

    let mut cells = Vec::with_capacity(by_points.len());
    for (points, (gradient, constant)) in by_points {
        let vertices = vertex_subset(h, &points)?;
        cells.push(Cell {
            points,
            vertices,
            gradient,
            constant,
        });
    }

    // faces of every dimension, closed under taking facets
    let mut face_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = cells.iter().map(|c| c.points.clone()).collect();
    while let Some(f) = stack.pop() {
        if !face_sets.insert(f.clone()) {
            continue;
        }
        stack.extend(facets(h, &f)?);
    }
    let mut faces = Vec::with_capacity(face_sets.len());
    for points in face_sets {
        let dim = linalg::affine_dim(&coords(h, &points));
        let vertices = vertex_subset(h, &points)?;
        let containing = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| points.iter().all(|p| c.points.contains(p)))
            .map(|(i, _)| i)
            .collect();
        faces.push(SubdivisionFace {
            dim,
            points,
            vertices,
            cells: containing,
        });
    }
    faces.sort_by(|a, b| (a.dim, &a.points).cmp(&(b.dim, &b.points)));

    let adjacency = faces
        .iter()
        .filter(|f| f.dim + 1 == n && f.cells.len() == 2)
        .map(|f| (f.cells[0], f.cells[1]))
        .collect();

    let triangulation = cells.iter().all(|c| c.points.len() == n + 1);
    let maximal = triangulation
        && cells.iter().all(|c| {
            let base = &h.support()[c.points[0]];
            let rows: Vec<LatticeVector> = c.points[1..]
                .iter()
                .map(|&i| &h.support()[i] - base)
                .collect();
            linalg::int_det(&rows).abs().is_one()
        });

    Ok(CoherentSubdivision {
        dim: n,
        cells,
        faces,
        adjacency,
        triangulation,
        maximal,
    })
}

/// Every full cell at the origin is `conv({0} ∪ rays of a maximal cone)`.
pub fn check_bundle_subdivision(fan: &Fan, phi: &SupportFunction) -> Result<bool> {
    phi.convexity(fan)?;
    let h = HeightFunction::from_bundle(fan, phi)?;
    let sub = regular_subdivision(&h)?;
    let cone_sets: Vec<Vec<usize>> = fan
        .max_cones()
        .iter()
        .map(|c| {
            let mut s: Vec<usize> = std::iter::once(0).chain(c.iter().map(|&i| i + 1)).collect();
            s.sort_unstable();
            s
        })
        .collect();
    Ok(sub
        .cells()
        .iter()
        .filter(|c| c.points.contains(&0))
        .all(|c| cone_sets.contains(&c.points)))
}
