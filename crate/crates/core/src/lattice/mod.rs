//! Exact rational linear algebra, polytopes, fans and lattice-point
//! enumeration. No floating point is used for any decision in this module.

pub mod fan;
pub mod linalg;
pub mod polytope;
pub mod vector;

pub use fan::{polytope_from_bundle, standard, Convexity, Fan, FanSpec, SupportFunction};
pub use polytope::{
    dilate_count, dilate_interior_count, integer_points, interior_lattice_points, lattice_points,
    HalfSpace, OriginPosition, Polytope, PolytopeJson,
};
pub use vector::{format_rational, int_rat, parse_rational, rat, LatticeVector, RationalVector};

/// `true` iff every maximal cone's generators form a basis of Z^n.
pub fn is_smooth(fan: &Fan) -> crate::Result<bool> {
    fan.is_smooth()
}

/// Convex hull; lower-dimensional input yields a flagged polytope.
pub fn hull(points: &[RationalVector]) -> crate::Result<Polytope> {
    Polytope::hull(points)
}
