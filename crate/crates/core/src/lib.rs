//! Tropical and toric data of twisted Lagrangian sections.
//!
//! The exact side (`lattice`, `tropical`, `floer`, `coordring`) works in
//! arbitrary-precision rationals and checks that the Floer cohomology algebra
//! of the twisted sections `L(j)` matches the homogeneous coordinate ring of
//! the toric variety. The floating-point side (`amoeba`) samples amoebas of
//! the patchworking family and checks the localization inequalities.

pub mod amoeba;
pub mod coordring;
pub mod error;
pub mod floer;
pub mod geom;
pub mod lattice;
pub mod tropical;

pub use error::{Error, Result};
pub use lattice::{Fan, FanSpec, LatticeVector, Polytope, RationalVector, SupportFunction};
pub use tropical::{CoherentSubdivision, HeightFunction, TropicalComplex, TropicalConstants};

pub use amoeba::{LaurentPolynomial, LogPoint, PatchworkFamily};
pub use coordring::{IsomorphismReport, SectionRing};
pub use floer::{FloerGenerator, FloerGroup, GradedAlgebra};
pub use geom::Window;
