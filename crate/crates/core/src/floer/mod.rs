//! Combinatorial Floer cohomology of the twisted sections `L(j)`:
//! generators are lattice points, products are barycentric.

pub mod algebra;
pub mod duality;
pub mod group;

pub use algebra::{assemble_algebra, check_axioms, AxiomReport, BasisManifest, GradedAlgebra};
pub use duality::{dual_product_table, serre_dual_dimension, verify_dual_products, DualReport};
pub use group::{
    admissible, cup_product, floer_group, ordering_condition, triangle_exists, triangle_target, FloerGenerator,
    FloerGroup, TwistedSection,
};
