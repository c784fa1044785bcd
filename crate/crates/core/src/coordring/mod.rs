//! Homogeneous coordinate ring of the toric variety and the comparison
//! with the Floer algebra.

pub mod ring;
pub mod verify;

pub use ring::{
    hilbert_function, hilbert_table, interior_counts, section_ring, EhrhartPolynomial, HilbertRow, SectionRing,
};
pub use verify::{
    generator_map, serre_check, verify_isomorphism, IsomorphismReport, Mismatch, SerreReport, SerreRow,
};
