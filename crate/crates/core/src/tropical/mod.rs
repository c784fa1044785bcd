//! Height functions, coherent subdivisions, the tropical hypersurface and
//! its complement, and the constants used to pick a localization scale.

pub mod complex;
pub mod constants;
pub mod hausdorff;
pub mod height;
pub mod subdivision;

pub use complex::{tropical_complex, Component, ComplexJson, PiFace, TropicalComplex};
pub use constants::{choose_scale, scale_conditions, tropical_constants, Scale, TropicalConstants};
pub use hausdorff::{hausdorff_distance, hausdorff_distance_with_step, sample_pi};
pub use height::{legendre_value, legendre_value_f64, HeightFunction};
pub use subdivision::{
    check_bundle_subdivision, regular_subdivision, Cell, CoherentSubdivision, SubdivisionFace,
};
