//! Patchworking family, amoeba sampling and the localization checks.
//!
//! Everything here is floating point and runs in log coordinates.

pub mod cutoff;
pub mod family;
pub mod laurent;
pub mod roots;
pub mod sample;

pub use cutoff::{cutoff, CutoffProfile};
pub use family::{
    eval_family, exponential_decay_check, lopsided_certificate, CERTIFICATE_SLACK, symplectic_margin, DecayReport, FamilyEval,
    LogPoint, Margin, PatchworkFamily,
};
pub use laurent::{horizontal_lift, mirror_potential, pushforward, LaurentPolynomial, TangentVectorC};
pub use sample::{
    amoeba_sample_curve, boundary_sphere_sample, winding_number, AmoebaPoint, AmoebaSample, BoundarySample,
    SampleGrid,
};
