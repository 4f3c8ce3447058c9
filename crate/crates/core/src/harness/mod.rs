//! The falsification harness: numerical probes of the covering geometry,
//! the weighted FL^1 criterion, operator norm bounds, the convolution and
//! Bernstein inequalities, and the class-separation example.

pub mod counterexample;
pub mod ek;
pub mod families;
pub mod probes;

pub use counterexample::{class_separation_report, BumpTrain, BumpTrainSpec, ClassSeparationReport};
pub use ek::{
    brute_force_overlap_set, dilation_factor, dilation_overlap_set, overlap_count_slope,
    overlap_neighbors, DilationOverlap,
};
pub use families::{build_family, FamilyKind, FamilyMember, FamilySpec};
pub use probes::{
    bernstein_probe, convolution_probe, criterion_doubling, family_for, operator_norm_probe,
    plancherel_probe, spectral_convolution, unimodular_fl1_profile, BernsteinReport,
    ConvolutionReport, DoublingCheck, OperatorProbeReport, PlancherelReport, RatioEntry,
    GROWTH_TOL,
};
