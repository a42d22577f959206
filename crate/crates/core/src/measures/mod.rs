//! Complexity measures: sensitivity, certificate and unambiguous certificate
//! complexity, degree, the sensitivity graph and spectral sensitivity.

pub mod certificate;
pub mod degree;
pub mod graph;
mod report;
pub mod sensitivity;
pub mod spectral;
pub mod unambiguous;

pub use certificate::{certificate_complexity_at, certificate_complexity_b};
pub use degree::{degree, from_mobius, mobius};
pub use graph::{two_layer_star_edges, ComponentShape, Components, LocalGraph, SensitivityGraph};
pub use report::{measure, Caps, Measure, MeasureEntry, MeasureReport};
pub use sensitivity::{b_sensitivity, min_b_sensitivity, s, s0, s1, sensitivity_at, Extremum};
pub use spectral::{
    spectral_sensitivity, spectral_sensitivity_of, two_layer_star_dense, two_layer_star_lambda,
    SpectralMethod, SpectralOptions, SpectralResult,
};
pub use unambiguous::{uc1, uc_b, UcOutcome};
