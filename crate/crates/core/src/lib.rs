//! Boolean functions with minimal spectral sensitivity: the Hamming address
//! function and its relatives, together with exact and numerical engines for
//! sensitivity, certificate complexity, degree and spectral sensitivity, and
//! a harness that checks the constructions' claimed values at small sizes.

mod bits;
pub mod codes;
pub mod constructions;
mod error;
pub mod function;
pub mod measures;
pub mod verify;

pub use codes::HammingCode;
pub use constructions::{ConstructionMeta, Descriptor, Sections};
pub use error::{Error, Result};
pub use function::{
    BooleanFunction, CertificateCollection, InputPoint, PartialAssignment, TruthTable,
    DEFAULT_MATERIALIZE_CAP,
};
pub use measures::{MeasureReport, SpectralMethod, SpectralResult};
pub use verify::{ClaimResult, Comparison};

