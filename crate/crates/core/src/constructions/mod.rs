//! The function families: Hamming address functions and their conjunction
//! variant, the plain and monotone address functions, desensitization, the
//! data-section composition and the sensitivity tradeoff family.
//!
//! Every constructor returns a [`crate::BooleanFunction`] that evaluates pointwise
//! (no materialization) and carries a [`ConstructionMeta`] with the values
//! the construction is designed to attain.

mod address;
mod compose;
mod descriptor;
mod desensitize;

pub use address::{address_fn, chaf, colex_rank, haf, maf, CodeAddress};
pub(crate) use address::eval_monotone_address;
pub use compose::{
    data_compose, tradeoff, tradeoff_predictions, tradeoff_sweep, SweepRow, TradeoffPrediction,
};
pub(crate) use compose::eval_data_compose;
pub use descriptor::{parse_function_file, Descriptor};
pub use desensitize::desensitize;

use crate::function::CertificateCollection;

/// Split of an address-style function into its codeword (address) section
/// followed by its data section.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sections {
    pub codeword_len: usize,
    pub data_len: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConstructionMeta {
    pub family: String,
    pub predicted_s0: Option<u64>,
    pub predicted_s1: Option<u64>,
    pub predicted_s: Option<u64>,
    pub predicted_lambda_sq: Option<u64>,
    pub sections: Option<Sections>,
    /// Certificate collection for the function's 1-inputs (0-inputs after
    /// negation), when small enough to list.
    pub certificates: Option<CertificateCollection>,
    /// `Some(false)` when a caller-supplied collection was trusted without
    /// an exhaustive check.
    pub certificates_validated: Option<bool>,
}

impl ConstructionMeta {
    pub(crate) fn new(family: &str) -> Self {
        ConstructionMeta {
            family: family.to_string(),
            ..Default::default()
        }
    }

    pub(crate) fn negated(&self) -> Self {
        ConstructionMeta {
            family: format!("not({})", self.family),
            predicted_s0: self.predicted_s1,
            predicted_s1: self.predicted_s0,
            predicted_s: self.predicted_s,
            predicted_lambda_sq: self.predicted_lambda_sq,
            sections: None,
            certificates: self.certificates.as_ref().map(|c| CertificateCollection {
                target_value: !c.target_value,
                ..c.clone()
            }),
            certificates_validated: self.certificates_validated,
        }
    }
}
