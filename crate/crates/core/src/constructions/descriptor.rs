use serde::{Deserialize, Serialize};

use crate::constructions::{address_fn, chaf, desensitize, haf, maf, tradeoff};
use crate::error::{Error, Result};
use crate::function::{BooleanFunction, CertificateCollection, PartialAssignment, TruthTable};

/// JSON description of a construction:
/// `{"family": "...", "params": {...}}`.
///
/// `table` is an extra family so that arbitrary small functions (e.g. the
/// base of a desensitization) can be described inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "lowercase")]
pub enum Descriptor {
    Haf {
        r: u32,
    },
    Chaf {
        rs: Vec<u32>,
    },
    Maf {
        k: usize,
    },
    Address {
        k: usize,
    },
    Tradeoff {
        #[serde(rename = "as")]
        outer: Vec<u32>,
        #[serde(rename = "bs", default)]
        inner: Vec<u32>,
    },
    Desensitized {
        base: Box<Descriptor>,
        /// 1-certificates in variable order, e.g. `"1*"`.
        certificates: Vec<String>,
    },
    Table {
        n: usize,
        hex: String,
    },
}

impl Descriptor {
    pub fn build(&self) -> Result<BooleanFunction> {
        match self {
            Descriptor::Haf { r } => haf(*r),
            Descriptor::Chaf { rs } => chaf(rs),
            Descriptor::Maf { k } => maf(*k),
            Descriptor::Address { k } => address_fn(*k),
            Descriptor::Tradeoff { outer, inner } => tradeoff(outer, inner),
            Descriptor::Desensitized { base, certificates } => {
                let f = base.build()?;
                let certs = certificates
                    .iter()
                    .map(|s| s.parse::<PartialAssignment>())
                    .collect::<Result<Vec<_>>>()?;
                desensitize(&f, &CertificateCollection::new(true, certs, true))
            }
            Descriptor::Table { n, hex } => {
                Ok(BooleanFunction::from_table(TruthTable::from_hex(*n, hex)?))
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("descriptor: {e}")))
    }
}

/// Reads either a truth-table file or a JSON construction descriptor.
pub fn parse_function_file(text: &str) -> Result<BooleanFunction> {
    if text.trim_start().starts_with('{') {
        Descriptor::from_json(text)?.build()
    } else {
        Ok(BooleanFunction::from_table(TruthTable::parse_file(text)?))
    }
}
