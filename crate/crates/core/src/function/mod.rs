//! Boolean functions, inputs, subcubes and truth tables.

mod assignment;
mod input;
mod table;

pub use assignment::{CertificateCollection, PartialAssignment};
pub use input::{binary_msb_first, Bit, InputPoint};
pub use table::{TruthTable, MAX_TABLE_ARITY};

use crate::bits;
use crate::constructions::{CodeAddress, ConstructionMeta};
use crate::error::{Error, Result};

/// Default materialization cap: 2^26 bits is an 8 MiB table.
pub const DEFAULT_MATERIALIZE_CAP: usize = 26;

/// How a function is evaluated. Children are held by value, so a function is
/// a self-contained tree that can be cloned and shared freely.
#[derive(Clone, Debug)]
pub enum Node {
    Table(TruthTable),
    Constant(bool),
    /// f(x) = target iff x satisfies some member of the collection.
    Certificates(CertificateCollection),
    /// Hamming (or conjunction-of-Hamming) address function.
    CodeAddress(CodeAddress),
    /// `address_bits` address bits select one of 2^address_bits data bits.
    Address { address_bits: usize },
    /// Monotone address function.
    MonotoneAddress { address_bits: usize },
    /// Three blocks of `block` bits each; 1 iff all three satisfy one member.
    Desensitized {
        block: usize,
        certificates: Vec<PartialAssignment>,
    },
    /// Inner function substituted into the data section of the outer one.
    DataCompose {
        outer: Box<BooleanFunction>,
        inner: Box<BooleanFunction>,
    },
    Not(Box<BooleanFunction>),
    /// Free positions of `assignment` become the variables, in order.
    Restrict {
        base: Box<BooleanFunction>,
        assignment: PartialAssignment,
    },
}

#[derive(Clone, Debug)]
pub struct BooleanFunction {
    arity: usize,
    node: Node,
    meta: Option<ConstructionMeta>,
}

impl BooleanFunction {
    pub(crate) fn from_node(arity: usize, node: Node, meta: Option<ConstructionMeta>) -> Self {
        BooleanFunction { arity, node, meta }
    }

    pub fn from_table(table: TruthTable) -> Self {
        BooleanFunction {
            arity: table.arity(),
            node: Node::Table(table),
            meta: None,
        }
    }

    /// Tabulates an arbitrary predicate over integer-encoded inputs.
    pub fn from_fn<F>(arity: usize, f: F) -> Result<Self>
    where
        F: Fn(u64) -> bool + Sync,
    {
        Ok(BooleanFunction::from_table(TruthTable::from_fn(arity, f)?))
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        BooleanFunction {
            arity,
            node: Node::Constant(value),
            meta: None,
        }
    }

    pub fn and(n: usize) -> Result<Self> {
        let all = bits::low_mask(n);
        BooleanFunction::from_fn(n, move |x| x == all)
    }

    pub fn or(n: usize) -> Result<Self> {
        BooleanFunction::from_fn(n, |x| x != 0)
    }

    pub fn parity(n: usize) -> Result<Self> {
        BooleanFunction::from_fn(n, |x| x.count_ones() % 2 == 1)
    }

    /// f(x) = x_{i+1}.
    pub fn dictator(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::InvalidParameter(format!("variable {i} out of range for arity {n}")));
        }
        BooleanFunction::from_fn(n, move |x| (x >> i) & 1 == 1)
    }

    /// f(x) = 1 iff x satisfies a member of the collection (or 0, for a
    /// collection of 0-certificates).
    pub fn from_certificates(arity: usize, collection: CertificateCollection) -> Result<Self> {
        if let Some(bad) = collection.certificates.iter().find(|p| p.arity() != arity) {
            return Err(Error::ArityMismatch {
                expected: arity,
                actual: bad.arity(),
            });
        }
        Ok(BooleanFunction {
            arity,
            node: Node::Certificates(collection),
            meta: None,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn meta(&self) -> Option<&ConstructionMeta> {
        self.meta.as_ref()
    }

    pub fn with_meta(mut self, meta: ConstructionMeta) -> Self {
        self.meta = Some(meta);
        self
    }

    pub fn eval(&self, x: &InputPoint) -> Result<bool> {
        if x.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                actual: x.arity(),
            });
        }
        Ok(self.eval_words(x.words()))
    }

    /// Evaluates on an integer-encoded input; requires arity ≤ 64.
    #[inline]
    pub fn eval_index(&self, x: u64) -> bool {
        debug_assert!(self.arity <= 64);
        self.eval_words(std::slice::from_ref(&x))
    }

    /// Evaluates on the first `arity` bits of `words`. Bits beyond the arity
    /// are ignored; `words` must hold at least `arity` bits.
    pub fn eval_words(&self, words: &[u64]) -> bool {
        match &self.node {
            Node::Table(t) => t.get(bits::extract(words, 0, self.arity)),
            Node::Constant(b) => *b,
            Node::Certificates(c) => {
                let hit = c.certificates.iter().any(|p| p.satisfied_at(words, 0));
                hit == c.target_value
            }
            Node::CodeAddress(code) => code.eval_words(words),
            Node::Address { address_bits } => {
                let a = bits::extract(words, 0, *address_bits);
                bits::get(words, address_bits + a as usize)
            }
            Node::MonotoneAddress { address_bits } => {
                crate::constructions::eval_monotone_address(*address_bits, words)
            }
            Node::Desensitized {
                block,
                certificates,
            } => certificates.iter().any(|p| {
                p.satisfied_at(words, 0)
                    && p.satisfied_at(words, *block)
                    && p.satisfied_at(words, 2 * block)
            }),
            Node::DataCompose { outer, inner } => {
                crate::constructions::eval_data_compose(outer, inner, words)
            }
            Node::Not(f) => !f.eval_words(words),
            Node::Restrict { base, assignment } => {
                let mut full = assignment.value_words().to_vec();
                for (j, pos) in assignment.free_positions().enumerate() {
                    if bits::get(words, j) {
                        bits::set(&mut full, pos, true);
                    }
                }
                base.eval_words(&full)
            }
        }
    }

    /// Tabulates the function, refusing arities above the default cap.
    pub fn materialize(&self) -> Result<TruthTable> {
        self.materialize_with_cap(DEFAULT_MATERIALIZE_CAP)
    }

    pub fn materialize_with_cap(&self, cap: usize) -> Result<TruthTable> {
        if self.arity > cap {
            return Err(Error::CapExceeded {
                what: "materialize",
                arity: self.arity,
                cap,
            });
        }
        if let Node::Table(t) = &self.node {
            return Ok(t.clone());
        }
        TruthTable::from_fn(self.arity, |x| self.eval_index(x))
    }

    /// The subfunction on the subcube `p`; its variables are p's free
    /// positions in increasing order.
    pub fn restrict(&self, p: &PartialAssignment) -> Result<BooleanFunction> {
        if p.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                actual: p.arity(),
            });
        }
        Ok(BooleanFunction {
            arity: p.dim(),
            node: Node::Restrict {
                base: Box::new(self.clone()),
                assignment: p.clone(),
            },
            meta: None,
        })
    }

    /// ¬f. Predicted 0/1-sensitivities swap and the certificate collection,
    /// if any, now certifies the value 0.
    pub fn negate(&self) -> BooleanFunction {
        let meta = self.meta.as_ref().map(ConstructionMeta::negated);
        BooleanFunction {
            arity: self.arity,
            node: Node::Not(Box::new(self.clone())),
            meta,
        }
    }

    pub fn is_nondegenerate(&self) -> Result<bool> {
        Ok(self.materialize()?.is_nondegenerate())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(b: &[u8]) -> InputPoint {
        InputPoint::from_bits(b.iter().copied())
    }

    #[test]
    fn and2_eval() {
        let and2 = BooleanFunction::and(2).unwrap();
        assert!(and2.eval(&pt(&[1, 1])).unwrap());
        assert!(!and2.eval(&pt(&[0, 1])).unwrap());
        assert!(matches!(
            and2.eval(&pt(&[1])),
            Err(Error::ArityMismatch { expected: 2, actual: 1 })
        ));
    }

    #[test]
    fn small_tables() {
        // indices 00, 10, 01, 11 written x1 first
        let or2 = BooleanFunction::or(2).unwrap().materialize().unwrap();
        let got: Vec<bool> = (0..4).map(|x| or2.get(x)).collect();
        assert_eq!(got, vec![false, true, true, true]);
        let par = BooleanFunction::parity(2).unwrap().materialize().unwrap();
        let got: Vec<bool> = (0..4).map(|x| par.get(x)).collect();
        assert_eq!(got, vec![false, true, true, false]);
    }

    #[test]
    fn restrict_and_to_identity() {
        let and2 = BooleanFunction::and(2).unwrap();
        let r = and2.restrict(&"1*".parse().unwrap()).unwrap();
        assert_eq!(r.arity(), 1);
        assert!(!r.eval(&pt(&[0])).unwrap());
        assert!(r.eval(&pt(&[1])).unwrap());
    }

    #[test]
    fn restrict_to_full_assignment_is_constant() {
        let f = BooleanFunction::parity(3).unwrap();
        let r = f.restrict(&"101".parse().unwrap()).unwrap();
        assert_eq!(r.arity(), 0);
        assert!(!r.eval(&InputPoint::zeros(0)).unwrap());
        let r = f.restrict(&"100".parse().unwrap()).unwrap();
        assert!(r.eval(&InputPoint::zeros(0)).unwrap());
        assert!(r.materialize().is_err());
    }

    #[test]
    fn restrict_arity_mismatch() {
        let f = BooleanFunction::parity(3).unwrap();
        assert!(f.restrict(&"1*".parse().unwrap()).is_err());
    }

    #[test]
    fn nondegeneracy() {
        assert!(!BooleanFunction::constant(2, false).is_nondegenerate().unwrap());
        assert!(!BooleanFunction::dictator(2, 0).unwrap().is_nondegenerate().unwrap());
        assert!(BooleanFunction::and(2).unwrap().is_nondegenerate().unwrap());
    }

    #[test]
    fn materialize_cap() {
        let f = BooleanFunction::constant(30, true);
        assert!(matches!(f.materialize(), Err(Error::CapExceeded { .. })));
        assert!(f.materialize_with_cap(4).is_err());
    }

    #[test]
    fn certificate_backed_function() {
        let coll = CertificateCollection::new(
            true,
            vec!["1*".parse().unwrap(), "01".parse().unwrap()],
            true,
        );
        let f = BooleanFunction::from_certificates(2, coll).unwrap();
        assert_eq!(f.materialize().unwrap(), BooleanFunction::or(2).unwrap().materialize().unwrap());
    }

    proptest! {
        #[test]
        fn materialize_then_wrap_is_identity(arity in 1usize..=10, seed in any::<u64>()) {
            let f = BooleanFunction::from_fn(arity, |x| (x ^ seed).wrapping_mul(0x2545_F491_4F6C_DD1D) >> 63 == 1).unwrap();
            let table = f.materialize().unwrap();
            let wrapped = BooleanFunction::from_table(table.clone());
            prop_assert_eq!(wrapped.materialize().unwrap(), table.clone());
            let neg = f.negate().materialize().unwrap();
            prop_assert_eq!(neg, table.complement());
        }

        #[test]
        fn sensitivity_edges_are_symmetric(arity in 1usize..=8, seed in any::<u64>(), x in any::<u64>(), i in 0usize..8) {
            let f = BooleanFunction::from_fn(arity, |y| (y.wrapping_add(seed)).count_ones() % 3 == 0).unwrap();
            let i = i % arity;
            let x = x & bits::low_mask(arity);
            let y = x ^ (1 << i);
            prop_assert_eq!(f.eval_index(x) != f.eval_index(y), f.eval_index(y) != f.eval_index(x));
        }
    }
}
