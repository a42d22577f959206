use crate::constructions::ConstructionMeta;
use crate::error::{Error, Result};
use crate::function::{
    BooleanFunction, CertificateCollection, Node, PartialAssignment, DEFAULT_MATERIALIZE_CAP,
};

/// Desensitization: on x′ = x₁x₂x₃ (three copies of the input), f′(x′) = 1
/// iff one member p of the unambiguous 1-certificate collection S has
/// x₁, x₂, x₃ ∈ p.
///
/// S is checked exhaustively when f can be materialized; otherwise it is
/// trusted and the metadata records `certificates_validated = Some(false)`.
pub fn desensitize(f: &BooleanFunction, s: &CertificateCollection) -> Result<BooleanFunction> {
    if !s.unambiguous {
        return Err(Error::InvalidCertificates(
            "collection is not flagged unambiguous".into(),
        ));
    }
    if !s.target_value {
        return Err(Error::InvalidCertificates(
            "desensitization needs 1-certificates".into(),
        ));
    }
    let n = f.arity();
    if let Some(bad) = s.certificates.iter().find(|p| p.arity() != n) {
        return Err(Error::ArityMismatch {
            expected: n,
            actual: bad.arity(),
        });
    }
    let validated = if (1..=DEFAULT_MATERIALIZE_CAP).contains(&n) {
        s.check_against(&f.materialize()?)?;
        true
    } else {
        false
    };
    let arity = n
        .checked_mul(3)
        .ok_or_else(|| Error::Overflow("3n does not fit in usize".into()))?;
    let tripled: Vec<PartialAssignment> = s.certificates.iter().map(triple).collect();
    let s1 = 3 * s.max_codim() as u64;
    let meta = ConstructionMeta {
        predicted_s0: Some(1),
        predicted_s1: Some(s1),
        predicted_s: Some(s1.max(1)),
        predicted_lambda_sq: Some(s1),
        certificates: Some(CertificateCollection::new(true, tripled, true)),
        certificates_validated: Some(validated),
        ..ConstructionMeta::new(&format!(
            "desensitized({})",
            f.meta().map_or("f", |m| m.family.as_str())
        ))
    };
    Ok(BooleanFunction::from_node(
        arity,
        Node::Desensitized {
            block: n,
            certificates: s.certificates.clone(),
        },
        Some(meta),
    ))
}

/// ppp: the certificate repeated on all three blocks.
fn triple(p: &PartialAssignment) -> PartialAssignment {
    let n = p.arity();
    let mut out = PartialAssignment::free(3 * n);
    for i in p.fixed_positions() {
        let b = p.get(i).expect("fixed");
        for block in 0..3 {
            out.fix(block * n + i, b);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::InputPoint;

    fn or2_collection() -> CertificateCollection {
        CertificateCollection::new(true, vec!["1*".parse().unwrap(), "01".parse().unwrap()], true)
    }

    // Definition oracle, independent of the Node evaluator.
    fn oracle(s: &CertificateCollection, x: &[u8]) -> bool {
        let n = x.len() / 3;
        s.certificates.iter().any(|p| {
            (0..3).all(|b| {
                let block = InputPoint::from_bits(x[b * n..(b + 1) * n].iter().copied());
                p.satisfies(&block).unwrap()
            })
        })
    }

    #[test]
    fn or2_examples() {
        let s = or2_collection();
        let f = desensitize(&BooleanFunction::or(2).unwrap(), &s).unwrap();
        assert_eq!(f.arity(), 6);
        let a = [1, 0, 1, 0, 1, 1];
        let b = [1, 0, 0, 1, 1, 0];
        assert!(f.eval(&InputPoint::from_bits(a)).unwrap());
        assert!(!f.eval(&InputPoint::from_bits(b)).unwrap());
        assert!(oracle(&s, &a) && !oracle(&s, &b));
        for x in 0..64u64 {
            let bits: Vec<u8> = (0..6).map(|i| ((x >> i) & 1) as u8).collect();
            assert_eq!(f.eval_index(x), oracle(&s, &bits));
        }
        let meta = f.meta().unwrap();
        assert_eq!(meta.predicted_s1, Some(6));
        assert_eq!(meta.certificates_validated, Some(true));
    }

    #[test]
    fn dictator_gives_and3() {
        let s = CertificateCollection::new(true, vec!["1".parse().unwrap()], true);
        let f = desensitize(&BooleanFunction::dictator(1, 0).unwrap(), &s).unwrap();
        assert_eq!(f.materialize().unwrap(), BooleanFunction::and(3).unwrap().materialize().unwrap());
    }

    #[test]
    fn rejects_bad_collections() {
        let or2 = BooleanFunction::or(2).unwrap();
        let overlapping = CertificateCollection::new(true, vec!["1*".parse().unwrap(), "*1".parse().unwrap()], true);
        assert!(desensitize(&or2, &overlapping).is_err());
        let unflagged = CertificateCollection { unambiguous: false, ..or2_collection() };
        assert!(desensitize(&or2, &unflagged).is_err());
        let incomplete = CertificateCollection::new(true, vec!["1*".parse().unwrap()], true);
        assert!(desensitize(&or2, &incomplete).is_err());
        let wrong = CertificateCollection::new(true, vec!["**".parse().unwrap()], true);
        assert!(desensitize(&or2, &wrong).is_err());
    }
}
