use crate::bits;
use crate::constructions::{chaf, ConstructionMeta, Sections};
use crate::error::{Error, Result};
use crate::function::{BooleanFunction, Node};

/// The ∘' composition: the outer function's codeword section is kept as is
/// and each of its data bits is replaced by the inner function on a fresh
/// block of variables.
pub fn data_compose(outer: &BooleanFunction, inner: &BooleanFunction) -> Result<BooleanFunction> {
    let sections = outer
        .meta()
        .and_then(|m| m.sections)
        .ok_or(Error::MissingSections)?;
    let arity = sections
        .data_len
        .checked_mul(inner.arity())
        .and_then(|d| d.checked_add(sections.codeword_len))
        .ok_or_else(|| Error::Overflow("composed arity does not fit in usize".into()))?;
    let meta = ConstructionMeta {
        sections: Some(Sections {
            codeword_len: sections.codeword_len,
            data_len: sections.data_len * inner.arity(),
        }),
        ..ConstructionMeta::new(&format!(
            "{} o' {}",
            family(outer),
            family(inner)
        ))
    };
    Ok(BooleanFunction::from_node(
        arity,
        Node::DataCompose {
            outer: Box::new(outer.clone()),
            inner: Box::new(inner.clone()),
        },
        Some(meta),
    ))
}

fn family(f: &BooleanFunction) -> String {
    f.meta().map_or_else(|| "f".to_string(), |m| m.family.clone())
}

pub(crate) fn eval_data_compose(
    outer: &BooleanFunction,
    inner: &BooleanFunction,
    words: &[u64],
) -> bool {
    let sections = outer.meta().and_then(|m| m.sections).expect("checked at construction");
    match outer.node() {
        // Only the addressed block can matter.
        Node::CodeAddress(code) => match code.address_of(words) {
            Some(i) => eval_block(inner, words, sections.codeword_len + i as usize * inner.arity()),
            None => false,
        },
        _ => eval_data_compose_generic(outer, inner, words),
    }
}

/// Substitutes every data bit and evaluates the outer function on the result.
pub(crate) fn eval_data_compose_generic(
    outer: &BooleanFunction,
    inner: &BooleanFunction,
    words: &[u64],
) -> bool {
    let sections = outer.meta().and_then(|m| m.sections).expect("checked at construction");
    let mut outer_words = vec![0u64; bits::words_for(outer.arity())];
    bits::deposit_vec(&mut outer_words, 0, sections.codeword_len, words);
    for j in 0..sections.data_len {
        let start = sections.codeword_len + j * inner.arity();
        if eval_block(inner, words, start) {
            bits::set(&mut outer_words, sections.codeword_len + j, true);
        }
    }
    outer.eval_words(&outer_words)
}

#[inline]
fn eval_block(f: &BooleanFunction, words: &[u64], start: usize) -> bool {
    if f.arity() <= 64 {
        f.eval_index(bits::extract(words, start, f.arity()))
    } else {
        f.eval_words(&bits::extract_vec(words, start, f.arity()))
    }
}

/// Closed-form values of the tradeoff family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TradeoffPrediction {
    /// Arity, when it fits in 128 bits.
    pub arity: Option<u128>,
    pub s0: u64,
    pub s1: u64,
    pub lambda_sq: u64,
}

impl TradeoffPrediction {
    /// s₀ / (s₀ + s₁)
    pub fn c_hat(&self) -> f64 {
        self.s0 as f64 / (self.s0 + self.s1) as f64
    }
}

/// s₀ = Σ2^{bᵢ} − m + 1, s₁ = Σ2^{aᵢ} − l + 1, λ² = s₀ + s₁ − 1, and the
/// arity Σ(2^{aᵢ} − 1) + t_a · (Σ(2^{bᵢ} − 1) + t_b).
pub fn tradeoff_predictions(outer: &[u32], inner: &[u32]) -> Result<TradeoffPrediction> {
    if outer.is_empty() {
        return Err(Error::InvalidParameter("tradeoff needs at least one outer code".into()));
    }
    if let Some(r) = outer.iter().chain(inner).find(|&&r| r < 2) {
        return Err(Error::InvalidParameter(format!("code parameter {r} < 2")));
    }
    if let Some(r) = outer.iter().chain(inner).find(|&&r| r > 62) {
        return Err(Error::Overflow(format!("code parameter {r} too large")));
    }
    let sensitivity = |rs: &[u32]| -> u64 { rs.iter().map(|&r| 1u64 << r).sum::<u64>() + 1 - rs.len() as u64 };
    let s1 = sensitivity(outer);
    let s0 = sensitivity(inner);
    let arity_of = |rs: &[u32]| -> Option<u128> {
        let codewords: u128 = rs.iter().map(|&r| (1u128 << r) - 1).sum();
        let log_t: u64 = rs.iter().map(|&r| (1u64 << r) - r as u64 - 1).sum();
        if log_t >= 127 {
            return None;
        }
        codewords.checked_add(1u128 << log_t)
    };
    let arity = if inner.is_empty() {
        arity_of(outer)
    } else {
        let codewords: u128 = outer.iter().map(|&r| (1u128 << r) - 1).sum();
        let log_t: u64 = outer.iter().map(|&r| (1u64 << r) - r as u64 - 1).sum();
        arity_of(inner).and_then(|inner_arity| {
            if log_t >= 127 {
                return None;
            }
            (1u128 << log_t)
                .checked_mul(inner_arity)
                .and_then(|d| d.checked_add(codewords))
        })
    };
    Ok(TradeoffPrediction {
        arity,
        s0,
        s1,
        lambda_sq: s0 + s1 - 1,
    })
}

/// f′ = chaf(outer) ∘' ¬chaf(inner); with no inner codes, chaf(outer).
pub fn tradeoff(outer: &[u32], inner: &[u32]) -> Result<BooleanFunction> {
    let prediction = tradeoff_predictions(outer, inner)?;
    let base = chaf(outer)?;
    if inner.is_empty() {
        return Ok(base);
    }
    let composed = data_compose(&base, &chaf(inner)?.negate())?;
    let meta = ConstructionMeta {
        family: format!("tradeoff({:?}; {:?})", outer, inner),
        predicted_s0: Some(prediction.s0),
        predicted_s1: Some(prediction.s1),
        predicted_s: Some(prediction.s0.max(prediction.s1)),
        predicted_lambda_sq: Some(prediction.lambda_sq),
        ..composed.meta().cloned().unwrap_or_default()
    };
    Ok(composed.with_meta(meta))
}

/// One row of the tradeoff sweep: l outer and m inner codes, all with
/// parameter `base + g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub g: u32,
    pub outer: Vec<u32>,
    pub inner: Vec<u32>,
    pub prediction: TradeoffPrediction,
}

/// Rows for g = start..=end (empty when end < start). The arity must fit in
/// 128 bits.
pub fn tradeoff_sweep(start: u32, end: u32, l: usize, m: usize, base: u32) -> Result<Vec<SweepRow>> {
    if l == 0 {
        return Err(Error::InvalidParameter("ratio needs l >= 1".into()));
    }
    (start..=end)
        .map(|g| {
            let r = base
                .checked_add(g)
                .ok_or_else(|| Error::Overflow(format!("code parameter {base} + {g}")))?;
            let outer = vec![r; l];
            let inner = vec![r; m];
            let prediction = tradeoff_predictions(&outer, &inner)?;
            if prediction.arity.is_none() {
                return Err(Error::Overflow(format!("arity at g = {g} exceeds 128 bits")));
            }
            Ok(SweepRow {
                g,
                outer,
                inner,
                prediction,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::haf;

    #[test]
    fn haf2_compose_not_haf2_arity() {
        let outer = haf(2).unwrap();
        let f = data_compose(&outer, &haf(2).unwrap().negate()).unwrap();
        assert_eq!(f.arity(), 13);
    }

    #[test]
    fn compose_needs_sections() {
        let outer = BooleanFunction::and(2).unwrap();
        assert!(matches!(
            data_compose(&outer, &BooleanFunction::and(2).unwrap()),
            Err(Error::MissingSections)
        ));
    }

    #[test]
    fn constant_inner_fills_data_with_ones() {
        let outer = haf(2).unwrap();
        let one = BooleanFunction::constant(1, true);
        let f = data_compose(&outer, &one).unwrap();
        assert_eq!(f.arity(), 5);
        for x in 0..32u64 {
            assert_eq!(f.eval_index(x), outer.eval_index((x & 0b111) | 0b11000));
        }
    }

    #[test]
    fn fast_and_generic_paths_agree() {
        let outer = chaf(&[2, 2]).unwrap();
        let inner = haf(2).unwrap().negate();
        let f = data_compose(&outer, &inner).unwrap();
        assert_eq!(f.arity(), 26);
        let mut state = 0x5EEDu64;
        for _ in 0..20_000 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let x = state >> 38;
            let words = [x];
            assert_eq!(
                eval_data_compose(&outer, &inner, &words),
                eval_data_compose_generic(&outer, &inner, &words)
            );
        }
    }

    #[test]
    fn tradeoff_predictions_examples() {
        let p = tradeoff_predictions(&[2], &[2]).unwrap();
        assert_eq!((p.s0, p.s1, p.lambda_sq, p.arity), (4, 4, 7, Some(13)));
        let p = tradeoff_predictions(&[2, 2], &[2]).unwrap();
        assert_eq!((p.s0, p.s1), (4, 7));
        assert!((p.c_hat() - 4.0 / 11.0).abs() < 1e-15);
        let p = tradeoff_predictions(&[3], &[3]).unwrap();
        assert_eq!((p.s0, p.s1, p.c_hat()), (8, 8, 0.5));
        let p = tradeoff_predictions(&[2], &[]).unwrap();
        assert_eq!((p.s0, p.s1, p.lambda_sq, p.arity), (1, 4, 4, Some(5)));
        assert!(tradeoff_predictions(&[], &[2]).is_err());
        assert!(tradeoff_predictions(&[1], &[2]).is_err());
    }

    #[test]
    fn tradeoff_matches_explicit_composition() {
        let t = tradeoff(&[2], &[2]).unwrap().materialize().unwrap();
        let d = data_compose(&haf(2).unwrap(), &haf(2).unwrap().negate())
            .unwrap()
            .materialize()
            .unwrap();
        assert_eq!(t, d);
        let meta = tradeoff(&[2], &[2]).unwrap().meta().cloned().unwrap();
        assert_eq!(meta.predicted_lambda_sq, Some(7));
    }

    #[test]
    fn tradeoff_without_inner_is_chaf() {
        let t = tradeoff(&[2], &[]).unwrap().materialize().unwrap();
        assert_eq!(t, chaf(&[2]).unwrap().materialize().unwrap());
    }

    #[test]
    fn sweep_rows() {
        let rows = tradeoff_sweep(0, 1, 1, 1, 2).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!((rows[0].outer.clone(), rows[0].inner.clone()), (vec![2], vec![2]));
        assert_eq!(rows[1].outer, vec![3]);
        assert!(rows.iter().all(|r| r.prediction.c_hat() == 0.5));
        assert_eq!(rows[0].prediction.arity, Some(13));
        assert!(tradeoff_sweep(3, 2, 1, 1, 2).unwrap().is_empty());
        assert!(matches!(tradeoff_sweep(0, 8, 1, 1, 2), Err(Error::Overflow(_))));
    }
}
