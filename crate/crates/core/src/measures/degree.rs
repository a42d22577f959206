use crate::error::{Error, Result};
use crate::function::{TruthTable, DEFAULT_MATERIALIZE_CAP};
use crate::measures::sensitivity::check_cap;

/// Möbius coefficients a_S of the unique multilinear polynomial
/// f(x) = Σ_S a_S ∏_{i∈S} x_i, indexed by the bitmask of S.
///
/// Each |a_S| ≤ 2^{|S|} ≤ 2^26, so `i32` is exact up to the default cap.
pub fn mobius(table: &TruthTable) -> Result<Vec<i32>> {
    let n = table.arity();
    check_cap("Möbius transform", n, DEFAULT_MATERIALIZE_CAP)?;
    let mut a: Vec<i32> = (0..table.len()).map(|x| i32::from(table.get(x))).collect();
    for i in 0..n {
        let bit = 1usize << i;
        for s in 0..a.len() {
            if s & bit != 0 {
                a[s] -= a[s ^ bit];
            }
        }
    }
    Ok(a)
}

/// Inverse transform; fails unless the coefficients describe a 0/1 function.
pub fn from_mobius(arity: usize, coefficients: &[i32]) -> Result<TruthTable> {
    if coefficients.len() != 1usize << arity {
        return Err(Error::InvalidParameter("coefficient count is not 2^n".into()));
    }
    let mut v = coefficients.to_vec();
    for i in 0..arity {
        let bit = 1usize << i;
        for s in 0..v.len() {
            if s & bit != 0 {
                v[s] += v[s ^ bit];
            }
        }
    }
    if let Some(bad) = v.iter().find(|&&y| y != 0 && y != 1) {
        return Err(Error::InvalidParameter(format!("value {bad} is not Boolean")));
    }
    TruthTable::from_fn(arity, |x| v[x as usize] == 1)
}

/// deg(f): the largest |S| with a_S ≠ 0, using exact integer coefficients.
/// The zero function has degree 0.
pub fn degree(table: &TruthTable) -> Result<usize> {
    Ok(mobius(table)?
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(s, _)| s.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::maf;
    use crate::function::{BooleanFunction, PartialAssignment};
    use proptest::prelude::*;

    #[test]
    fn parity_has_full_degree() {
        for n in 1..=8 {
            let t = BooleanFunction::parity(n).unwrap().materialize().unwrap();
            assert_eq!(degree(&t).unwrap(), n);
        }
    }

    #[test]
    fn and_or_small() {
        let and2 = BooleanFunction::and(2).unwrap().materialize().unwrap();
        assert_eq!(mobius(&and2).unwrap(), vec![0, 0, 0, 1]);
        assert_eq!(degree(&and2).unwrap(), 2);
        // OR₂ = x₁ + x₂ − x₁x₂
        let or2 = BooleanFunction::or(2).unwrap().materialize().unwrap();
        assert_eq!(mobius(&or2).unwrap(), vec![0, 1, 1, -1]);
        let zero = BooleanFunction::constant(3, false).materialize().unwrap();
        assert_eq!(degree(&zero).unwrap(), 0);
    }

    #[test]
    fn maf4_threshold_restriction_has_degree_4() {
        let f = maf(4).unwrap();
        let mut p = PartialAssignment::free(f.arity());
        for i in 4..f.arity() {
            p.fix(i, false);
        }
        let r = f.restrict(&p).unwrap().materialize().unwrap();
        assert_eq!(degree(&r).unwrap(), 4);
    }

    proptest! {
        #[test]
        fn mobius_round_trips(arity in 1usize..=10, seed in any::<u64>()) {
            let t = TruthTable::from_fn(arity, |x| (x ^ seed).wrapping_mul(0xA076_1D64_78BD_642F) >> 63 == 1).unwrap();
            let a = mobius(&t).unwrap();
            prop_assert_eq!(from_mobius(arity, &a).unwrap(), t);
        }
    }
}
