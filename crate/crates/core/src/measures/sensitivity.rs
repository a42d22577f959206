use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, InputPoint, TruthTable};

/// A maximum (or minimum) over inputs together with the smallest input
/// attaining it. `witness` is `None` when the range is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Extremum {
    pub value: u32,
    pub witness: Option<u64>,
}

/// s(f, x): the number of positions whose flip changes f(x).
pub fn sensitivity_at(f: &BooleanFunction, x: &InputPoint) -> Result<u32> {
    let mut y = x.clone();
    let v = f.eval(x)?;
    let mut count = 0;
    for i in 0..f.arity() {
        y.flip_in_place(i);
        if f.eval_words(y.words()) != v {
            count += 1;
        }
        y.flip_in_place(i);
    }
    Ok(count)
}

/// s_b(f) over a truth table, with the smallest witness. An empty f⁻¹(b)
/// gives 0 with no witness.
pub fn b_sensitivity(table: &TruthTable, b: bool) -> Extremum {
    scan(table, b, |a, c| a > c)
}

/// min over f⁻¹(b) of s(f, x).
pub fn min_b_sensitivity(table: &TruthTable, b: bool) -> Extremum {
    scan(table, b, |a, c| a < c)
}

fn scan(table: &TruthTable, b: bool, better: impl Fn(u32, u32) -> bool + Sync) -> Extremum {
    // Ties resolve to the smaller index, so the result is independent of how
    // rayon splits the range.
    let pick = |a: Option<(u32, u64)>, c: Option<(u32, u64)>| match (a, c) {
        (None, o) | (o, None) => o,
        (Some(a), Some(c)) => {
            if better(a.0, c.0) || (a.0 == c.0 && a.1 < c.1) {
                Some(a)
            } else {
                Some(c)
            }
        }
    };
    let best = (0..table.len())
        .into_par_iter()
        .filter(|&x| table.get(x) == b)
        .map(|x| Some((table.sensitivity_at(x), x)))
        .reduce(|| None, pick);
    match best {
        Some((value, x)) => Extremum {
            value,
            witness: Some(x),
        },
        None => Extremum {
            value: 0,
            witness: None,
        },
    }
}

pub fn s0(table: &TruthTable) -> Extremum {
    b_sensitivity(table, false)
}

pub fn s1(table: &TruthTable) -> Extremum {
    b_sensitivity(table, true)
}

/// s(f) = max{s₀, s₁}.
pub fn s(table: &TruthTable) -> Extremum {
    let (a, b) = (s0(table), s1(table));
    let key = |e: &Extremum| (e.value, std::cmp::Reverse(e.witness.unwrap_or(u64::MAX)));
    if key(&a) >= key(&b) {
        a
    } else {
        b
    }
}

/// Sensitivities of a (materializable) function.
pub fn sensitivities(f: &BooleanFunction) -> Result<(Extremum, Extremum)> {
    let t = f.materialize()?;
    Ok((s0(&t), s1(&t)))
}

pub(crate) fn check_cap(what: &'static str, arity: usize, cap: usize) -> Result<()> {
    if arity > cap {
        Err(Error::CapExceeded { what, arity, cap })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::haf;

    #[test]
    fn parity3_everywhere_three() {
        let f = BooleanFunction::parity(3).unwrap();
        for x in 0..8 {
            let p = InputPoint::from_index(3, x).unwrap();
            assert_eq!(sensitivity_at(&f, &p).unwrap(), 3);
        }
    }

    #[test]
    fn and2_at_11() {
        let f = BooleanFunction::and(2).unwrap();
        assert_eq!(sensitivity_at(&f, &InputPoint::from_bits([1, 1])).unwrap(), 2);
        let t = f.materialize().unwrap();
        assert_eq!(s0(&t).value, 1);
        assert_eq!(s1(&t), Extremum { value: 2, witness: Some(3) });
    }

    #[test]
    fn haf2_point_and_totals() {
        let f = haf(2).unwrap();
        let x = InputPoint::from_bits([0, 0, 0, 1, 0]);
        assert_eq!(sensitivity_at(&f, &x).unwrap(), 4);
        let t = f.materialize().unwrap();
        assert_eq!(s0(&t).value, 1);
        assert_eq!(s1(&t).value, 4);
        assert_eq!(min_b_sensitivity(&t, true).value, 4);
        assert_eq!(s(&t).value, 4);
    }

    #[test]
    fn xor2() {
        let t = BooleanFunction::parity(2).unwrap().materialize().unwrap();
        assert_eq!(s0(&t).value, 2);
        assert_eq!(s1(&t).value, 2);
    }

    #[test]
    fn constant_has_empty_side() {
        let t = BooleanFunction::constant(3, false).materialize().unwrap();
        assert_eq!(s1(&t), Extremum { value: 0, witness: None });
        assert_eq!(s0(&t).value, 0);
        assert_eq!(s(&t).value, 0);
    }

    #[test]
    fn sensitivity_arity_mismatch() {
        let f = BooleanFunction::and(2).unwrap();
        assert!(sensitivity_at(&f, &InputPoint::zeros(3)).is_err());
    }
}
