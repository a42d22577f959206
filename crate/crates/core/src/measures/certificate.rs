use rayon::prelude::*;

use crate::error::Result;
use crate::function::{PartialAssignment, TruthTable};
use crate::measures::sensitivity::check_cap;

/// Exhaustive certificate search is exponential in the arity.
pub const CERTIFICATE_CAP: usize = 16;

/// C(f, x) with a minimum co-dimension certificate containing x.
///
/// Every certificate of x must fix x's sensitive positions, so the search
/// runs over supersets of that set in order of size, and within a size in
/// lexicographic order of the added positions; the first certificate found
/// is the lexicographically smallest minimal one.
pub fn certificate_complexity_at(table: &TruthTable, x: u64) -> Result<(usize, PartialAssignment)> {
    let n = table.arity();
    check_cap("certificate search", n, CERTIFICATE_CAP)?;
    let value = table.get(x);
    let forced: u64 = (0..n)
        .filter(|&i| table.is_sensitive(x, i))
        .fold(0, |m, i| m | (1 << i));
    let optional: Vec<usize> = (0..n).filter(|&i| (forced >> i) & 1 == 0).collect();
    for extra in 0..=optional.len() {
        let mut combo: Vec<usize> = (0..extra).collect();
        loop {
            let mask = combo.iter().fold(forced, |m, &j| m | (1 << optional[j]));
            if is_monochromatic(table, mask, x & mask, value) {
                let p = PartialAssignment::from_mask(n, mask, x);
                return Ok((p.codim(), p));
            }
            if !next_combination(&mut combo, optional.len()) {
                break;
            }
        }
    }
    unreachable!("the full assignment is always a certificate")
}

/// C_b(f) = max over f⁻¹(b) of C(f, x), with the smallest maximizing input.
pub fn certificate_complexity_b(table: &TruthTable, b: bool) -> Result<Option<(usize, u64, PartialAssignment)>> {
    check_cap("certificate search", table.arity(), CERTIFICATE_CAP)?;
    let best = (0..table.len())
        .into_par_iter()
        .filter(|&x| table.get(x) == b)
        .map(|x| {
            let (c, p) = certificate_complexity_at(table, x).expect("cap checked");
            Some((c, x, p))
        })
        .reduce(
            || None,
            |a, c| match (a, c) {
                (None, o) | (o, None) => o,
                (Some(a), Some(c)) => {
                    if a.0 > c.0 || (a.0 == c.0 && a.1 < c.1) {
                        Some(a)
                    } else {
                        Some(c)
                    }
                }
            },
        );
    Ok(best)
}

/// Whether every point y with y & mask == value has f(y) = b.
pub(crate) fn is_monochromatic(table: &TruthTable, mask: u64, value: u64, b: bool) -> bool {
    let free = !mask & ((1u64 << table.arity()) - 1);
    // Walk all submasks of `free`.
    let mut sub = free;
    loop {
        if table.get(value | sub) != b {
            return false;
        }
        if sub == 0 {
            return true;
        }
        sub = (sub - 1) & free;
    }
}

/// Advances `combo` (strictly increasing indices into 0..n) to the next
/// combination in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
