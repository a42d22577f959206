use std::fmt;
use std::str::FromStr;

use crate::bits;
use crate::error::{Error, Result};
use crate::function::{InputPoint, TruthTable};

/// A partial assignment p : [n] → {0, 1, *}, i.e. a subcube of the hypercube.
///
/// Stored as two bit vectors: `mask` marks fixed positions and `value`
/// holds their bits (always a subset of `mask`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialAssignment {
    arity: usize,
    mask: Vec<u64>,
    value: Vec<u64>,
}

impl PartialAssignment {
    /// The whole cube: every position free.
    pub fn free(arity: usize) -> Self {
        let w = bits::words_for(arity);
        PartialAssignment {
            arity,
            mask: vec![0; w],
            value: vec![0; w],
        }
    }

    /// Builds from per-position entries in variable order; `None` is `*`.
    pub fn from_entries(entries: &[Option<bool>]) -> Self {
        let mut p = PartialAssignment::free(entries.len());
        for (i, e) in entries.iter().enumerate() {
            if let Some(b) = *e {
                p.fix(i, b);
            }
        }
        p
    }

    /// Builds from (mask, value) words when `arity <= 64`.
    pub fn from_mask(arity: usize, mask: u64, value: u64) -> Self {
        assert!(arity <= 64);
        let mut p = PartialAssignment::free(arity);
        if arity > 0 {
            let m = mask & bits::low_mask(arity);
            p.mask[0] = m;
            p.value[0] = value & m;
        }
        p
    }

    /// The single point `x` as a full assignment.
    pub fn point(x: &InputPoint) -> Self {
        let mut p = PartialAssignment::free(x.arity());
        for i in 0..x.arity() {
            p.fix(i, x.get(i));
        }
        p
    }

    pub fn fix(&mut self, i: usize, b: bool) {
        assert!(i < self.arity, "position {i} out of range for arity {}", self.arity);
        bits::set(&mut self.mask, i, true);
        bits::set(&mut self.value, i, b);
    }

    pub fn unfix(&mut self, i: usize) {
        assert!(i < self.arity);
        bits::set(&mut self.mask, i, false);
        bits::set(&mut self.value, i, false);
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        bits::get(&self.mask, i).then(|| bits::get(&self.value, i))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn codim(&self) -> usize {
        self.mask.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn dim(&self) -> usize {
        self.arity - self.codim()
    }

    pub fn mask_words(&self) -> &[u64] {
        &self.mask
    }

    pub fn value_words(&self) -> &[u64] {
        &self.value
    }

    pub fn fixed_positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.arity).filter(|&i| bits::get(&self.mask, i))
    }

    pub fn free_positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.arity).filter(|&i| !bits::get(&self.mask, i))
    }

    /// Whether `x ∈ p`.
    pub fn satisfies(&self, x: &InputPoint) -> Result<bool> {
        if x.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                actual: x.arity(),
            });
        }
        Ok(self.satisfied_at(x.words(), 0))
    }

    /// Whether the `arity` bits of `words` starting at `offset` lie in p.
    #[inline]
    pub fn satisfied_at(&self, words: &[u64], offset: usize) -> bool {
        let mut done = 0;
        for (m, v) in self.mask.iter().zip(&self.value) {
            let take = (self.arity - done).min(64);
            if *m != 0 && bits::extract(words, offset + done, take) & m != *v {
                return false;
            }
            done += take;
        }
        true
    }

    /// Membership test for integer-encoded inputs (`arity <= 64`).
    #[inline]
    pub fn contains_index(&self, x: u64) -> bool {
        self.arity == 0 || x & self.mask[0] == self.value[0]
    }

    /// True iff the two subcubes share no point.
    pub fn is_disjoint(&self, other: &PartialAssignment) -> bool {
        self.mask
            .iter()
            .zip(&self.value)
            .zip(other.mask.iter().zip(&other.value))
            .any(|((m1, v1), (m2, v2))| (v1 ^ v2) & m1 & m2 != 0)
    }

    /// Number of positions where both are fixed and disagree.
    pub fn conflicts(&self, other: &PartialAssignment) -> usize {
        self.mask
            .iter()
            .zip(&self.value)
            .zip(other.mask.iter().zip(&other.value))
            .map(|((m1, v1), (m2, v2))| ((v1 ^ v2) & m1 & m2).count_ones() as usize)
            .sum()
    }

    /// Enumerates the integer encodings of every point of the subcube
    /// (`arity <= 64`), in increasing order of the free bits.
    pub fn points(&self) -> impl Iterator<Item = u64> + '_ {
        assert!(self.arity <= 64);
        let free: Vec<usize> = self.free_positions().collect();
        let base = if self.arity == 0 { 0 } else { self.value[0] };
        (0..1u64 << free.len()).map(move |j| {
            let mut x = base;
            for (b, &pos) in free.iter().enumerate() {
                if (j >> b) & 1 == 1 {
                    x |= 1 << pos;
                }
            }
            x
        })
    }

    /// Whether f is constant (equal to `b`) on the subcube.
    pub fn is_monochromatic(&self, table: &TruthTable, b: bool) -> bool {
        self.arity == table.arity() && self.points().all(|x| table.get(x) == b)
    }
}

impl fmt::Display for PartialAssignment {
    /// Variable order x₁ … x_n, `*` for free positions.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.arity {
            let c = match self.get(i) {
                Some(true) => '1',
                Some(false) => '0',
                None => '*',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialAssignment({self})")
    }
}

impl FromStr for PartialAssignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .map(|c| match c {
                '0' => Ok(Some(false)),
                '1' => Ok(Some(true)),
                '*' => Ok(None),
                _ => Err(Error::Parse(format!("invalid assignment symbol {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PartialAssignment::from_entries(&entries))
    }
}

/// A set of b-certificates, optionally claimed to be unambiguous (each
/// b-input satisfies exactly one member).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCollection {
    pub target_value: bool,
    pub certificates: Vec<PartialAssignment>,
    pub unambiguous: bool,
}

impl CertificateCollection {
    pub fn new(target_value: bool, certificates: Vec<PartialAssignment>, unambiguous: bool) -> Self {
        CertificateCollection {
            target_value,
            certificates,
            unambiguous,
        }
    }

    pub fn arity(&self) -> Option<usize> {
        self.certificates.first().map(PartialAssignment::arity)
    }

    pub fn max_codim(&self) -> usize {
        self.certificates.iter().map(PartialAssignment::codim).max().unwrap_or(0)
    }

    pub fn matches(&self, x: &InputPoint) -> usize {
        self.certificates
            .iter()
            .filter(|p| p.satisfied_at(x.words(), 0))
            .count()
    }

    /// Exhaustive check against a table: every member is a `target_value`
    /// certificate of f and, when flagged unambiguous, every input in
    /// f⁻¹(target_value) satisfies exactly one member.
    pub fn check_against(&self, table: &TruthTable) -> Result<()> {
        let n = table.arity();
        for p in &self.certificates {
            if p.arity() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    actual: p.arity(),
                });
            }
            if !p.is_monochromatic(table, self.target_value) {
                return Err(Error::InvalidCertificates(format!(
                    "{p} is not a {}-certificate",
                    u8::from(self.target_value)
                )));
            }
        }
        if self.unambiguous {
            let mut hits = vec![0u32; table.len() as usize];
            for p in &self.certificates {
                for x in p.points() {
                    hits[x as usize] += 1;
                }
            }
            for x in 0..table.len() {
                if table.get(x) == self.target_value && hits[x as usize] != 1 {
                    return Err(Error::InvalidCertificates(format!(
                        "input {x} is covered by {} certificates",
                        hits[x as usize]
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PartialAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn satisfies_examples() {
        let x = InputPoint::from_bits([1, 0, 1]);
        assert!(p("1*1").satisfies(&x).unwrap());
        assert!(!p("0**").satisfies(&x).unwrap());
        let y = InputPoint::from_bits([0, 0, 0, 1, 1]);
        assert!(p("0001*").satisfies(&y).unwrap());
    }

    #[test]
    fn satisfies_arity_mismatch() {
        let x = InputPoint::from_bits([1, 0]);
        assert!(matches!(
            p("1*1").satisfies(&x),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn dim_and_codim() {
        let q = p("0*1**");
        assert_eq!(q.codim(), 2);
        assert_eq!(q.dim(), 3);
        assert_eq!(q.to_string(), "0*1**");
    }

    #[test]
    fn disjointness() {
        assert!(p("1*").is_disjoint(&p("01")));
        assert!(!p("1*").is_disjoint(&p("*1")));
        assert_eq!(p("000").conflicts(&p("111")), 3);
    }

    #[test]
    fn wide_assignment_crosses_words() {
        let mut q = PartialAssignment::free(130);
        q.fix(0, true);
        q.fix(64, false);
        q.fix(129, true);
        let mut x = InputPoint::zeros(130);
        x.set(0, true);
        x.set(129, true);
        assert!(q.satisfies(&x).unwrap());
        x.set(64, true);
        assert!(!q.satisfies(&x).unwrap());
    }

    #[test]
    fn points_enumerates_subcube() {
        let q = p("1*0*");
        let pts: Vec<u64> = q.points().collect();
        assert_eq!(pts, vec![0b0001, 0b0011, 0b1001, 0b1011]);
    }

    #[test]
    fn or2_collection_is_unambiguous() {
        let or2 = TruthTable::from_fn(2, |x| x != 0).unwrap();
        let good = CertificateCollection::new(true, vec![p("1*"), p("01")], true);
        good.check_against(&or2).unwrap();
        let overlapping = CertificateCollection::new(true, vec![p("1*"), p("*1")], true);
        assert!(overlapping.check_against(&or2).is_err());
        let not_cert = CertificateCollection::new(true, vec![p("**")], true);
        assert!(not_cert.check_against(&or2).is_err());
    }
}
