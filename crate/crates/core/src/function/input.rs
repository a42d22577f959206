use std::fmt;

use crate::bits;
use crate::error::{Error, Result};

/// A point of the n-dimensional hypercube. Variable x₁ is the least
/// significant bit of the integer encoding.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InputPoint {
    arity: usize,
    words: Vec<u64>,
}

impl InputPoint {
    pub fn zeros(arity: usize) -> Self {
        InputPoint {
            arity,
            words: vec![0; bits::words_for(arity)],
        }
    }

    /// Builds a point from its integer encoding; requires `arity <= 64`.
    pub fn from_index(arity: usize, index: u64) -> Result<Self> {
        if arity > 64 {
            return Err(Error::CapExceeded {
                what: "integer-encoded input",
                arity,
                cap: 64,
            });
        }
        if arity < 64 && index >> arity != 0 {
            return Err(Error::InvalidParameter(format!(
                "index {index} does not fit in {arity} bits"
            )));
        }
        let mut words = vec![0; bits::words_for(arity)];
        if arity > 0 {
            words[0] = index;
        }
        Ok(InputPoint { arity, words })
    }

    /// Builds a point from bits listed in variable order x₁, x₂, ….
    pub fn from_bits<I>(bits_in_order: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<Bit>,
    {
        let values: Vec<bool> = bits_in_order.into_iter().map(|b| b.into().0).collect();
        let mut point = InputPoint::zeros(values.len());
        for (i, v) in values.into_iter().enumerate() {
            bits::set(&mut point.words, i, v);
        }
        point
    }

    #[allow(dead_code)]
    pub(crate) fn from_words(arity: usize, mut words: Vec<u64>) -> Self {
        words.resize(bits::words_for(arity), 0);
        if !arity.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last &= bits::low_mask(arity % 64);
            }
        }
        InputPoint { arity, words }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Value of variable x_{i+1} (0-based position `i`).
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.arity, "position {i} out of range for arity {}", self.arity);
        bits::get(&self.words, i)
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.arity, "position {i} out of range for arity {}", self.arity);
        bits::set(&mut self.words, i, value);
    }

    /// The neighbour x^{(i)}: this point with position `i` flipped.
    pub fn flip(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.flip_in_place(i);
        out
    }

    pub fn flip_in_place(&mut self, i: usize) {
        assert!(i < self.arity, "position {i} out of range for arity {}", self.arity);
        bits::flip(&mut self.words, i);
    }

    /// Integer encoding, when the arity fits in 64 bits.
    pub fn index(&self) -> Option<u64> {
        match self.arity {
            0 => Some(0),
            1..=64 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Bits in variable order x₁ … x_n.
    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.arity).map(|i| bits::get(&self.words, i)).collect()
    }
}

impl fmt::Debug for InputPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InputPoint(")?;
        for i in 0..self.arity {
            write!(f, "{}", u8::from(bits::get(&self.words, i)))?;
        }
        write!(f, ")")
    }
}

/// Conversion helper so that `from_bits` accepts `bool`s and `0`/`1` integers.
#[derive(Clone, Copy)]
pub struct Bit(pub bool);

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        Bit(b)
    }
}

impl From<u8> for Bit {
    fn from(b: u8) -> Self {
        Bit(b != 0)
    }
}

impl From<i32> for Bit {
    fn from(b: i32) -> Self {
        Bit(b != 0)
    }
}

/// Renders an integer-encoded point as a fixed-width binary string, most
/// significant variable (x_n) first.
pub fn binary_msb_first(index: u64, arity: usize) -> String {
    (0..arity)
        .rev()
        .map(|i| if (index >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_bits_is_lsb_first() {
        let x = InputPoint::from_bits([1, 0, 1, 1]);
        assert_eq!(x.index(), Some(0b1101));
        assert!(x.get(0) && !x.get(1));
    }

    #[test]
    fn flip_changes_exactly_one_bit() {
        let x = InputPoint::from_bits([0, 1, 1, 0, 1]);
        for i in 0..5 {
            let y = x.flip(i);
            let diff: Vec<usize> = (0..5).filter(|&j| x.get(j) != y.get(j)).collect();
            assert_eq!(diff, vec![i]);
        }
    }

    #[test]
    fn from_index_rejects_overflow() {
        assert!(InputPoint::from_index(3, 8).is_err());
        assert!(InputPoint::from_index(3, 7).is_ok());
    }

    #[test]
    fn binary_rendering() {
        assert_eq!(binary_msb_first(1, 2), "01");
        assert_eq!(binary_msb_first(2, 2), "10");
        assert_eq!(binary_msb_first(5, 4), "0101");
    }
}
