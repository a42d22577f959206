//! Binary Hamming codes H_r in the classic positional layout: parity bits sit
//! at the power-of-two positions (1-indexed), data bits fill the remaining
//! positions in order, and the parity bit at position 2^j covers every
//! position whose index has bit j set.
//!
//! Codewords are packed into a `u64` with position j at bit j − 1, so
//! r ≤ 6 (codeword length 63).

use crate::error::{Error, Result};

/// Largest r whose codewords fit in a `u64`.
pub const MAX_R: u32 = 6;

/// Largest r for which all codewords may be listed.
pub const LIST_MAX_R: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HammingCode {
    r: u32,
    // 1-indexed positions of the data bits, increasing.
    data_positions: Vec<u32>,
}

impl HammingCode {
    pub fn new(r: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParameter(format!("Hamming code needs r >= 2, got {r}")));
        }
        if r > MAX_R {
            return Err(Error::Overflow(format!(
                "Hamming code r = {r} exceeds supported maximum {MAX_R}"
            )));
        }
        let k = (1u32 << r) - 1;
        let data_positions = (1..=k).filter(|p| !p.is_power_of_two()).collect();
        Ok(HammingCode { r, data_positions })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// 2^r − r − 1
    pub fn message_len(&self) -> usize {
        self.data_positions.len()
    }

    /// k = 2^r − 1
    pub fn codeword_len(&self) -> usize {
        (1usize << self.r) - 1
    }

    /// |H_r| = 2^{2^r − r − 1}
    pub fn size(&self) -> u64 {
        1u64 << self.message_len()
    }

    /// Encodes a message given as bits d₁, d₂, …
    pub fn encode(&self, message: &[bool]) -> Result<Vec<bool>> {
        if message.len() != self.message_len() {
            return Err(Error::ArityMismatch {
                expected: self.message_len(),
                actual: message.len(),
            });
        }
        let packed = message
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
        let word = self.encode_word(packed);
        Ok((0..self.codeword_len()).map(|i| (word >> i) & 1 == 1).collect())
    }

    /// Encodes a packed message (d₁ at bit 0).
    pub fn encode_word(&self, message: u64) -> u64 {
        let mut word = 0u64;
        for (i, &pos) in self.data_positions.iter().enumerate() {
            if (message >> i) & 1 == 1 {
                word |= 1 << (pos - 1);
            }
        }
        let s = self.syndrome(word);
        for j in 0..self.r {
            if (s >> j) & 1 == 1 {
                word |= 1 << ((1u32 << j) - 1);
            }
        }
        word
    }

    /// XOR of the 1-indexed positions of all set bits; zero exactly on codewords.
    #[inline]
    pub fn syndrome(&self, word: u64) -> u32 {
        let mut s = 0u32;
        let mut w = word;
        while w != 0 {
            let b = w.trailing_zeros();
            s ^= b + 1;
            w &= w - 1;
        }
        s
    }

    #[inline]
    pub fn is_codeword(&self, word: u64) -> bool {
        word >> self.codeword_len() == 0 && self.syndrome(word) == 0
    }

    /// Reads the data bits back out of a codeword.
    #[inline]
    pub fn message_of(&self, word: u64) -> u64 {
        self.data_positions
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &pos)| acc | (((word >> (pos - 1)) & 1) << i))
    }

    /// Codeword w_m for the 1-based message index m (message bits are the
    /// binary expansion of m − 1).
    pub fn codeword_for_index(&self, m: u64) -> Result<u64> {
        if m == 0 || m > self.size() {
            return Err(Error::InvalidParameter(format!(
                "message index {m} outside 1..={}",
                self.size()
            )));
        }
        Ok(self.encode_word(m - 1))
    }

    pub fn list_codewords(&self) -> Result<Vec<u64>> {
        if self.r > LIST_MAX_R {
            return Err(Error::CapExceeded {
                what: "codeword listing",
                arity: self.r as usize,
                cap: LIST_MAX_R as usize,
            });
        }
        Ok((0..self.size()).map(|m| self.encode_word(m)).collect())
    }

    /// Minimum pairwise Hamming distance, by exhaustive comparison.
    pub fn min_distance(&self) -> Result<u32> {
        let words = self.list_codewords()?;
        let mut best = u32::MAX;
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                best = best.min(hamming_distance(*a, *b));
            }
        }
        Ok(best)
    }
}

pub fn hamming_distance(a: u64, b: u64) -> u32 {
    (a ^ b).count_ones()
}
