use std::fmt;

use rayon::prelude::*;

use crate::bits;
use crate::error::{Error, Result};

/// Largest arity a table can be allocated with at all. The configurable
/// materialization cap sits below this.
pub const MAX_TABLE_ARITY: usize = 32;

/// Packed truth table of a total function {0,1}^n → {0,1}; bit `x` holds f(x)
/// for the integer encoding `x` of the input.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn zeros(arity: usize) -> Result<Self> {
        check_arity(arity)?;
        Ok(TruthTable {
            arity,
            words: vec![0; word_count(arity)],
        })
    }

    /// Tabulates `f` over every input, in parallel. The result does not depend
    /// on scheduling since every word is written by exactly one task.
    pub fn from_fn<F>(arity: usize, f: F) -> Result<Self>
    where
        F: Fn(u64) -> bool + Sync,
    {
        check_arity(arity)?;
        let size = 1u64 << arity;
        let mut words = vec![0u64; word_count(arity)];
        words.par_iter_mut().enumerate().for_each(|(w, word)| {
            let base = (w as u64) << 6;
            let end = (base + 64).min(size);
            let mut acc = 0u64;
            for x in base..end {
                if f(x) {
                    acc |= 1 << (x - base);
                }
            }
            *word = acc;
        });
        Ok(TruthTable { arity, words })
    }

    /// Builds a table from values listed by input index 0, 1, …, 2^n − 1.
    pub fn from_values(arity: usize, values: &[bool]) -> Result<Self> {
        check_arity(arity)?;
        if values.len() != 1usize << arity {
            return Err(Error::InvalidParameter(format!(
                "expected {} values for arity {arity}, got {}",
                1usize << arity,
                values.len()
            )));
        }
        let mut table = TruthTable::zeros(arity)?;
        for (i, &v) in values.iter().enumerate() {
            bits::set(&mut table.words, i, v);
        }
        Ok(table)
    }

    /// Wraps raw words; bits past 2^n are cleared.
    pub fn from_words(arity: usize, mut words: Vec<u64>) -> Result<Self> {
        check_arity(arity)?;
        if words.len() != word_count(arity) {
            return Err(Error::InvalidParameter(format!(
                "expected {} words for arity {arity}, got {}",
                word_count(arity),
                words.len()
            )));
        }
        if arity < 6 {
            words[0] &= bits::low_mask(1 << arity);
        }
        Ok(TruthTable { arity, words })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> u64 {
        1u64 << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, x: u64) -> bool {
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    pub fn set(&mut self, x: u64, value: bool) {
        assert!(x < self.len(), "index {x} out of range");
        bits::set(&mut self.words, x as usize, value);
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn complement(&self) -> TruthTable {
        let words = self.words.iter().map(|w| !w).collect();
        TruthTable::from_words(self.arity, words).expect("same shape")
    }

    /// Number of positions `i` with f(x) ≠ f(x^{(i)}).
    #[inline]
    pub fn sensitivity_at(&self, x: u64) -> u32 {
        let v = self.get(x);
        (0..self.arity)
            .filter(|&i| self.get(x ^ (1 << i)) != v)
            .count() as u32
    }

    #[inline]
    pub fn is_sensitive(&self, x: u64, i: usize) -> bool {
        self.get(x) != self.get(x ^ (1 << i))
    }

    /// Whether some edge in direction `i` is sensitive, evaluated word-wise.
    pub fn depends_on(&self, i: usize) -> bool {
        assert!(i < self.arity);
        if i < 6 {
            let shift = 1u32 << i;
            let lower = LOWER_HALF[i];
            let valid = if self.arity < 6 {
                bits::low_mask(1 << self.arity)
            } else {
                u64::MAX
            };
            self.words
                .iter()
                .any(|&w| ((w ^ (w >> shift)) & lower & valid) != 0)
        } else {
            let stride = 1usize << (i - 6);
            self.words
                .iter()
                .enumerate()
                .any(|(j, &w)| j & stride == 0 && w != self.words[j | stride])
        }
    }

    /// True iff every variable has at least one sensitive edge.
    pub fn is_nondegenerate(&self) -> bool {
        (0..self.arity).all(|i| self.depends_on(i))
    }

    /// Lowercase hex of all 2^n bits, most significant digit first.
    pub fn to_hex(&self) -> String {
        let digits = hex_digits(self.arity);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nibble = bits::extract(&self.words, 4 * d, 4.min(1 << self.arity));
            out.push(char::from_digit(nibble as u32, 16).expect("nibble"));
        }
        out
    }

    pub fn from_hex(arity: usize, hex: &str) -> Result<Self> {
        check_arity(arity)?;
        let digits = hex_digits(arity);
        if hex.len() != digits {
            return Err(Error::Parse(format!(
                "arity {arity} needs {digits} hex digits, got {}",
                hex.len()
            )));
        }
        let mut table = TruthTable::zeros(arity)?;
        for (pos, c) in hex.chars().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {c:?}")))?
                as u64;
            let d = digits - 1 - pos;
            if arity < 2 && nibble >> (1 << arity) != 0 {
                return Err(Error::Parse(format!(
                    "digit {c:?} sets bits beyond 2^{arity}"
                )));
            }
            bits::deposit(&mut table.words, 4 * d, 4.min(1 << arity), nibble);
        }
        Ok(table)
    }

    /// Serializes in the two-line truth-table file format.
    pub fn to_file_string(&self) -> String {
        format!("n={}\n{}\n", self.arity, self.to_hex())
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty truth-table file".into()))?;
        let arity: usize = header
            .strip_prefix("n=")
            .ok_or_else(|| Error::Parse(format!("expected `n=<arity>`, got {header:?}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad arity: {e}")))?;
        let hex = lines
            .next()
            .ok_or_else(|| Error::Parse("missing hex line".into()))?;
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after hex line".into()));
        }
        TruthTable::from_hex(arity, hex)
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arity <= 8 {
            write!(f, "TruthTable(n={}, {})", self.arity, self.to_hex())
        } else {
            write!(
                f,
                "TruthTable(n={}, {} ones)",
                self.arity,
                self.count_ones()
            )
        }
    }
}

// Bits whose index has bit i clear, within one 64-bit word.
const LOWER_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

fn check_arity(arity: usize) -> Result<()> {
    if arity == 0 {
        return Err(Error::InvalidParameter(
            "truth tables need arity >= 1".into(),
        ));
    }
    if arity > MAX_TABLE_ARITY {
        return Err(Error::CapExceeded {
            what: "truth table",
            arity,
            cap: MAX_TABLE_ARITY,
        });
    }
    Ok(())
}

fn word_count(arity: usize) -> usize {
    bits::words_for(1 << arity)
}

fn hex_digits(arity: usize) -> usize {
    ((1usize << arity) / 4).max(1)
}
