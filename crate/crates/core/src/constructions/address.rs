use crate::bits;
use crate::codes::HammingCode;
use crate::constructions::{ConstructionMeta, Sections};
use crate::error::{Error, Result};
use crate::function::{BooleanFunction, CertificateCollection, Node, PartialAssignment};

/// Total message bits allowed across all codes of one address function; the
/// data section has 2^this many bits.
const MAX_DATA_LOG2: usize = 32;

/// Certificates are attached to the metadata only up to this many.
const MAX_LISTED_CERTIFICATES: u64 = 1 << 12;

/// Address decoder for `chaf_{r₁,…,r_l}` (and `haf_r` when l = 1): the
/// input starts with one codeword per code, followed by t = ∏|H_{rᵢ}| data
/// bits. The message tuple selects a data bit by mixed-radix index, the
/// first code being most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeAddress {
    codes: Vec<HammingCode>,
    codeword_len: usize,
    data_len: u64,
}

impl CodeAddress {
    pub fn new(rs: &[u32]) -> Result<Self> {
        if rs.is_empty() {
            return Err(Error::InvalidParameter("at least one Hamming code is required".into()));
        }
        let codes = rs.iter().map(|&r| HammingCode::new(r)).collect::<Result<Vec<_>>>()?;
        let message_bits: usize = codes.iter().map(HammingCode::message_len).sum();
        if message_bits > MAX_DATA_LOG2 {
            return Err(Error::Overflow(format!(
                "data section of 2^{message_bits} bits exceeds 2^{MAX_DATA_LOG2}"
            )));
        }
        let codeword_len = codes.iter().map(HammingCode::codeword_len).sum();
        Ok(CodeAddress {
            codes,
            codeword_len,
            data_len: 1u64 << message_bits,
        })
    }

    pub fn codes(&self) -> &[HammingCode] {
        &self.codes
    }

    pub fn codeword_len(&self) -> usize {
        self.codeword_len
    }

    pub fn data_len(&self) -> u64 {
        self.data_len
    }

    pub fn arity(&self) -> usize {
        self.codeword_len + self.data_len as usize
    }

    /// 0-based data index addressed by the codeword section, or `None` if
    /// some block is not a codeword.
    #[inline]
    pub fn address_of(&self, words: &[u64]) -> Option<u64> {
        let mut offset = 0;
        let mut index = 0u64;
        for code in &self.codes {
            let k = code.codeword_len();
            let w = bits::extract(words, offset, k);
            if !code.is_codeword(w) {
                return None;
            }
            index = index * code.size() + code.message_of(w);
            offset += k;
        }
        Some(index)
    }

    #[inline]
    pub fn eval_words(&self, words: &[u64]) -> bool {
        match self.address_of(words) {
            Some(i) => bits::get(words, self.codeword_len + i as usize),
            None => false,
        }
    }

    /// Per-code messages of the 0-based data index (mixed radix, first code
    /// most significant).
    pub fn messages_of_index(&self, mut index: u64) -> Vec<u64> {
        let mut out = vec![0; self.codes.len()];
        for (slot, code) in out.iter_mut().zip(&self.codes).rev() {
            *slot = index % code.size();
            index /= code.size();
        }
        out
    }

    /// The 1-certificate p_m for the 1-based message index m: every codeword
    /// fixed, a 1 at data position m, everything else free.
    pub fn certificate(&self, m: u64) -> Result<PartialAssignment> {
        if m == 0 || m > self.data_len {
            return Err(Error::InvalidParameter(format!(
                "message index {m} outside 1..={}",
                self.data_len
            )));
        }
        let mut p = PartialAssignment::free(self.arity());
        let mut offset = 0;
        for (code, msg) in self.codes.iter().zip(self.messages_of_index(m - 1)) {
            let w = code.encode_word(msg);
            for i in 0..code.codeword_len() {
                p.fix(offset + i, (w >> i) & 1 == 1);
            }
            offset += code.codeword_len();
        }
        p.fix(self.codeword_len + (m - 1) as usize, true);
        Ok(p)
    }

    pub fn certificates(&self) -> Vec<PartialAssignment> {
        (1..=self.data_len)
            .map(|m| self.certificate(m).expect("index in range"))
            .collect()
    }
}

/// Hamming address function haf_r.
pub fn haf(r: u32) -> Result<BooleanFunction> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("haf needs r >= 2, got {r}")));
    }
    let mut f = chaf(&[r])?;
    if let Some(meta) = f.meta().cloned() {
        f = f.with_meta(ConstructionMeta {
            family: format!("haf({r})"),
            ..meta
        });
    }
    Ok(f)
}

/// Conjunction Hamming address function chaf_{r₁,…,r_l}.
pub fn chaf(rs: &[u32]) -> Result<BooleanFunction> {
    let code = CodeAddress::new(rs)?;
    let l = rs.len() as u64;
    let s1: u64 = rs.iter().map(|&r| 1u64 << r).sum::<u64>() - l + 1;
    let certificates = (code.data_len() <= MAX_LISTED_CERTIFICATES)
        .then(|| CertificateCollection::new(true, code.certificates(), true));
    let meta = ConstructionMeta {
        predicted_s0: Some(1),
        predicted_s1: Some(s1),
        predicted_s: Some(s1),
        predicted_lambda_sq: Some(s1),
        sections: Some(Sections {
            codeword_len: code.codeword_len(),
            data_len: code.data_len() as usize,
        }),
        certificates,
        certificates_validated: Some(true),
        ..ConstructionMeta::new(&format!("chaf({})", join(rs)))
    };
    let arity = code.arity();
    Ok(BooleanFunction::from_node(arity, Node::CodeAddress(code), Some(meta)))
}

/// Plain address function: k address bits select one of 2^k data bits.
pub fn address_fn(k: usize) -> Result<BooleanFunction> {
    if k == 0 {
        return Err(Error::InvalidParameter("address function needs k >= 1".into()));
    }
    if k > MAX_DATA_LOG2 {
        return Err(Error::Overflow(format!("address width {k} too large")));
    }
    let meta = ConstructionMeta {
        predicted_s: Some(k as u64 + 1),
        sections: Some(Sections {
            codeword_len: k,
            data_len: 1 << k,
        }),
        ..ConstructionMeta::new(&format!("address({k})"))
    };
    Ok(BooleanFunction::from_node(
        k + (1 << k),
        Node::Address { address_bits: k },
        Some(meta),
    ))
}

/// Monotone address function maf_k with C(k, ⌊k/2⌋) data bits, indexed by
/// the colexicographic rank of the weight-⌊k/2⌋ address.
pub fn maf(k: usize) -> Result<BooleanFunction> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("maf needs k >= 2, got {k}")));
    }
    if k > 40 {
        return Err(Error::Overflow(format!("maf address width {k} too large")));
    }
    let data = binomial(k as u64, (k / 2) as u64);
    let meta = ConstructionMeta {
        predicted_s: Some(k.div_ceil(2) as u64 + 1),
        ..ConstructionMeta::new(&format!("maf({k})"))
    };
    Ok(BooleanFunction::from_node(
        k + data as usize,
        Node::MonotoneAddress { address_bits: k },
        Some(meta),
    ))
}

pub(crate) fn eval_monotone_address(k: usize, words: &[u64]) -> bool {
    let x = bits::extract(words, 0, k);
    let w = x.count_ones() as usize;
    let half = k / 2;
    match w.cmp(&half) {
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => bits::get(words, k + colex_rank(x) as usize),
    }
}

/// Colexicographic rank of `x` among words of the same weight:
/// Σ_j C(p_j, j + 1) over its set positions p₀ < p₁ < ….
pub fn colex_rank(x: u64) -> u64 {
    let mut rank = 0;
    let mut rest = x;
    let mut j = 0u64;
    while rest != 0 {
        let p = rest.trailing_zeros() as u64;
        j += 1;
        rank += binomial(p, j);
        rest &= rest - 1;
    }
    rank
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn join(rs: &[u32]) -> String {
    rs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}
