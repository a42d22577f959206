//! Little-endian bit-vector helpers over `u64` words. Bit `i` of a vector is
//! bit `i % 64` of word `i / 64`; variable x_{i+1} lives at bit `i`.

#[inline]
pub fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

#[inline]
pub fn get(words: &[u64], i: usize) -> bool {
    (words[i >> 6] >> (i & 63)) & 1 == 1
}

#[inline]
pub fn set(words: &mut [u64], i: usize, value: bool) {
    let mask = 1u64 << (i & 63);
    if value {
        words[i >> 6] |= mask;
    } else {
        words[i >> 6] &= !mask;
    }
}

#[inline]
pub fn flip(words: &mut [u64], i: usize) {
    words[i >> 6] ^= 1u64 << (i & 63);
}

#[inline]
pub fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Reads `len <= 64` bits starting at bit `start`.
#[inline]
pub fn extract(words: &[u64], start: usize, len: usize) -> u64 {
    debug_assert!(len <= 64);
    if len == 0 {
        return 0;
    }
    let w = start >> 6;
    let off = start & 63;
    let mut out = words[w] >> off;
    if off != 0 && off + len > 64 {
        out |= words[w + 1] << (64 - off);
    }
    out & low_mask(len)
}

/// Copies `len` bits starting at `start` into a fresh word vector.
pub fn extract_vec(words: &[u64], start: usize, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; words_for(len)];
    let mut done = 0;
    while done < len {
        let take = (len - done).min(64);
        out[done >> 6] = extract(words, start + done, take);
        done += take;
    }
    out
}

/// Writes the low `len <= 64` bits of `value` at bit `start`.
#[inline]
pub fn deposit(words: &mut [u64], start: usize, len: usize, value: u64) {
    for j in 0..len {
        set(words, start + j, (value >> j) & 1 == 1);
    }
}

/// Copies `len` bits of `src` (from bit 0) into `dst` at bit `start`.
pub fn deposit_vec(dst: &mut [u64], start: usize, len: usize, src: &[u64]) {
    let mut done = 0;
    while done < len {
        let take = (len - done).min(64);
        deposit(dst, start + done, take, extract(src, done, take));
        done += take;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extract_crosses_word_boundary() {
        let words = [0xF000_0000_0000_0000u64, 0b1011];
        assert_eq!(extract(&words, 60, 8), 0b1011_1111);
        assert_eq!(extract(&words, 0, 64), words[0]);
        assert_eq!(extract(&words, 64, 4), 0b1011);
    }

    #[test]
    fn extract_vec_and_deposit_vec_agree() {
        let src: Vec<u64> = vec![0x0123_4567_89AB_CDEF, 0xFEDC_BA98_7654_3210, 0x55];
        let piece = extract_vec(&src, 37, 100);
        let mut dst = vec![0u64; 3];
        deposit_vec(&mut dst, 37, 100, &piece);
        for i in 0..(64 * 3) {
            let inside = (37..137).contains(&i);
            assert_eq!(get(&dst, i), inside && get(&src, i), "bit {i}");
        }
    }
}
