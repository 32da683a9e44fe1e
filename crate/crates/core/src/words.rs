//! Enumeration of words over an alphabet of a given size, in length-then-lexicographic order.

use crate::alphabet::{SymbolId, Word};

/// All words of exactly length `len` over `{0..size}`, lexicographic.
pub fn words_of_len(size: usize, len: usize) -> impl Iterator<Item = Word> {
    let total = if size == 0 && len > 0 { 0 } else { size.pow(len as u32) };
    (0..total).map(move |r| unrank(size, len, r))
}

/// The word of length `len` with the given [`rank`].
pub fn unrank(size: usize, len: usize, mut r: usize) -> Word {
    let mut w = vec![0; len];
    for i in (0..len).rev() {
        w[i] = r % size;
        r /= size;
    }
    w
}

/// All words of length at most `max_len`, shortest first.
pub fn words_up_to(size: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |n| words_of_len(size, n))
}

/// Rank of `w` among the words of its length (inverse of [`words_of_len`]).
pub fn rank(size: usize, w: &[SymbolId]) -> usize {
    w.iter().fold(0, |r, &a| r * size + a)
}
