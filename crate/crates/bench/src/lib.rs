//! Seeded workloads shared by the benchmarks.

use klqds::analysis::{find_minimal_kl, MinimalKl};
use klqds::nfa::random_nfa;
use klqds::{Nfa, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `count` words of exactly `len` symbols over `{0..sigma}`.
pub fn random_words(seed: u64, count: usize, len: usize, sigma: usize) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..len).map(|_| rng.gen_range(0..sigma)).collect())
        .collect()
}

/// First NFA from the seeded stream with `n` states over two letters that
/// has some (k,l) pair with `k ≤ k_max`, together with that pair.
pub fn unambiguous_nfa(seed: u64, n: usize, k_max: usize) -> (Nfa, usize, usize) {
    (seed..)
        .find_map(|s| {
            let a = random_nfa(s, n, 2, 0.25, 0.4);
            match find_minimal_kl(&a, k_max).ok()? {
                MinimalKl::Found { k, l } if k >= 2 => Some((a, k, l)),
                _ => None,
            }
        })
        .expect("the seeded stream is infinite")
}
