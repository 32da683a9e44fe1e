//! Corpus generators and independent oracles shared by the property suites.
#![allow(dead_code)]

use klqds::analysis::{find_minimal_kl, MinimalKl};
use klqds::family::gen_sk_qds;
use klqds::nfa::{random_dfa, random_nfa};
use klqds::qds::{build_qds, dfa_to_qds, prune_unreachable, random_qds};
use klqds::{samples, words, Nfa, Qds, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn all_words(sigma: usize, max_len: usize) -> Vec<Word> {
    words::words_up_to(sigma, max_len).collect()
}

/// Largest length such that exhaustive enumeration stays near `budget` words.
pub fn exhaustive_len(sigma: usize, cap: usize, budget: usize) -> usize {
    if sigma <= 1 {
        return cap;
    }
    let mut n = 0;
    while n < cap && sigma.pow(n as u32 + 1) <= budget {
        n += 1;
    }
    n
}

/// Plain transition lists, so the oracles below do not reuse library set code.
pub fn table(a: &Nfa) -> Vec<Vec<Vec<usize>>> {
    (0..a.num_states())
        .map(|p| {
            (0..a.alphabet().len())
                .map(|x| a.successors(p, x).iter().collect())
                .collect()
        })
        .collect()
}

fn can_read(t: &[Vec<Vec<usize>>], from: usize, w: &[usize]) -> bool {
    match w.split_first() {
        None => true,
        Some((&x, rest)) => t[from][x].iter().any(|&q| can_read(t, q, rest)),
    }
}

fn reach(t: &[Vec<Vec<usize>>], from: usize, w: &[usize]) -> Vec<usize> {
    let mut cur = vec![from];
    for &x in w {
        let mut next: Vec<usize> = cur.iter().flat_map(|&p| t[p][x].iter().copied()).collect();
        next.sort_unstable();
        next.dedup();
        cur = next;
    }
    cur
}

/// States of `δ(q, w[..i])` from which `w[i..]` can still be read.
pub fn live(t: &[Vec<Vec<usize>>], q: usize, w: &[usize], i: usize) -> Vec<usize> {
    reach(t, q, &w[..i])
        .into_iter()
        .filter(|&p| can_read(t, p, &w[i..]))
        .collect()
}

/// (k,l)-unambiguity straight from the definition.
pub fn brute_kl(a: &Nfa, k: usize, l: usize) -> bool {
    let t = table(a);
    (0..a.num_states())
        .all(|q| words::words_of_len(a.alphabet().len(), k).all(|w| (1..=l).any(|i| live(&t, q, &w, i).len() <= 1)))
}

/// Smallest `k ≤ bound` with brute (k,k)-unambiguity.
pub fn brute_exists(a: &Nfa, bound: usize) -> Option<usize> {
    (1..=bound).find(|&k| brute_kl(a, k, k))
}

pub fn nfa_accepts(a: &Nfa, w: &[usize]) -> bool {
    let t = table(a);
    a.initials()
        .iter()
        .any(|&i| reach(&t, i, w).iter().any(|&q| a.is_final(q)))
}

/// A seeded random (k,l)-unambiguous NFA together with its minimal pair.
pub fn unambiguous_nfa(seed: u64, max_states: usize, sigma: usize) -> Option<(Nfa, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_states);
    let density = rng.gen_range(0.1..0.45);
    let a = random_nfa(rng.gen(), n, sigma, density, 0.4);
    match find_minimal_kl(&a, 4).ok()? {
        MinimalKl::Found { k, l } => Some((a, k, l)),
        _ => None,
    }
}

/// One structure from a mixed corpus: random layered structures, structures
/// built from unambiguous NFAs, DFA embeddings, the fixtures and small S_k.
pub fn corpus_qds(kind: u8, seed: u64) -> Qds {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = |rng: &mut ChaCha8Rng| {
        let m = rng.gen_range(2..=4);
        let sigma = rng.gen_range(1..=3);
        let density = rng.gen_range(0.4..1.0);
        random_qds(rng.gen(), m, 3, sigma, density, 0.35, 0.15)
    };
    match kind % 5 {
        0 => random(&mut rng),
        1 => match unambiguous_nfa(rng.gen(), 4, 2) {
            Some((a, k, l)) => prune_unreachable(&build_qds(&a, k, l).unwrap()),
            None => random(&mut rng),
        },
        2 => {
            let n = rng.gen_range(1..=5);
            let d = random_dfa(rng.gen(), n, rng.gen_range(1..=3), 0.8, 0.4);
            dfa_to_qds(d.as_nfa()).unwrap()
        }
        3 => {
            let all = samples::all_qds();
            all[rng.gen_range(0..all.len())].clone()
        }
        _ => gen_sk_qds(rng.gen_range(0..=2)),
    }
}

pub fn assert_same_language(s: &Qds, t: &Qds, max_len: usize) {
    for w in all_words(s.alphabet().len(), max_len) {
        assert_eq!(s.accepts(&w).unwrap(), t.accepts(&w).unwrap(), "word {w:?}");
    }
}
