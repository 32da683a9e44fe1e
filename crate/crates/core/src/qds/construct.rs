use std::collections::VecDeque;

use crate::analysis::step_table;
use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::stateset::StateSet;
use crate::words::{rank, words_of_len};

use super::{Qds, QdsBuilder};

/// The structure associated with a (k,l)-unambiguous NFA.
///
/// Layer `j` holds the pairs `(q, w)` with `|w| = j − 1`, named `q|w`
/// (`q|_` for ε). δ appends a symbol, and on the last layer
/// `γ(q, w) = ((StepSucc, ε), StepIndex)` for the window `w`. The step table
/// is computed first, so a violated precondition surfaces as
/// [`Error::NoStepIndex`] naming the offending state and word.
pub fn build_qds(a: &Nfa, k: usize, l: usize) -> Result<Qds> {
    let init = a.initial()?;
    let table = step_table(a, k, l)?;
    let sigma = a.alphabet().len();
    let n = a.num_states();
    let al = a.alphabet();

    let mut b = QdsBuilder::new(al.clone(), k + 1);
    // ids[j][q * |Σ|^j + rank(w)] for |w| = j
    let mut ids: Vec<Vec<usize>> = Vec::with_capacity(k + 1);
    let mut sets: Vec<StateSet> = Vec::new();
    for j in 0..=k {
        let per = sigma.pow(j as u32);
        let mut layer_ids = Vec::with_capacity(n * per);
        let mut layer_sets = Vec::with_capacity(n * per);
        for q in 0..n {
            for w in words_of_len(sigma, j) {
                let id = b.add_state(format!("{}|{}", a.name(q), al.token_word(&w)), j + 1)?;
                let set = match w.split_last() {
                    None => StateSet::singleton(n, q),
                    Some((&x, prefix)) => {
                        let parent = q * sigma.pow(j as u32 - 1) + rank(sigma, prefix);
                        a.post(&sets[parent], x)
                    }
                };
                if set.intersects(a.finals()) {
                    b.add_final(id);
                }
                layer_ids.push(id);
                layer_sets.push(set);
            }
        }
        ids.push(layer_ids);
        sets = layer_sets;
    }
    b.set_initial(ids[0][init]);

    for j in 0..k {
        let per = sigma.pow(j as u32);
        for q in 0..n {
            for r in 0..per {
                for x in 0..sigma {
                    b.add_delta(ids[j][q * per + r], x, ids[j + 1][(q * per + r) * sigma + x])?;
                }
            }
        }
    }
    let per = sigma.pow(k as u32);
    for q in 0..n {
        for w in words_of_len(sigma, k) {
            let e = table.get(q, &w);
            let src = ids[k][q * per + rank(sigma, &w)];
            b.set_gamma(src, e.successor.map(|s| ids[0][s]), e.index)?;
        }
    }
    b.build()
}

/// Expected state count of [`build_qds`]: `|Q|·(|Σ|^{k+1} − 1)/(|Σ| − 1)`,
/// or `|Q|·(k+1)` over a unary alphabet.
pub fn build_qds_size(num_states: usize, alphabet_size: usize, k: usize) -> usize {
    match alphabet_size {
        0 => num_states,
        1 => num_states * (k + 1),
        s => num_states * (s.pow(k as u32 + 1) - 1) / (s - 1),
    }
}

/// Restricts `s` to the states reachable from the initial state through δ
/// and defined γ edges.
pub fn prune_unreachable(s: &Qds) -> Qds {
    let mut seen = vec![false; s.len()];
    seen[s.initial()] = true;
    let mut queue = VecDeque::from([s.initial()]);
    while let Some(q) = queue.pop_front() {
        let next = (0..s.alphabet().len())
            .filter_map(|a| s.delta(q, a))
            .chain(s.gamma(q).and_then(|g| g.target));
        for t in next.collect::<Vec<_>>() {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    s.rebuild(&seen, |_, _, _| true, |q| s.gamma(q).unwrap(), |q| s.is_final(q))
}

/// Embeds a DFA as a two-layer structure reading one symbol per window:
/// `(q,1) -a-> (δ(q,a),2)` and `γ(q,2) = ((q,1), 1)`, with states named
/// `q|1` and `q|2`.
pub fn dfa_to_qds(d: &Nfa) -> Result<Qds> {
    if !d.is_deterministic() {
        return Err(Error::Precondition("automaton is not deterministic".into()));
    }
    let mut b = QdsBuilder::new(d.alphabet().clone(), 2);
    let n = d.num_states();
    let first: Vec<_> = (0..n)
        .map(|q| b.add_state(format!("{}|1", d.name(q)), 1))
        .collect::<Result<_>>()?;
    let second: Vec<_> = (0..n)
        .map(|q| b.add_state(format!("{}|2", d.name(q)), 2))
        .collect::<Result<_>>()?;
    b.set_initial(first[d.initial()?]);
    for q in d.finals().iter() {
        b.add_final(first[q]);
        b.add_final(second[q]);
    }
    for (p, a, q) in d.transitions() {
        b.add_delta(first[p], a, second[q])?;
    }
    for q in 0..n {
        b.set_gamma(second[q], Some(first[q]), 1)?;
    }
    b.build()
}

/// Seeded random structure over letters `a, b, ...` with `m` layers of
/// `1..=max_per_layer` states each, named `j.i`. Each `(p, a)` gets a
/// uniformly chosen successor with probability `density`; γ shifts are drawn
/// from `1..m` and γ targets are ⊥ with probability `bottom_prob`.
pub fn random_qds(
    seed: u64,
    m: usize,
    max_per_layer: usize,
    alphabet_size: usize,
    density: f64,
    final_prob: f64,
    bottom_prob: f64,
) -> Qds {
    use rand::{Rng, SeedableRng};
    assert!(m >= 2 && max_per_layer >= 1);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut b = QdsBuilder::new(crate::alphabet::Alphabet::letters(alphabet_size), m);
    let layers: Vec<Vec<usize>> = (1..=m)
        .map(|j| {
            let n = rng.gen_range(1..=max_per_layer);
            (0..n).map(|i| b.add_state(format!("{j}.{i}"), j).unwrap()).collect()
        })
        .collect();
    b.set_initial(layers[0][0]);
    for layer in &layers {
        for &q in layer {
            if rng.gen_bool(final_prob) {
                b.add_final(q);
            }
        }
    }
    for j in 0..m - 1 {
        for &p in &layers[j] {
            for a in 0..alphabet_size {
                if rng.gen_bool(density) {
                    let q = layers[j + 1][rng.gen_range(0..layers[j + 1].len())];
                    b.add_delta(p, a, q).unwrap();
                }
            }
        }
    }
    for &p in &layers[m - 1] {
        let target = (!rng.gen_bool(bottom_prob)).then(|| layers[0][rng.gen_range(0..layers[0].len())]);
        let shift = rng.gen_range(1..m);
        b.set_gamma(p, target, shift).unwrap();
    }
    b.build().unwrap()
}
