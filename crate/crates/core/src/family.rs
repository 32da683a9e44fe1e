//! The family `L_k = {a,b}*·a·{a,b}^k`: a `(k+2)`-state NFA, a minimal DFA
//! with `2^{k+1}` states, and a structure `S_k` with `2(k+1)² + k + 3` states.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Alphabet;
use crate::error::Result;
use crate::nfa::{Dfa, Nfa, NfaBuilder};
use crate::qds::{Qds, QdsBuilder};
use crate::reduce::{equiv_fixpoint, quotient};
use crate::trim::trim_qds;

/// Membership predicate for `L_k`: the `(k+1)`-th symbol from the end is `a`.
pub fn in_lk(k: usize, w: &[usize]) -> bool {
    w.len() > k && w[w.len() - 1 - k] == 0
}

/// States `0..=k+1`; `0` loops on both letters and guesses the marked `a`.
pub fn gen_lk_nfa(k: usize) -> Nfa {
    let mut b = NfaBuilder::new(Alphabet::letters(2));
    for q in 0..=k + 1 {
        b.add_state(q.to_string()).unwrap();
    }
    b.add_initial(0);
    b.add_final(k + 1);
    b.add_transition(0, 0, 0);
    b.add_transition(0, 1, 0);
    b.add_transition(0, 0, 1);
    for j in 1..=k {
        b.add_transition(j, 0, j + 1);
        b.add_transition(j, 1, j + 1);
    }
    b.build()
}

fn sk_name(n: usize, j: usize, primed: bool) -> String {
    format!("({n},{j}){}", if primed { "'" } else { "" })
}

/// The structure `S_k` with `k + 3` layers. State `(n, j)` (or its primed
/// copy) lives in layer `j`; γ sends `(n, k+3)` back to `(1,1)` with shift `n`.
/// Primed and unprimed states of layer `k+2` both advance into the shared
/// last layer.
pub fn gen_sk_qds(k: usize) -> Qds {
    let (a, b_) = (0, 1);
    let mut b = QdsBuilder::new(Alphabet::letters(2), k + 3);
    let start = b.add_state(sk_name(1, 1, false), 1).unwrap();
    b.set_initial(start);
    let mut id = std::collections::HashMap::new();
    for j in 2..=k + 2 {
        for primed in [false, true] {
            for n in 1..=k + 1 {
                id.insert((n, j, primed), b.add_state(sk_name(n, j, primed), j).unwrap());
            }
        }
    }
    for n in 1..=k + 2 {
        id.insert((n, k + 3, false), b.add_state(sk_name(n, k + 3, false), k + 3).unwrap());
    }
    for n in 1..=k + 1 {
        b.add_final(id[&(n, k + 2, false)]);
    }
    b.add_final(id[&(1, k + 3, false)]);

    let mut edge = |p: (usize, usize, bool), x: usize, q: (usize, usize, bool)| {
        b.add_delta(id[&p], x, id[&q]).unwrap();
    };
    for primed in [false, true] {
        for j2 in 2..=k + 1 {
            for j1 in 1..=j2 - 2 {
                for x in [a, b_] {
                    edge((j1, j2, primed), x, (j1, j2 + 1, primed));
                }
            }
        }
        for j1 in 1..=k {
            edge((j1, j1 + 1, primed), a, (j1, j1 + 2, primed));
            edge((j1, j1 + 1, primed), b_, (j1 + 1, j1 + 2, primed));
            for x in [a, b_] {
                edge((j1, k + 2, primed), x, (j1, k + 3, false));
            }
        }
        edge((k + 1, k + 2, primed), a, (k + 1, k + 3, false));
        edge((k + 1, k + 2, primed), b_, (k + 2, k + 3, false));
    }
    b.add_delta(start, a, id[&(1, 2, false)]).unwrap();
    b.add_delta(start, b_, id[&(1, 2, true)]).unwrap();
    for n in 1..=k + 2 {
        b.set_gamma(id[&(n, k + 3, false)], Some(start), n).unwrap();
    }
    b.build().unwrap()
}

/// The three recognizers of `L_k`.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub k: usize,
    pub nfa: Nfa,
    pub dfa: Dfa,
    pub sk: Qds,
}

impl FamilyInstance {
    pub fn new(k: usize) -> Self {
        let nfa = gen_lk_nfa(k);
        let dfa = nfa.determinize().minimize();
        FamilyInstance {
            k,
            nfa,
            dfa,
            sk: gen_sk_qds(k),
        }
    }
}

/// One row of the size comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct GapRow {
    pub k: usize,
    pub nfa_states: usize,
    pub sk_states: usize,
    pub dfa_states: usize,
    pub sk_after_trim: usize,
    pub sk_after_reduce: usize,
    pub membership_reads_per_symbol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub rows: Vec<GapRow>,
}

impl GapReport {
    /// First `k` at which `S_k` is smaller than the minimal DFA.
    pub fn crossover(&self) -> Option<usize> {
        self.rows.iter().find(|r| r.sk_states < r.dfa_states).map(|r| r.k)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "k,nfa_states,sk_states,dfa_states,sk_after_trim,sk_after_reduce,membership_reads_per_symbol\n",
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{:.4}\n",
                r.k,
                r.nfa_states,
                r.sk_states,
                r.dfa_states,
                r.sk_after_trim,
                r.sk_after_reduce,
                r.membership_reads_per_symbol
            ));
        }
        out
    }
}

/// Measured sizes for `k = 0..=k_max`. Reads per symbol come from 1000
/// random words of length `10(k+2)` drawn from a generator seeded by `seed`.
pub fn gap_report(k_max: usize, seed: u64) -> Result<GapReport> {
    let mut rows = Vec::new();
    for k in 0..=k_max {
        let inst = FamilyInstance::new(k);
        let trimmed = trim_qds(&inst.sk);
        let reduced = quotient(&trimmed, &equiv_fixpoint(&trimmed))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let len = 10 * (k + 2);
        let mut reads = 0;
        for _ in 0..1000 {
            let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..2)).collect();
            reads += inst.sk.run(&w)?.reads;
        }
        rows.push(GapRow {
            k,
            nfa_states: inst.nfa.num_states(),
            sk_states: inst.sk.len(),
            dfa_states: inst.dfa.num_states(),
            sk_after_trim: trimmed.len(),
            sk_after_reduce: reduced.len(),
            membership_reads_per_symbol: reads as f64 / (1000 * len) as f64,
        });
    }
    Ok(GapReport { rows })
}
