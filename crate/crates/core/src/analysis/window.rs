use crate::alphabet::{SymbolId, Word};
use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::stateset::{StateId, StateSet};
use crate::words::{rank, unrank, words_of_len};

use super::{check_kl, exists_kl};

/// `Live[r]`: states with an outgoing path of length `r`.
fn live_sets(a: &Nfa, k: usize) -> Vec<StateSet> {
    let mut live = vec![StateSet::full(a.num_states())];
    for r in 1..=k {
        let mut next = a.empty_set();
        for sym in 0..a.alphabet().len() {
            next.union_with(&a.pre(&live[r - 1], sym));
        }
        live.push(next);
    }
    live
}

/// `B_i = {q' | δ(q', w[i..]) ≠ ∅}` for `i = 0..=k`.
fn backward_sets(a: &Nfa, w: &[SymbolId]) -> Vec<StateSet> {
    let k = w.len();
    let mut back = vec![StateSet::full(a.num_states()); k + 1];
    for i in (0..k).rev() {
        back[i] = a.pre(&back[i + 1], w[i]);
    }
    back
}

/// First `(q, w)` in state order then lexicographic word order such that every
/// `i ∈ 1..=l` leaves at least two live states, or `None` when `a` is
/// (k,l)-unambiguous.
pub fn kl_witness(a: &Nfa, k: usize, l: usize) -> Result<Option<(StateId, Word)>> {
    check_kl(k, l)?;
    a.initial()?;
    let live = live_sets(a, k);
    let sigma = a.alphabet().len();
    let mut fwd: Vec<StateSet> = vec![a.empty_set(); k + 1];
    let mut word: Word = vec![0; k];

    for q in 0..a.num_states() {
        fwd[0] = StateSet::singleton(a.num_states(), q);
        // Iterative DFS: `choice[d]` is the next symbol to try at depth d.
        let mut choice = vec![0usize; k + 1];
        let mut depth = 0;
        loop {
            if depth == k {
                let back = backward_sets(a, &word);
                if (1..=l).all(|i| fwd[i].intersection_len_upto(&back[i], 2) >= 2) {
                    return Ok(Some((q, word)));
                }
                depth -= 1;
                continue;
            }
            if choice[depth] == sigma {
                if depth == 0 {
                    break;
                }
                depth -= 1;
                continue;
            }
            let sym = choice[depth];
            choice[depth] += 1;
            word[depth] = sym;
            let next = a.post(&fwd[depth], sym);
            let i = depth + 1;
            if i <= l && next.intersection_len_upto(&live[k - i], 2) <= 1 {
                continue;
            }
            fwd[i] = next;
            depth = i;
            if depth < k {
                choice[depth] = 0;
            }
        }
    }
    Ok(None)
}

/// Checks the (k,l)-unambiguity definition by enumerating `Q × Σ^k`.
pub fn is_kl_unambiguous(a: &Nfa, k: usize, l: usize) -> Result<bool> {
    Ok(kl_witness(a, k, l)?.is_none())
}

/// `(StepIndex, StepSucc)` for one state and window word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StepEntry {
    pub index: usize,
    pub successor: Option<StateId>,
}

/// The largest `j ≤ l` at which at most one live state remains, and that
/// state (if any).
pub fn step(a: &Nfa, k: usize, l: usize, q: StateId, w: &[SymbolId]) -> Result<StepEntry> {
    check_kl(k, l)?;
    a.alphabet().check_word(w)?;
    if w.len() != k {
        return Err(Error::Input(format!(
            "window word has length {}, expected {k}",
            w.len()
        )));
    }
    if q >= a.num_states() {
        return Err(Error::UnknownState(format!("#{q}")));
    }
    let back = backward_sets(a, w);
    let mut fwd = vec![StateSet::singleton(a.num_states(), q)];
    for (i, &sym) in w.iter().enumerate().take(l) {
        let next = a.post(&fwd[i], sym);
        fwd.push(next);
    }
    for j in (1..=l).rev() {
        let live = fwd[j].intersection(&back[j]);
        if live.len() <= 1 {
            return Ok(StepEntry {
                index: j,
                successor: live.first(),
            });
        }
    }
    Err(Error::NoStepIndex {
        k,
        l,
        state: a.name(q).to_string(),
        word: a.alphabet().format_word(w),
    })
}

/// [`step`] tabulated over `Q × Σ^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepTable {
    k: usize,
    l: usize,
    alphabet_size: usize,
    entries: Vec<StepEntry>,
}

impl StepTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, q: StateId, w: &[SymbolId]) -> StepEntry {
        assert_eq!(w.len(), self.k);
        self.entries[q * self.alphabet_size.pow(self.k as u32) + rank(self.alphabet_size, w)]
    }

    /// Rows `(state, word, entry)` in state order, then lexicographic word order.
    pub fn rows(&self) -> impl Iterator<Item = (StateId, Word, StepEntry)> + '_ {
        let per_state = self.alphabet_size.pow(self.k as u32);
        self.entries.iter().enumerate().map(move |(n, &e)| {
            let q = n / per_state;
            let w = unrank(self.alphabet_size, self.k, n % per_state);
            (q, w, e)
        })
    }
}

pub fn step_table(a: &Nfa, k: usize, l: usize) -> Result<StepTable> {
    check_kl(k, l)?;
    let sigma = a.alphabet().len();
    let mut entries = Vec::with_capacity(a.num_states() * sigma.pow(k as u32));
    for q in 0..a.num_states() {
        for w in words_of_len(sigma, k) {
            entries.push(step(a, k, l, q, &w)?);
        }
    }
    Ok(StepTable {
        k,
        l,
        alphabet_size: sigma,
        entries,
    })
}

/// Result of [`find_minimal_kl`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalKl {
    /// Smallest `k`, then smallest `l`.
    Found { k: usize, l: usize },
    /// No pair exists at all.
    NoneExists,
    /// A pair exists but none was found with `k ≤ k_max`.
    Exhausted { k_max: usize },
}

/// `|Q|·(|Q|−1)+1`, the default search bound.
pub fn default_k_max(a: &Nfa) -> usize {
    let n = a.num_states();
    n * n.saturating_sub(1) + 1
}

/// Lexicographically smallest `(k, l)` with `k ≤ k_max` for which `a` is
/// (k,l)-unambiguous.
pub fn find_minimal_kl(a: &Nfa, k_max: usize) -> Result<MinimalKl> {
    if !exists_kl(a)?.exists {
        return Ok(MinimalKl::NoneExists);
    }
    for k in 1..=k_max {
        // (k,l) ⇒ (k,k), so (k,k) failing rules out the whole row.
        if !is_kl_unambiguous(a, k, k)? {
            continue;
        }
        for l in 1..=k {
            if is_kl_unambiguous(a, k, l)? {
                return Ok(MinimalKl::Found { k, l });
            }
        }
    }
    Ok(MinimalKl::Exhausted { k_max })
}
