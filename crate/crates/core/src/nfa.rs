//! Nondeterministic and deterministic finite automata.
//!
//! States carry opaque string names but are addressed by dense indices in
//! declaration order. Transition functions are partial; the only place that
//! completes an automaton with a sink is [`Dfa::minimize`], and the sink never
//! escapes it.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, SymbolId};
use crate::error::{Error, Result};
use crate::stateset::{StateId, StateSet};

/// An NFA `(Σ, Q, I, F, δ)` without ε-transitions.
#[derive(Debug, Clone)]
pub struct Nfa {
    alphabet: Alphabet,
    names: Vec<String>,
    index: HashMap<String, StateId>,
    initials: Vec<StateId>,
    finals: StateSet,
    succ: Vec<Vec<StateSet>>,
    pred: Vec<Vec<StateSet>>,
}

impl PartialEq for Nfa {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.names == other.names
            && self.initials == other.initials
            && self.finals == other.finals
            && self.succ == other.succ
    }
}

impl Eq for Nfa {}

/// Incremental construction of an [`Nfa`].
#[derive(Debug, Clone)]
pub struct NfaBuilder {
    alphabet: Alphabet,
    names: Vec<String>,
    index: HashMap<String, StateId>,
    initials: BTreeSet<StateId>,
    finals: BTreeSet<StateId>,
    transitions: BTreeSet<(StateId, SymbolId, StateId)>,
}

impl NfaBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        NfaBuilder {
            alphabet,
            names: Vec::new(),
            index: HashMap::new(),
            initials: BTreeSet::new(),
            finals: BTreeSet::new(),
            transitions: BTreeSet::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> Result<StateId> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::Input(format!("invalid state name `{name}`")));
        }
        if self.index.contains_key(&name) {
            return Err(Error::Input(format!("duplicate state `{name}`")));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        Ok(id)
    }

    pub fn state_id(&self, name: &str) -> Result<StateId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn add_initial(&mut self, q: StateId) {
        assert!(q < self.names.len());
        self.initials.insert(q);
    }

    pub fn add_final(&mut self, q: StateId) {
        assert!(q < self.names.len());
        self.finals.insert(q);
    }

    pub fn add_transition(&mut self, p: StateId, a: SymbolId, q: StateId) {
        assert!(p < self.names.len() && q < self.names.len() && a < self.alphabet.len());
        self.transitions.insert((p, a, q));
    }

    pub fn build(self) -> Nfa {
        let n = self.names.len();
        let sigma = self.alphabet.len();
        let mut succ = vec![vec![StateSet::empty(n); sigma]; n];
        let mut pred = vec![vec![StateSet::empty(n); sigma]; n];
        for &(p, a, q) in &self.transitions {
            succ[p][a].insert(q);
            pred[q][a].insert(p);
        }
        Nfa {
            alphabet: self.alphabet,
            names: self.names,
            index: self.index,
            initials: self.initials.into_iter().collect(),
            finals: StateSet::from_iter_with(n, self.finals),
            succ,
            pred,
        }
    }
}

impl Nfa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn state_id(&self, name: &str) -> Result<StateId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn initials(&self) -> &[StateId] {
        &self.initials
    }

    /// The unique initial state; every (k,l) operation requires one.
    pub fn initial(&self) -> Result<StateId> {
        match self.initials.as_slice() {
            [i] => Ok(*i),
            other => Err(Error::Precondition(format!(
                "exactly one initial state required, found {}",
                other.len()
            ))),
        }
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(q)
    }

    pub fn successors(&self, q: StateId, a: SymbolId) -> &StateSet {
        &self.succ[q][a]
    }

    pub fn predecessors(&self, q: StateId, a: SymbolId) -> &StateSet {
        &self.pred[q][a]
    }

    /// All transitions ordered by (source, symbol, target) indices.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, SymbolId, StateId)> + '_ {
        self.succ.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(a, set)| set.iter().map(move |q| (p, a, q)))
        })
    }

    pub fn num_transitions(&self) -> usize {
        self.succ.iter().flatten().map(StateSet::len).sum()
    }

    pub fn empty_set(&self) -> StateSet {
        StateSet::empty(self.num_states())
    }

    pub fn set_of(&self, states: impl IntoIterator<Item = StateId>) -> StateSet {
        StateSet::from_iter_with(self.num_states(), states)
    }

    /// `δ(P, a)`.
    pub fn post(&self, set: &StateSet, a: SymbolId) -> StateSet {
        let mut out = self.empty_set();
        for q in set.iter() {
            out.union_with(&self.succ[q][a]);
        }
        out
    }

    /// `{q | δ(q, a) ∩ P ≠ ∅}`.
    pub fn pre(&self, set: &StateSet, a: SymbolId) -> StateSet {
        let mut out = self.empty_set();
        for q in set.iter() {
            out.union_with(&self.pred[q][a]);
        }
        out
    }

    /// Extended transition function `δ(P, w)`, with `δ(P, ε) = P`.
    pub fn delta_word(&self, set: &StateSet, w: &[SymbolId]) -> Result<StateSet> {
        self.alphabet.check_word(w)?;
        let mut cur = set.clone();
        for &a in w {
            if cur.is_empty() {
                break;
            }
            cur = self.post(&cur, a);
        }
        Ok(cur)
    }

    pub fn accepts(&self, w: &[SymbolId]) -> Result<bool> {
        let start = self.set_of(self.initials.iter().copied());
        Ok(self.delta_word(&start, w)?.intersects(&self.finals))
    }

    pub fn is_deterministic(&self) -> bool {
        self.initials.len() == 1 && self.succ.iter().flatten().all(|s| s.len() <= 1)
    }

    /// States reachable from an initial state.
    pub fn accessible(&self) -> StateSet {
        let start = self.set_of(self.initials.iter().copied());
        self.closure(start, |q, out| {
            for set in &self.succ[q] {
                out.extend(set.iter());
            }
        })
    }

    /// States from which a final state is reachable.
    pub fn coaccessible(&self) -> StateSet {
        self.closure(self.finals.clone(), |q, out| {
            for set in &self.pred[q] {
                out.extend(set.iter());
            }
        })
    }

    fn closure(&self, start: StateSet, next: impl Fn(StateId, &mut Vec<StateId>)) -> StateSet {
        let mut seen = start.clone();
        let mut stack: Vec<StateId> = start.iter().collect();
        let mut buf = Vec::new();
        while let Some(q) = stack.pop() {
            buf.clear();
            next(q, &mut buf);
            for &r in &buf {
                if seen.insert(r) {
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// The sub-automaton on `keep`, preserving declaration order.
    pub fn restrict(&self, keep: &StateSet) -> Nfa {
        let mut b = NfaBuilder::new(self.alphabet.clone());
        let mut map = vec![None; self.num_states()];
        for q in keep.iter() {
            map[q] = Some(b.add_state(self.names[q].clone()).unwrap());
        }
        for &i in &self.initials {
            if let Some(i) = map[i] {
                b.add_initial(i);
            }
        }
        for f in self.finals.iter() {
            if let Some(f) = map[f] {
                b.add_final(f);
            }
        }
        for (p, a, q) in self.transitions() {
            if let (Some(p), Some(q)) = (map[p], map[q]) {
                b.add_transition(p, a, q);
            }
        }
        b.build()
    }

    /// Keeps only states that are both accessible and coaccessible.
    pub fn trim(&self) -> Nfa {
        let keep = self.accessible().intersection(&self.coaccessible());
        self.restrict(&keep)
    }

    /// Accessible part of the subset construction. Subset states are named
    /// `{m1,m2,...}` with member names sorted, and the empty set is omitted.
    pub fn determinize(&self) -> Dfa {
        let start = self.set_of(self.initials.iter().copied());
        let mut subsets = vec![start.clone()];
        let mut seen: HashMap<StateSet, StateId> = HashMap::from([(start, 0)]);
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([0]);
        while let Some(s) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                let t = self.post(&subsets[s], a);
                if t.is_empty() {
                    continue;
                }
                let id = *seen.entry(t.clone()).or_insert_with(|| {
                    subsets.push(t);
                    queue.push_back(subsets.len() - 1);
                    subsets.len() - 1
                });
                edges.push((s, a, id));
            }
        }
        let mut b = NfaBuilder::new(self.alphabet.clone());
        for set in &subsets {
            let mut members: Vec<&str> = set.iter().map(|q| self.name(q)).collect();
            members.sort_unstable();
            b.add_state(format!("{{{}}}", members.join(","))).unwrap();
        }
        b.add_initial(0);
        for (id, set) in subsets.iter().enumerate() {
            if set.intersects(&self.finals) {
                b.add_final(id);
            }
        }
        for (p, a, q) in edges {
            b.add_transition(p, a, q);
        }
        Dfa(b.build())
    }
}

/// An [`Nfa`] with one initial state and at most one successor per state and symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa(Nfa);

impl TryFrom<Nfa> for Dfa {
    type Error = Error;

    fn try_from(nfa: Nfa) -> Result<Self> {
        if nfa.is_deterministic() {
            Ok(Dfa(nfa))
        } else {
            Err(Error::Precondition("automaton is not deterministic".into()))
        }
    }
}

impl Dfa {
    pub fn as_nfa(&self) -> &Nfa {
        &self.0
    }

    pub fn into_nfa(self) -> Nfa {
        self.0
    }

    pub fn num_states(&self) -> usize {
        self.0.num_states()
    }

    pub fn initial(&self) -> StateId {
        self.0.initials[0]
    }

    pub fn next(&self, q: StateId, a: SymbolId) -> Option<StateId> {
        self.0.succ[q][a].first()
    }

    pub fn run(&self, w: &[SymbolId]) -> Result<Option<StateId>> {
        self.0.alphabet.check_word(w)?;
        Ok(w.iter().try_fold(self.initial(), |q, &a| self.next(q, a)))
    }

    pub fn accepts(&self, w: &[SymbolId]) -> Result<bool> {
        Ok(self.run(w)?.is_some_and(|q| self.0.is_final(q)))
    }

    /// Minimal DFA for the same language.
    ///
    /// The input is completed with a sink and refined by Moore's algorithm;
    /// dead classes (the sink's) are then removed, so the result is partial and
    /// its state count excludes the sink. States are renamed `0, 1, ...` in
    /// breadth-first order from the initial state, which makes the output
    /// canonical for its language.
    pub fn minimize(&self) -> Dfa {
        let nfa = &self.0;
        let sigma = nfa.alphabet.len();
        let reach = nfa.accessible();
        let live: Vec<StateId> = reach.iter().collect();
        let n = live.len();
        let sink = n;
        let mut local = vec![usize::MAX; nfa.num_states()];
        for (i, &q) in live.iter().enumerate() {
            local[q] = i;
        }
        let next: Vec<Vec<usize>> = (0..=n)
            .map(|i| {
                (0..sigma)
                    .map(|a| {
                        if i == sink {
                            sink
                        } else {
                            self.next(live[i], a).map_or(sink, |t| local[t])
                        }
                    })
                    .collect()
            })
            .collect();
        let is_final = |i: usize| i != sink && nfa.is_final(live[i]);

        let mut class: Vec<usize> = (0..=n).map(|i| usize::from(is_final(i))).collect();
        let mut count = class.iter().collect::<BTreeSet<_>>().len();
        loop {
            let mut sigs: HashMap<Vec<usize>, usize> = HashMap::new();
            let refined: Vec<usize> = (0..=n)
                .map(|i| {
                    let mut sig = Vec::with_capacity(sigma + 1);
                    sig.push(class[i]);
                    sig.extend(next[i].iter().map(|&t| class[t]));
                    let fresh = sigs.len();
                    *sigs.entry(sig).or_insert(fresh)
                })
                .collect();
            let new_count = sigs.len();
            class = refined;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        let dead = class[sink];
        let init = class[local[self.initial()]];
        let rep: HashMap<usize, usize> = (0..=n).rev().map(|i| (class[i], i)).collect();
        let mut order: HashMap<usize, StateId> = HashMap::from([(init, 0)]);
        let mut queue = VecDeque::from([init]);
        let mut edges = Vec::new();
        while let Some(c) = queue.pop_front() {
            let r = rep[&c];
            for a in 0..sigma {
                let t = class[next[r][a]];
                if t == dead {
                    continue;
                }
                let id = match order.get(&t) {
                    Some(&id) => id,
                    None => {
                        let id = order.len();
                        order.insert(t, id);
                        queue.push_back(t);
                        id
                    }
                };
                edges.push((order[&c], a, id));
            }
        }
        let mut by_id = vec![0; order.len()];
        for (&c, &id) in &order {
            by_id[id] = c;
        }
        let mut b = NfaBuilder::new(nfa.alphabet.clone());
        for (id, &c) in by_id.iter().enumerate() {
            let q = b.add_state(id.to_string()).unwrap();
            if is_final(rep[&c]) {
                b.add_final(q);
            }
        }
        b.add_initial(0);
        for (p, a, q) in edges {
            b.add_transition(p, a, q);
        }
        Dfa(b.build())
    }
}

/// Seeded random NFA over the letters `a, b, ...` with states `0..n` and
/// initial state `0`. Each state is final with probability `final_prob` and
/// each triple `(p, a, q)` is present with probability `density`.
pub fn random_nfa(seed: u64, n: usize, alphabet_size: usize, density: f64, final_prob: f64) -> Nfa {
    assert!(n >= 1 && alphabet_size >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = NfaBuilder::new(Alphabet::letters(alphabet_size));
    for q in 0..n {
        b.add_state(q.to_string()).unwrap();
    }
    b.add_initial(0);
    for q in 0..n {
        if rng.gen_bool(final_prob) {
            b.add_final(q);
        }
    }
    for p in 0..n {
        for a in 0..alphabet_size {
            for q in 0..n {
                if rng.gen_bool(density) {
                    b.add_transition(p, a, q);
                }
            }
        }
    }
    b.build()
}

/// Seeded random partial DFA: each `(p, a)` gets a uniformly chosen
/// successor with probability `density`.
pub fn random_dfa(seed: u64, n: usize, alphabet_size: usize, density: f64, final_prob: f64) -> Dfa {
    assert!(n >= 1 && alphabet_size >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = NfaBuilder::new(Alphabet::letters(alphabet_size));
    for q in 0..n {
        b.add_state(q.to_string()).unwrap();
    }
    b.add_initial(0);
    for q in 0..n {
        if rng.gen_bool(final_prob) {
            b.add_final(q);
        }
    }
    for p in 0..n {
        for a in 0..alphabet_size {
            if rng.gen_bool(density) {
                let q = rng.gen_range(0..n);
                b.add_transition(p, a, q);
            }
        }
    }
    Dfa(b.build())
}
