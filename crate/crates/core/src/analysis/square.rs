use std::collections::{HashMap, VecDeque};

use crate::alphabet::SymbolId;
use crate::error::Result;
use crate::graph::tarjan_scc;
use crate::nfa::Nfa;
use crate::stateset::StateId;

/// A state of the square automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairState {
    pub first: StateId,
    pub second: StateId,
}

impl PairState {
    pub fn new(first: StateId, second: StateId) -> Self {
        PairState { first, second }
    }

    pub fn is_diagonal(&self) -> bool {
        self.first == self.second
    }
}

/// Product of an NFA with itself, restricted to the part reachable from its seeds.
#[derive(Debug, Clone)]
pub struct SquareAutomaton {
    states: Vec<PairState>,
    index: HashMap<PairState, usize>,
    adj: Vec<Vec<(SymbolId, usize)>>,
}

impl SquareAutomaton {
    /// Explores `δ'((q1,q2),a) = δ(q1,a) × δ(q2,a)` breadth-first from `seeds`.
    pub fn explore(a: &Nfa, seeds: impl IntoIterator<Item = PairState>) -> Self {
        let mut sq = SquareAutomaton {
            states: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        };
        let mut queue = VecDeque::new();
        for s in seeds {
            if sq.intern(s) {
                queue.push_back(sq.states.len() - 1);
            }
        }
        while let Some(v) = queue.pop_front() {
            let PairState { first, second } = sq.states[v];
            for sym in 0..a.alphabet().len() {
                for p in a.successors(first, sym).iter() {
                    for q in a.successors(second, sym).iter() {
                        let t = PairState::new(p, q);
                        if sq.intern(t) {
                            queue.push_back(sq.states.len() - 1);
                        }
                        let ti = sq.index[&t];
                        sq.adj[v].push((sym, ti));
                    }
                }
            }
        }
        sq
    }

    fn intern(&mut self, s: PairState) -> bool {
        if self.index.contains_key(&s) {
            return false;
        }
        self.index.insert(s, self.states.len());
        self.states.push(s);
        self.adj.push(Vec::new());
        true
    }

    pub fn states(&self) -> &[PairState] {
        &self.states
    }

    pub fn contains(&self, s: PairState) -> bool {
        self.index.contains_key(&s)
    }

    pub fn transitions(&self) -> impl Iterator<Item = (PairState, SymbolId, PairState)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(move |(v, out)| out.iter().map(move |&(a, t)| (self.states[v], a, self.states[t])))
    }

    pub fn num_transitions(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
}

/// Accessible part of the square automaton from `(i, i)`.
pub fn square_automaton(a: &Nfa) -> Result<SquareAutomaton> {
    let i = a.initial()?;
    Ok(SquareAutomaton::explore(a, [PairState::new(i, i)]))
}

/// A cycle `states[0] -symbols[0]-> states[1] -> ... -symbols[r-1]-> states[0]`
/// of non-diagonal pair states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCertificate {
    pub states: Vec<PairState>,
    pub symbols: Vec<SymbolId>,
}

impl CycleCertificate {
    /// Replays the cycle under the product rule.
    pub fn is_valid_for(&self, a: &Nfa) -> bool {
        let r = self.states.len();
        r > 0
            && self.symbols.len() == r
            && self.states.iter().all(|s| !s.is_diagonal())
            && (0..r).all(|j| {
                let (s, t, x) = (self.states[j], self.states[(j + 1) % r], self.symbols[j]);
                a.successors(s.first, x).contains(t.first) && a.successors(s.second, x).contains(t.second)
            })
    }
}

/// Outcome of [`exists_kl`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KlReport {
    pub exists: bool,
    /// When a pair exists: `(k, k)` for the smallest `k` such that
    /// `(k, k)`-unambiguity holds.
    pub witness_pair: Option<(usize, usize)>,
    /// When no pair exists: a diagonal-free cycle.
    pub certificate: Option<CycleCertificate>,
}

/// Decides whether some `(k, l)` makes `a` (k,l)-unambiguous.
///
/// A pair exists iff the square automaton has no cycle avoiding the diagonal.
/// Exploration starts from every diagonal state `(q, q)`, which coincides with
/// the accessible part from `(i, i)` when `a` is accessible and keeps the
/// answer faithful to the definition when it is not. When the non-diagonal
/// part is acyclic, its longest path has some number `L` of vertices, and
/// `(L+1, L+1)` is the smallest diagonal pair: a non-diagonal path of length
/// `L` from `(q, q)` is two totally distinct runs of length `L`.
pub fn exists_kl(a: &Nfa) -> Result<KlReport> {
    a.initial()?;
    let sq = SquareAutomaton::explore(a, (0..a.num_states()).map(|q| PairState::new(q, q)));
    let n = sq.states.len();
    let off: Vec<bool> = sq.states.iter().map(|s| !s.is_diagonal()).collect();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            if !off[v] {
                return Vec::new();
            }
            let mut out: Vec<usize> = sq.adj[v].iter().map(|&(_, t)| t).filter(|&t| off[t]).collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();

    for comp in tarjan_scc(&adj) {
        let v = comp[0];
        if !off[v] {
            continue;
        }
        if comp.len() > 1 || adj[v].contains(&v) {
            let cert = cycle_through(&sq, &off, &comp, v);
            return Ok(KlReport {
                exists: false,
                witness_pair: None,
                certificate: Some(cert),
            });
        }
    }

    // Acyclic: longest path (in vertices) through non-diagonal states.
    let mut longest = vec![0usize; n];
    for comp in tarjan_scc(&adj) {
        let v = comp[0];
        if off[v] {
            longest[v] = 1 + adj[v].iter().map(|&t| longest[t]).max().unwrap_or(0);
        }
    }
    let l = longest.iter().copied().max().unwrap_or(0);
    Ok(KlReport {
        exists: true,
        witness_pair: Some((l + 1, l + 1)),
        certificate: None,
    })
}

/// Shortest cycle from `v` back to itself inside `comp`.
fn cycle_through(sq: &SquareAutomaton, off: &[bool], comp: &[usize], v: usize) -> CycleCertificate {
    let mut in_comp = vec![false; sq.states.len()];
    for &c in comp {
        in_comp[c] = true;
    }
    let mut parent: HashMap<usize, (usize, SymbolId)> = HashMap::new();
    let mut queue = VecDeque::from([v]);
    let mut closing = None;
    'bfs: while let Some(x) = queue.pop_front() {
        for &(a, t) in &sq.adj[x] {
            if !in_comp[t] || !off[t] {
                continue;
            }
            if t == v {
                closing = Some((x, a));
                break 'bfs;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(t) {
                e.insert((x, a));
                queue.push_back(t);
            }
        }
    }
    let (mut x, last) = closing.expect("a strongly connected component has a cycle");
    let mut states = vec![x];
    let mut symbols = vec![last];
    while x != v {
        let (p, a) = parent[&x];
        states.push(p);
        symbols.push(a);
        x = p;
    }
    states.reverse();
    symbols.reverse();
    CycleCertificate {
        states: states.into_iter().map(|s| sq.states[s]).collect(),
        symbols,
    }
}
