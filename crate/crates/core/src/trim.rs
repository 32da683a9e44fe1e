//! Trimming through the path-DFA.
//!
//! The path-DFA runs over symbols and shift tokens. A state `(p, u, v)` pairs
//! a QDS state with the symbols `u` read since the last shift and the overlap
//! `v` those symbols must agree with. Its accessible and coaccessible states
//! project onto the useful states, edges and finalities of the structure.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::Word;
use crate::qds::{EdgeLabel, Gamma, Qds, QdsEdge};
use crate::stateset::StateId;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathDfaState {
    pub base: StateId,
    pub u: Word,
    pub v: Word,
}

fn is_prefix(a: &[usize], b: &[usize]) -> bool {
    a.len() <= b.len() && b[..a.len()] == *a
}

impl PathDfaState {
    pub fn is_final(&self, s: &Qds) -> bool {
        s.is_final(self.base) && self.v.len() < self.u.len() && is_prefix(&self.v, &self.u)
    }

    pub fn render(&self, s: &Qds) -> String {
        let w = |x: &Word| match x.is_empty() {
            true => "_".to_string(),
            false => s.alphabet().token_word(x),
        };
        format!("({},{},{})", s.name(self.base), w(&self.u), w(&self.v))
    }
}

/// One transition of the path-DFA, defined on every state, accessible or not.
pub fn path_step(s: &Qds, st: &PathDfaState, label: EdgeLabel) -> Option<PathDfaState> {
    match label {
        EdgeLabel::Symbol(a) => {
            if s.is_top(st.base) {
                return None;
            }
            let q = s.delta(st.base, a)?;
            let mut ua = st.u.clone();
            ua.push(a);
            if !(is_prefix(&ua, &st.v) || is_prefix(&st.v, &st.u)) {
                return None;
            }
            Some(PathDfaState {
                base: q,
                u: ua,
                v: st.v.clone(),
            })
        }
        EdgeLabel::Shift(l) => {
            let g = s.gamma(st.base)?;
            if g.shift != l || l > st.u.len() {
                return None;
            }
            Some(PathDfaState {
                base: g.target?,
                u: Vec::new(),
                v: st.u[l..].to_vec(),
            })
        }
    }
}

/// Accessible part of the path-DFA, explored breadth-first from `(i, ε, ε)`.
#[derive(Debug, Clone)]
pub struct PathDfa {
    states: Vec<PathDfaState>,
    finals: Vec<bool>,
    edges: Vec<Vec<(EdgeLabel, usize)>>,
}

impl PathDfa {
    pub fn build(s: &Qds) -> PathDfa {
        let start = PathDfaState {
            base: s.initial(),
            u: Vec::new(),
            v: Vec::new(),
        };
        let mut index = HashMap::from([(start.clone(), 0)]);
        let mut states = vec![start];
        let mut edges: Vec<Vec<(EdgeLabel, usize)>> = vec![Vec::new()];
        let mut queue = VecDeque::from([0]);
        let labels: Vec<EdgeLabel> = (0..s.alphabet().len())
            .map(EdgeLabel::Symbol)
            .chain((1..=s.num_layers()).map(EdgeLabel::Shift))
            .collect();
        while let Some(i) = queue.pop_front() {
            for &label in &labels {
                let Some(next) = path_step(s, &states[i], label) else {
                    continue;
                };
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        let j = states.len();
                        index.insert(next.clone(), j);
                        states.push(next);
                        edges.push(Vec::new());
                        queue.push_back(j);
                        j
                    }
                };
                edges[i].push((label, j));
            }
        }
        let finals = states.iter().map(|st| st.is_final(s)).collect();
        PathDfa { states, finals, edges }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[PathDfaState] {
        &self.states
    }

    pub fn is_final(&self, i: usize) -> bool {
        self.finals[i]
    }

    pub fn transitions(&self, i: usize) -> &[(EdgeLabel, usize)] {
        &self.edges[i]
    }

    pub fn next(&self, i: usize, label: EdgeLabel) -> Option<usize> {
        self.edges[i].iter().find(|(l, _)| *l == label).map(|&(_, j)| j)
    }

    pub fn accepts(&self, word: &[EdgeLabel]) -> bool {
        word.iter()
            .try_fold(0, |i, &l| self.next(i, l))
            .is_some_and(|i| self.finals[i])
    }

    /// States from which a final state is reachable.
    pub fn coaccessible(&self) -> Vec<bool> {
        let mut rev = vec![Vec::new(); self.len()];
        for (i, out) in self.edges.iter().enumerate() {
            for &(_, j) in out {
                rev[j].push(i);
            }
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<usize> = (0..self.len()).filter(|&i| seen[i]).collect();
        while let Some(j) = stack.pop() {
            for &i in &rev[j] {
                if !seen[i] {
                    seen[i] = true;
                    stack.push(i);
                }
            }
        }
        seen
    }

    /// A shortest accepted word whose run visits state `i`.
    pub fn accepted_word_through(&self, i: usize) -> Option<Vec<EdgeLabel>> {
        let mut word = self.shortest(0, |j| j == i)?;
        word.extend(self.shortest(i, |j| self.finals[j])?);
        Some(word)
    }

    fn shortest(&self, from: usize, goal: impl Fn(usize) -> bool) -> Option<Vec<EdgeLabel>> {
        let mut parent: HashMap<usize, (usize, EdgeLabel)> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = vec![false; self.len()];
        seen[from] = true;
        while let Some(i) = queue.pop_front() {
            if goal(i) {
                let mut word = Vec::new();
                let mut at = i;
                while at != from {
                    let (p, l) = parent[&at];
                    word.push(l);
                    at = p;
                }
                word.reverse();
                return Some(word);
            }
            for &(l, j) in &self.edges[i] {
                if !seen[j] {
                    seen[j] = true;
                    parent.insert(j, (i, l));
                    queue.push_back(j);
                }
            }
        }
        None
    }
}

/// Components of a structure that lie on some successful path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsefulReport {
    pub states: BTreeSet<StateId>,
    pub transitions: BTreeSet<QdsEdge>,
    pub finalities: BTreeSet<StateId>,
}

/// Projects the useful (accessible and coaccessible) path-DFA states onto
/// `s`. The initial state is always kept, and its finality too when it is
/// final, since the empty path at the initial state is successful.
pub fn compute_useful(s: &Qds) -> UsefulReport {
    let pd = PathDfa::build(s);
    let co = pd.coaccessible();
    let mut report = UsefulReport {
        states: BTreeSet::from([s.initial()]),
        transitions: BTreeSet::new(),
        finalities: BTreeSet::new(),
    };
    if s.is_final(s.initial()) {
        report.finalities.insert(s.initial());
    }
    for (i, st) in pd.states.iter().enumerate() {
        if !co[i] {
            continue;
        }
        report.states.insert(st.base);
        if pd.finals[i] {
            report.finalities.insert(st.base);
        }
        for &(label, j) in &pd.edges[i] {
            if co[j] {
                report.transitions.insert(QdsEdge {
                    src: st.base,
                    label,
                    dst: pd.states[j].base,
                });
            }
        }
    }
    report
}

/// `s` restricted to its useful components. A kept last-layer state whose γ
/// edge is useless keeps its shift with target ⊥, so γ stays total.
pub fn trim_qds(s: &Qds) -> Qds {
    let r = compute_useful(s);
    trim_with(s, &r)
}

pub(crate) fn trim_with(s: &Qds, r: &UsefulReport) -> Qds {
    let keep: Vec<bool> = (0..s.len()).map(|q| r.states.contains(&q)).collect();
    s.rebuild(
        &keep,
        |p, a, q| r.transitions.contains(&QdsEdge::symbol(p, a, q)),
        |q| {
            let g = s.gamma(q).unwrap();
            match g.target {
                Some(t) if r.transitions.contains(&QdsEdge::shift(q, g.shift, t)) => g,
                _ => Gamma {
                    target: None,
                    shift: g.shift,
                },
            }
        },
        |q| r.finalities.contains(&q),
    )
}

/// A component removed by trimming.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Removed {
    State(StateId),
    Edge(QdsEdge),
    Finality(StateId),
}

/// What [`trim_qds`] drops from `s`, in state order.
pub fn removed_components(s: &Qds, r: &UsefulReport) -> Vec<Removed> {
    let mut out = Vec::new();
    for q in 0..s.len() {
        if !r.states.contains(&q) {
            out.push(Removed::State(q));
        }
    }
    for e in s.edges() {
        if !r.transitions.contains(&e) {
            out.push(Removed::Edge(e));
        }
    }
    for q in s.finals() {
        if !r.finalities.contains(&q) {
            out.push(Removed::Finality(q));
        }
    }
    out
}
