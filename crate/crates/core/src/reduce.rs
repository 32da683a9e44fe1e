//! Right-invariant equivalences and quotients.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::qds::{Qds, QdsBuilder};
use crate::stateset::StateId;

/// A partition of the states of a structure whose classes stay within one
/// layer. Classes are numbered by layer, then by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<StateId>>,
    class_layer: Vec<usize>,
    steps: usize,
}

impl LayeredPartition {
    /// Renumbers raw class labels canonically. States are layer-sorted, so
    /// first-occurrence order is (layer, smallest member) order.
    fn canonical(s: &Qds, raw: &[usize], steps: usize) -> Self {
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut classes: Vec<Vec<StateId>> = Vec::new();
        let mut class_layer = Vec::new();
        let class_of = raw
            .iter()
            .enumerate()
            .map(|(q, r)| {
                let c = *ids.entry(*r).or_insert_with(|| {
                    classes.push(Vec::new());
                    class_layer.push(s.layer_of(q));
                    classes.len() - 1
                });
                classes[c].push(q);
                c
            })
            .collect();
        LayeredPartition {
            class_of,
            classes,
            class_layer,
            steps,
        }
    }

    pub fn identity(s: &Qds) -> Self {
        let raw: Vec<usize> = (0..s.len()).collect();
        Self::canonical(s, &raw, 0)
    }

    /// Builds a partition from explicit classes, which must cover every state
    /// exactly once and stay within a layer.
    pub fn from_classes(s: &Qds, classes: &[Vec<StateId>]) -> Result<Self> {
        let mut raw = vec![usize::MAX; s.len()];
        for (c, members) in classes.iter().enumerate() {
            for &q in members {
                if q >= s.len() || raw[q] != usize::MAX {
                    return Err(Error::Input(format!("state #{q} is missing or repeated")));
                }
                if s.layer_of(q) != s.layer_of(members[0]) {
                    return Err(Error::Input(format!(
                        "class {c} spans layers {} and {}",
                        s.layer_of(members[0]),
                        s.layer_of(q)
                    )));
                }
                raw[q] = c;
            }
        }
        if let Some(q) = raw.iter().position(|&c| c == usize::MAX) {
            return Err(Error::Input(format!("state {} is in no class", s.name(q))));
        }
        Ok(Self::canonical(s, &raw, 0))
    }

    pub fn classes(&self) -> &[Vec<StateId>] {
        &self.classes
    }

    pub fn class_of(&self, q: StateId) -> usize {
        self.class_of[q]
    }

    /// Layer (1-based) of class `c`.
    pub fn class_layer(&self, c: usize) -> usize {
        self.class_layer[c]
    }

    pub fn same(&self, p: StateId, q: StateId) -> bool {
        self.class_of[p] == self.class_of[q]
    }

    /// Number of refinement steps until the fixpoint (0 for hand-built partitions).
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// True when every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &LayeredPartition) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&q| coarser.class_of[q] == coarser.class_of[c[0]]))
    }

    fn same_blocks(&self, other: &LayeredPartition) -> bool {
        self.class_of == other.class_of
    }

    /// Class representatives (lexicographically least member name) and members.
    pub fn quotient_map(&self, s: &Qds) -> QuotientMap {
        let representative = self
            .classes
            .iter()
            .map(|c| *c.iter().min_by_key(|&&q| s.name(q)).unwrap())
            .collect();
        QuotientMap {
            class_of: self.class_of.clone(),
            representative,
            members: self.classes.clone(),
        }
    }
}

/// State-to-class map with a representative per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    pub class_of: Vec<usize>,
    pub representative: Vec<StateId>,
    pub members: Vec<Vec<StateId>>,
}

const BOTTOM: usize = usize::MAX;

/// One refinement step. `prev` is `≡_{j−1}` (absent for `≡_0`).
fn refine(s: &Qds, prev: Option<&LayeredPartition>) -> Vec<usize> {
    let m = s.num_layers();
    let sigma = s.alphabet().len();
    let mut raw = vec![0usize; s.len()];
    let mut keys: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut intern = |layer: usize, key: Vec<usize>| {
        let n = keys.len();
        *keys.entry((layer, key)).or_insert(n)
    };
    for &q in s.layer(m) {
        let g = s.gamma(q).unwrap();
        let target = match (prev, g.target) {
            (None, _) => 0,
            (Some(_), None) => BOTTOM,
            (Some(p), Some(t)) => p.class_of(t),
        };
        raw[q] = intern(m, vec![g.shift, usize::from(s.is_final(q)), target]);
    }
    for j in (1..m).rev() {
        for &q in s.layer(j) {
            let mut key = Vec::with_capacity(sigma + 1);
            key.push(if j == 1 { 0 } else { usize::from(s.is_final(q)) });
            key.extend((0..sigma).map(|a| s.delta(q, a).map_or(BOTTOM, |t| raw[t])));
            raw[q] = intern(j, key);
        }
    }
    raw
}

/// The chain `≡_0, ≡_1, ..., ≡_n` where `n` is the first index with
/// `≡_n = ≡_{n+1}`.
pub fn equiv_chain(s: &Qds) -> Vec<LayeredPartition> {
    let mut chain = vec![LayeredPartition::canonical(s, &refine(s, None), 0)];
    loop {
        let last = chain.last().unwrap();
        let next = LayeredPartition::canonical(s, &refine(s, Some(last)), chain.len());
        if next.same_blocks(last) {
            return chain;
        }
        chain.push(next);
    }
}

/// The fixpoint `≡`, with [`LayeredPartition::steps`] set to the index at
/// which the chain stabilised.
pub fn equiv_fixpoint(s: &Qds) -> LayeredPartition {
    let mut chain = equiv_chain(s);
    let n = chain.len() - 1;
    let mut p = chain.pop().unwrap();
    p.steps = n;
    p
}

/// A witness that a partition is not right invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Delta { p: StateId, q: StateId, symbol: usize },
    Gamma { p: StateId, q: StateId },
}

impl Violation {
    pub fn describe(&self, s: &Qds) -> String {
        match *self {
            Violation::Delta { p, q, symbol } => format!(
                "{} ~ {} but their {}-successors are not equivalent",
                s.name(p),
                s.name(q),
                s.alphabet().symbol(symbol)
            ),
            Violation::Gamma { p, q } => format!(
                "{} ~ {} but their gamma values differ in shift or target class",
                s.name(p),
                s.name(q)
            ),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Checks `q ~ q' ⇒ δ(q,a) ~ δ(q',a)` and, on the last layer, equal shifts
/// with equivalent targets. ⊥ is equivalent only to ⊥.
pub fn verify_right_invariant(s: &Qds, p: &LayeredPartition) -> Result<Option<Violation>> {
    if p.class_of.len() != s.len() {
        return Err(Error::Input("partition does not cover the structure".into()));
    }
    for c in &p.classes {
        if c.iter().any(|&q| s.layer_of(q) != s.layer_of(c[0])) {
            return Err(Error::Input("partition spans layers".into()));
        }
    }
    let cls = |t: Option<StateId>| t.map(|t| p.class_of[t]);
    for c in &p.classes {
        let r = c[0];
        for &q in &c[1..] {
            if s.is_top(r) {
                let (gr, gq) = (s.gamma(r).unwrap(), s.gamma(q).unwrap());
                if gr.shift != gq.shift || cls(gr.target) != cls(gq.target) {
                    return Ok(Some(Violation::Gamma { p: r, q }));
                }
            } else {
                for a in 0..s.alphabet().len() {
                    if cls(s.delta(r, a)) != cls(s.delta(q, a)) {
                        return Ok(Some(Violation::Delta { p: r, q, symbol: a }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The quotient `S/∼`. Classes with several members are named `{m1,m2,...}`
/// (sorted member names); singleton classes keep their member's name.
pub fn quotient(s: &Qds, p: &LayeredPartition) -> Result<Qds> {
    if let Some(v) = verify_right_invariant(s, p)? {
        return Err(Error::NotRightInvariant(v.describe(s)));
    }
    for c in &p.classes {
        if s.layer_of(c[0]) >= 2 && c.iter().any(|&q| s.is_final(q) != s.is_final(c[0])) {
            return Err(Error::Precondition(format!(
                "class of {} mixes final and non-final states",
                s.name(c[0])
            )));
        }
    }
    let map = p.quotient_map(s);
    let mut b = QdsBuilder::new(s.alphabet().clone(), s.num_layers());
    let mut ids = Vec::with_capacity(p.classes.len());
    for (c, members) in p.classes.iter().enumerate() {
        let name = if members.len() == 1 {
            s.name(members[0]).to_string()
        } else {
            let mut names: Vec<&str> = members.iter().map(|&q| s.name(q)).collect();
            names.sort_unstable();
            format!("{{{}}}", names.join(","))
        };
        ids.push(b.add_state(name, p.class_layer[c])?);
    }
    let init = p.class_of[s.initial()];
    b.set_initial(ids[init]);
    if s.is_final(s.initial()) {
        b.add_final(ids[init]);
    }
    for (c, members) in p.classes.iter().enumerate() {
        if p.class_layer[c] >= 2 && members.iter().any(|&q| s.is_final(q)) {
            b.add_final(ids[c]);
        }
        let r = map.representative[c];
        if s.is_top(r) {
            let g = s.gamma(r).unwrap();
            b.set_gamma(ids[c], g.target.map(|t| ids[p.class_of[t]]), g.shift)?;
        } else {
            for a in 0..s.alphabet().len() {
                if let Some(t) = s.delta(r, a) {
                    b.add_delta(ids[c], a, ids[p.class_of[t]])?;
                }
            }
        }
    }
    b.build()
}
