//! Quasi-deterministic structures.
//!
//! A QDS has layers `Q_1..Q_m`. The partial function `δ` moves from layer `j`
//! to layer `j+1`; the total function `γ` maps every state of `Q_m` to a
//! target in `Q_1` (or ⊥) together with a shift length. Recognition slides a
//! window of `m − 1` symbols over the input: read the window with `δ`, then
//! let `γ` restart from its target after dropping `shift` symbols.
//!
//! Layers are numbered from 1 in this API. State indices are always sorted by
//! layer, which keeps serialization round-trips exact.

mod construct;
mod path;
mod run;
mod stats;

pub use construct::{build_qds, build_qds_size, dfa_to_qds, prune_unreachable, random_qds};
pub use path::PathAnalysis;
pub use run::{Run, RunTrace, TraceStep};
pub use stats::{lint, QdsStats};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::alphabet::{Alphabet, SymbolId};
use crate::error::{Error, Result};
use crate::stateset::StateId;

/// Value of `γ` on a top-layer state. Stored as (target, shift).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gamma {
    pub target: Option<StateId>,
    pub shift: usize,
}

/// Label of a QDS edge: a symbol (δ) or a shift length (γ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    Symbol(SymbolId),
    Shift(usize),
}

/// An edge `(src, label, dst)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QdsEdge {
    pub src: StateId,
    pub label: EdgeLabel,
    pub dst: StateId,
}

impl QdsEdge {
    pub fn symbol(src: StateId, a: SymbolId, dst: StateId) -> Self {
        QdsEdge {
            src,
            label: EdgeLabel::Symbol(a),
            dst,
        }
    }

    pub fn shift(src: StateId, l: usize, dst: StateId) -> Self {
        QdsEdge {
            src,
            label: EdgeLabel::Shift(l),
            dst,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qds {
    alphabet: Alphabet,
    names: Vec<String>,
    index: HashMap<String, StateId>,
    layer_of: Vec<usize>,
    layers: Vec<Vec<StateId>>,
    initial: StateId,
    finals: Vec<bool>,
    delta: Vec<Vec<Option<StateId>>>,
    gamma: Vec<Option<Gamma>>,
}

impl Qds {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Number of layers `m`.
    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    /// Window size `m − 1`.
    pub fn window(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
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

    /// States of layer `j` (1-based).
    pub fn layer(&self, j: usize) -> &[StateId] {
        &self.layers[j - 1]
    }

    /// Layer (1-based) of `q`.
    pub fn layer_of(&self, q: StateId) -> usize {
        self.layer_of[q] + 1
    }

    pub fn is_top(&self, q: StateId) -> bool {
        self.layer_of[q] + 1 == self.layers.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.len()).filter(|&q| self.finals[q])
    }

    pub fn delta(&self, q: StateId, a: SymbolId) -> Option<StateId> {
        self.delta[q].get(a).copied().flatten()
    }

    pub fn gamma(&self, q: StateId) -> Option<Gamma> {
        self.gamma[q]
    }

    /// δ edges ordered by (source, symbol).
    pub fn delta_edges(&self) -> impl Iterator<Item = (StateId, SymbolId, StateId)> + '_ {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.iter().enumerate().filter_map(move |(a, t)| t.map(|q| (p, a, q))))
    }

    /// γ entries of the top layer, in state order.
    pub fn gamma_entries(&self) -> impl Iterator<Item = (StateId, Gamma)> + '_ {
        (0..self.len()).filter_map(|q| self.gamma[q].map(|g| (q, g)))
    }

    /// All edges: δ edges, then γ edges with a defined target.
    pub fn edges(&self) -> impl Iterator<Item = QdsEdge> + '_ {
        self.delta_edges().map(|(p, a, q)| QdsEdge::symbol(p, a, q)).chain(
            self.gamma_entries()
                .filter_map(|(p, g)| g.target.map(|t| QdsEdge::shift(p, g.shift, t))),
        )
    }

    pub fn has_edge(&self, e: &QdsEdge) -> bool {
        match e.label {
            EdgeLabel::Symbol(a) => a < self.alphabet.len() && self.delta(e.src, a) == Some(e.dst),
            EdgeLabel::Shift(l) => {
                self.gamma(e.src)
                    == Some(Gamma {
                        target: Some(e.dst),
                        shift: l,
                    })
            }
        }
    }

    pub fn format_edge(&self, e: &QdsEdge) -> String {
        let label = match e.label {
            EdgeLabel::Symbol(a) => self.alphabet.symbol(a).to_string(),
            EdgeLabel::Shift(l) => format!("#{l}"),
        };
        format!("({},{},{})", self.name(e.src), label, self.name(e.dst))
    }

    /// Copy keeping the states in `keep` (the initial state must be among
    /// them). Edges are filtered by `keep_delta`; `gamma_of` and `final_of`
    /// decide the remaining γ entries and finalities.
    pub(crate) fn rebuild(
        &self,
        keep: &[bool],
        keep_delta: impl Fn(StateId, SymbolId, StateId) -> bool,
        gamma_of: impl Fn(StateId) -> Gamma,
        final_of: impl Fn(StateId) -> bool,
    ) -> Qds {
        let mut b = QdsBuilder::new(self.alphabet.clone(), self.num_layers());
        let mut map = vec![None; self.len()];
        for q in 0..self.len() {
            if keep[q] {
                map[q] = Some(b.add_state(self.names[q].clone(), self.layer_of(q)).unwrap());
            }
        }
        b.set_initial(map[self.initial].expect("initial state kept"));
        for q in (0..self.len()).filter(|&q| keep[q]) {
            let nq = map[q].unwrap();
            if final_of(q) {
                b.add_final(nq);
            }
            if self.is_top(q) {
                let g = gamma_of(q);
                let target = g.target.and_then(|t| map[t]);
                b.set_gamma(nq, target, g.shift).unwrap();
            }
        }
        for (p, a, q) in self.delta_edges() {
            if let (Some(np), Some(nq)) = (map[p], map[q]) {
                if keep_delta(p, a, q) {
                    b.add_delta(np, a, nq).unwrap();
                }
            }
        }
        b.build().expect("restriction of a valid structure is valid")
    }
}

/// Incremental, validating construction of a [`Qds`].
///
/// Ids returned by the builder are local to it: [`QdsBuilder::build`]
/// renumbers states layer by layer, so look states up by name afterwards.
#[derive(Debug, Clone)]
pub struct QdsBuilder {
    alphabet: Alphabet,
    m: usize,
    names: Vec<String>,
    index: HashMap<String, StateId>,
    layer_of: Vec<usize>,
    initial: Option<StateId>,
    finals: BTreeSet<StateId>,
    delta: BTreeMap<(StateId, SymbolId), StateId>,
    gamma: BTreeMap<StateId, Gamma>,
}

impl QdsBuilder {
    /// A builder for a structure with `m` layers.
    pub fn new(alphabet: Alphabet, m: usize) -> Self {
        QdsBuilder {
            alphabet,
            m,
            names: Vec::new(),
            index: HashMap::new(),
            layer_of: Vec::new(),
            initial: None,
            finals: BTreeSet::new(),
            delta: BTreeMap::new(),
            gamma: BTreeMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn add_state(&mut self, name: impl Into<String>, layer: usize) -> Result<StateId> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) || name == "_" {
            return Err(Error::Input(format!("invalid state name `{name}`")));
        }
        if layer < 1 || layer > self.m {
            return Err(Error::Input(format!("layer {layer} out of range 1..={}", self.m)));
        }
        if self.index.contains_key(&name) {
            return Err(Error::Input(format!("duplicate state `{name}`")));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.layer_of.push(layer);
        Ok(id)
    }

    pub fn state_id(&self, name: &str) -> Result<StateId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn set_initial(&mut self, q: StateId) {
        self.initial = Some(q);
    }

    pub fn add_final(&mut self, q: StateId) {
        self.finals.insert(q);
    }

    pub fn add_delta(&mut self, p: StateId, a: SymbolId, q: StateId) -> Result<()> {
        if a >= self.alphabet.len() {
            return Err(Error::UnknownSymbol(format!("#{a}")));
        }
        let (lp, lq) = (self.layer_of[p], self.layer_of[q]);
        if lq != lp + 1 {
            return Err(Error::Input(format!(
                "delta edge {} -> {} goes from layer {lp} to layer {lq}",
                self.names[p], self.names[q]
            )));
        }
        match self.delta.insert((p, a), q) {
            Some(old) if old != q => Err(Error::Input(format!(
                "delta is not a function at ({}, {})",
                self.names[p],
                self.alphabet.symbol(a)
            ))),
            _ => Ok(()),
        }
    }

    pub fn set_gamma(&mut self, p: StateId, target: Option<StateId>, shift: usize) -> Result<()> {
        if self.layer_of[p] != self.m {
            return Err(Error::Input(format!(
                "gamma source {} is not in the last layer",
                self.names[p]
            )));
        }
        if let Some(t) = target {
            if self.layer_of[t] != 1 {
                return Err(Error::Input(format!(
                    "gamma target {} is not in layer 1",
                    self.names[t]
                )));
            }
        }
        if shift < 1 || shift > self.m {
            return Err(Error::Input(format!("shift {shift} out of range 1..={}", self.m)));
        }
        if self.gamma.insert(p, Gamma { target, shift }).is_some() {
            return Err(Error::Input(format!("gamma defined twice on {}", self.names[p])));
        }
        Ok(())
    }

    pub fn build(self) -> Result<Qds> {
        if self.m < 2 {
            return Err(Error::Input("a structure needs at least 2 layers".into()));
        }
        let initial = self.initial.ok_or_else(|| Error::Input("no initial state".into()))?;
        if self.layer_of[initial] != 1 {
            return Err(Error::Input("initial state must be in layer 1".into()));
        }
        for (q, &layer) in self.layer_of.iter().enumerate() {
            if layer == self.m && !self.gamma.contains_key(&q) {
                return Err(Error::Input(format!("gamma undefined on {}", self.names[q])));
            }
        }

        let mut layers: Vec<Vec<StateId>> = vec![Vec::new(); self.m];
        let mut order: Vec<StateId> = (0..self.names.len()).collect();
        order.sort_by_key(|&q| self.layer_of[q]);
        let mut renum = vec![0; self.names.len()];
        for (new, &old) in order.iter().enumerate() {
            renum[old] = new;
            layers[self.layer_of[old] - 1].push(new);
        }
        let n = order.len();
        let sigma = self.alphabet.len();
        let mut delta = vec![Vec::new(); n];
        let mut gamma = vec![None; n];
        let mut finals = vec![false; n];
        for &old in &order {
            if self.layer_of[old] < self.m {
                delta[renum[old]] = vec![None; sigma];
            }
        }
        for (&(p, a), &q) in &self.delta {
            delta[renum[p]][a] = Some(renum[q]);
        }
        for (&p, g) in &self.gamma {
            gamma[renum[p]] = Some(Gamma {
                target: g.target.map(|t| renum[t]),
                shift: g.shift,
            });
        }
        for &f in &self.finals {
            finals[renum[f]] = true;
        }
        let names: Vec<String> = order.iter().map(|&q| self.names[q].clone()).collect();
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let layer_of = order.iter().map(|&q| self.layer_of[q] - 1).collect();
        Ok(Qds {
            alphabet: self.alphabet,
            names,
            index,
            layer_of,
            layers,
            initial: renum[initial],
            finals,
            delta,
            gamma,
        })
    }
}

impl fmt::Display for Qds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_qds(self))
    }
}
