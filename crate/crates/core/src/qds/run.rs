use std::fmt::Write as _;

use crate::alphabet::{SymbolId, Word};
use crate::error::{Error, Result};
use crate::stateset::StateId;

use super::{EdgeLabel, Gamma, Qds};

/// One window of a membership run: starting at `position` in state `state`,
/// the symbols `consumed` led to `reached`, where `gamma` (if any) was applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub position: usize,
    pub state: StateId,
    pub consumed: Word,
    pub reached: Option<StateId>,
    pub gamma: Option<Gamma>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    pub steps: Vec<TraceStep>,
    pub terminal: Option<StateId>,
}

/// Outcome of the windowed membership algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub accepted: bool,
    pub terminal: Option<StateId>,
    /// Number of γ applications.
    pub shifts: usize,
    /// Number of input symbols read, counting re-reads of window overlaps.
    pub reads: usize,
    pub trace: Option<RunTrace>,
}

impl Qds {
    /// `δ(q, w)` without shifts, ⊥-absorbing. Also returns the number of
    /// symbols read before stopping.
    pub fn delta_word(&self, q: StateId, w: &[SymbolId]) -> (Option<StateId>, usize) {
        let mut cur = q;
        for (n, &a) in w.iter().enumerate() {
            match self.delta(cur, a) {
                Some(next) => cur = next,
                None => return (None, n + 1),
            }
        }
        (Some(cur), w.len())
    }

    /// The extended transition function `Δ`, as a direct recursion.
    pub fn extended_delta(&self, q: StateId, w: &[SymbolId]) -> Result<Option<StateId>> {
        self.alphabet.check_word(w)?;
        if self.layer_of(q) != 1 {
            return Err(Error::Precondition(format!("{} is not in layer 1", self.name(q))));
        }
        Ok(self.delta_rec(q, w))
    }

    fn delta_rec(&self, q: StateId, w: &[SymbolId]) -> Option<StateId> {
        let k = self.window();
        if w.len() <= k {
            return self.delta_word(q, w).0;
        }
        let top = self.delta_word(q, &w[..k]).0?;
        let g = self.gamma(top)?;
        self.delta_rec(g.target?, &w[g.shift..])
    }

    pub fn accepts(&self, w: &[SymbolId]) -> Result<bool> {
        Ok(self.run_inner(w, false)?.accepted)
    }

    pub fn run(&self, w: &[SymbolId]) -> Result<Run> {
        self.run_inner(w, false)
    }

    pub fn run_traced(&self, w: &[SymbolId]) -> Result<Run> {
        self.run_inner(w, true)
    }

    /// Sliding-window membership: iterative, constant extra space apart from
    /// the optional trace.
    fn run_inner(&self, w: &[SymbolId], record: bool) -> Result<Run> {
        self.alphabet.check_word(w)?;
        let k = self.window();
        let mut steps = Vec::new();
        let mut reads = 0;
        let mut shifts = 0;
        let mut pos = 0;
        let mut cur = Some(self.initial);

        if w.len() > k {
            while w.len() - pos > k {
                let Some(c) = cur else { break };
                let (reached, n) = self.delta_word(c, &w[pos..pos + k]);
                reads += n;
                // γ(⊥) = (⊥, 1)
                let g = reached.and_then(|r| self.gamma(r));
                if g.is_some() {
                    shifts += 1;
                }
                if record {
                    steps.push(TraceStep {
                        position: pos,
                        state: c,
                        consumed: w[pos..pos + n].to_vec(),
                        reached,
                        gamma: g,
                    });
                }
                let g = g.unwrap_or(Gamma { target: None, shift: 1 });
                cur = g.target;
                pos += g.shift;
            }
        }
        let terminal = match cur {
            Some(c) => {
                let (reached, n) = self.delta_word(c, &w[pos..]);
                reads += n;
                if record {
                    steps.push(TraceStep {
                        position: pos,
                        state: c,
                        consumed: w[pos..pos + n].to_vec(),
                        reached,
                        gamma: None,
                    });
                }
                reached
            }
            None => None,
        };
        Ok(Run {
            accepted: terminal.is_some_and(|t| self.is_final(t)),
            terminal,
            shifts,
            reads,
            trace: record.then_some(RunTrace { steps, terminal }),
        })
    }
}

impl RunTrace {
    /// The run as a sequence of edge labels: window symbols interleaved with
    /// shift tokens. A run stopped by ⊥ ends with the symbol or shift that
    /// had no edge.
    pub fn extended_word(&self) -> Vec<EdgeLabel> {
        let mut out = Vec::new();
        for step in &self.steps {
            out.extend(step.consumed.iter().map(|&a| EdgeLabel::Symbol(a)));
            if let Some(g) = step.gamma {
                out.push(EdgeLabel::Shift(g.shift));
            }
        }
        out
    }

    /// Renders the run as a table with the current window bracketed.
    pub fn render(&self, s: &Qds, w: &[SymbolId]) -> String {
        let name = |q: Option<StateId>| q.map_or("_".to_string(), |q| s.name(q).to_string());
        let word = |from: usize, to: usize| s.alphabet().format_word(&w[from..to]);
        let mut out = String::new();
        let _ = writeln!(out, "pos\twindow\tstate\treached\tgamma");
        for step in &self.steps {
            let end = step.position + step.consumed.len();
            let window = format!(
                "{}[{}]{}",
                word(0, step.position),
                word(step.position, end),
                word(end, w.len())
            );
            let gamma = match step.gamma {
                Some(g) => format!("({},{})", name(g.target), g.shift),
                None => "-".to_string(),
            };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                step.position,
                window,
                s.name(step.state),
                name(step.reached),
                gamma
            );
        }
        out
    }
}
