use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::stateset::StateId;

use super::{EdgeLabel, Qds, QdsEdge};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathAnalysis {
    pub shiftable: bool,
    pub successful: bool,
    /// The input word the path consumes; `None` unless shiftable.
    pub label: Option<Word>,
    pub end: StateId,
}

impl Qds {
    /// Classifies the path `start -edges-> end`.
    ///
    /// With `x_1..x_n` the edge labels and a γ edge at position `j` of shift
    /// `l`, the path is shiftable when for every such edge `m−1−l < j`,
    /// `j+m−l ≤ n`, and the `m−l−1` labels before `j` equal the `m−l−1`
    /// labels after it. Its label drops each γ edge together with the
    /// re-read overlap that follows it.
    pub fn analyze_path(&self, start: StateId, edges: &[QdsEdge]) -> Result<PathAnalysis> {
        if start >= self.len() {
            return Err(Error::UnknownState(format!("#{start}")));
        }
        let mut at = start;
        for (i, e) in edges.iter().enumerate() {
            if e.src != at {
                return Err(Error::Input(format!("path is disconnected at edge {}", i + 1)));
            }
            if !self.has_edge(e) {
                return Err(Error::Input(format!("{} is not an edge", self.format_edge(e))));
            }
            at = e.dst;
        }
        let end = at;

        let m = self.num_layers() as isize;
        let n = edges.len() as isize;
        let x = |j: isize| edges[(j - 1) as usize].label;
        let mut shiftable = true;
        let mut dropped = vec![false; edges.len()];
        for (idx, e) in edges.iter().enumerate() {
            let EdgeLabel::Shift(l) = e.label else { continue };
            let (j, l) = (idx as isize + 1, l as isize);
            let overlap = m - l - 1;
            if !(m - 1 - l < j && j + m - l <= n) {
                shiftable = false;
                break;
            }
            if (0..overlap).any(|t| x(j - overlap + t) != x(j + 1 + t)) {
                shiftable = false;
                break;
            }
            for d in j..=j + overlap {
                dropped[(d - 1) as usize] = true;
            }
        }

        let label = if shiftable {
            edges
                .iter()
                .zip(&dropped)
                .filter(|(_, &d)| !d)
                .map(|(e, _)| match e.label {
                    EdgeLabel::Symbol(a) => Some(a),
                    EdgeLabel::Shift(_) => None,
                })
                .collect::<Option<Word>>()
        } else {
            None
        };
        Ok(PathAnalysis {
            shiftable,
            successful: shiftable && start == self.initial && self.is_final(end),
            label,
            end,
        })
    }
}
