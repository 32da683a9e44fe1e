//! Deciding (k,l)-unambiguity.
//!
//! An NFA with a single initial state is (k,l)-unambiguous when, for every
//! state `q` and every word `w` of length `k`, some prefix length `i ≤ l`
//! leaves at most one state of `δ(q, w[..i])` from which the rest of `w` can
//! still be read. [`exists_kl`] decides whether any such pair exists using the
//! square automaton; [`is_kl_unambiguous`] checks one pair by enumeration.

mod lookahead;
mod square;
mod window;

pub use lookahead::is_k_lookahead_deterministic;
pub use square::{exists_kl, square_automaton, CycleCertificate, KlReport, PairState, SquareAutomaton};
pub use window::{
    default_k_max, find_minimal_kl, is_kl_unambiguous, kl_witness, step, step_table, MinimalKl, StepEntry, StepTable,
};

use crate::error::{Error, Result};

pub(crate) fn check_kl(k: usize, l: usize) -> Result<()> {
    if l < 1 || l > k {
        return Err(Error::Precondition(format!("need 1 ≤ l ≤ k, got k={k}, l={l}")));
    }
    Ok(())
}
