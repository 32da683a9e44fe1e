//! (k,l)-unambiguous automata and quasi-deterministic structures.
//!
//! - [`nfa`]: automata, subset construction and minimization.
//! - [`analysis`]: deciding (k,l)-unambiguity and computing step tables.
//! - [`qds`]: quasi-deterministic structures, windowed membership and
//!   construction from a (k,l)-unambiguous NFA.
//! - [`trim`] and [`reduce`]: removing useless parts and merging equivalent states.
//! - [`family`]: the `L_k` family, where the gap to minimal DFAs is exponential.
//!
//! ```
//! use klqds::{analysis, qds, samples};
//!
//! let a = samples::nfa(samples::SIGMA_A_SIGMA_NFA);
//! assert!(analysis::is_kl_unambiguous(&a, 3, 1).unwrap());
//! let s = qds::build_qds(&a, 3, 3).unwrap();
//! let w = a.alphabet().parse_word("bbab").unwrap();
//! assert_eq!(s.accepts(&w).unwrap(), a.accepts(&w).unwrap());
//! ```

pub mod alphabet;
pub mod analysis;
pub mod dot;
pub mod error;
pub mod family;
pub mod format;
mod graph;
pub mod nfa;
pub mod qds;
pub mod reduce;
pub mod samples;
pub mod stateset;
pub mod trim;
pub mod words;

pub use alphabet::{Alphabet, SymbolId, Word};
pub use error::{Error, Result};
pub use nfa::{Dfa, Nfa, NfaBuilder};
pub use qds::{EdgeLabel, Gamma, Qds, QdsBuilder, QdsEdge};
pub use stateset::{StateId, StateSet};
