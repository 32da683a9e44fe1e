//! Small hand-checked automata used by tests, benches and documentation.

use crate::format::{parse_nfa, parse_qds};
use crate::nfa::Nfa;
use crate::qds::Qds;

/// 9 states over {a,b,c}; (4,3)-unambiguous but not (3,3) nor (4,2), and not
/// k-lookahead deterministic for any k.
pub const NINE_STATE_NFA: &str = include_str!("../data/nine_state.nfa");
/// `Σ*·a·Σ` over {a,b} with 3 states; (3,1)-unambiguous.
pub const SIGMA_A_SIGMA_NFA: &str = include_str!("../data/sigma_a_sigma.nfa");
/// Two runs on `aⁿ` that stay apart forever; no (k,l) exists.
pub const NON_UNAMBIGUOUS_NFA: &str = include_str!("../data/non_unambiguous.nfa");
/// 8-state, 3-layer structure accepting `bbbaabab` in state 7.
pub const WINDOW3_QDS: &str = include_str!("../data/window3.qds");
/// Structure whose only useful states are 1 and 2.
pub const UNTRIMMED_QDS: &str = include_str!("../data/untrimmed.qds");
/// Structure with a useless edge `(2,c,3)` and a useless finality on 5.
pub const TO_TRIM_QDS: &str = include_str!("../data/to_trim.qds");
/// Expected trim of [`TO_TRIM_QDS`].
pub const TRIMMED_QDS: &str = include_str!("../data/trimmed.qds");
/// Two branches with shifts 1 and 2; ≡ is the identity.
pub const SHIFT12_QDS: &str = include_str!("../data/shift12.qds");
/// Same language with both shifts 2; ≡ merges the branches.
pub const SHIFT22_QDS: &str = include_str!("../data/shift22.qds");
/// Expected quotient of [`SHIFT22_QDS`] by ≡.
pub const SHIFT22_REDUCED_QDS: &str = include_str!("../data/shift22_reduced.qds");
/// 3-state DFA over {a,b}.
pub const SMALL_DFA: &str = include_str!("../data/small.dfa");
/// Window-1 embedding of [`SMALL_DFA`].
pub const SMALL_WINDOW1_QDS: &str = include_str!("../data/small_window1.qds");

pub fn nfa(text: &str) -> Nfa {
    parse_nfa(text).expect("sample automata are well formed")
}

pub fn qds(text: &str) -> Qds {
    parse_qds(text).expect("sample structures are well formed")
}

/// Every sample structure.
pub fn all_qds() -> Vec<Qds> {
    [
        WINDOW3_QDS,
        UNTRIMMED_QDS,
        TO_TRIM_QDS,
        TRIMMED_QDS,
        SHIFT12_QDS,
        SHIFT22_QDS,
        SHIFT22_REDUCED_QDS,
        SMALL_WINDOW1_QDS,
    ]
    .into_iter()
    .map(qds)
    .collect()
}

/// Every sample automaton.
pub fn all_nfa() -> Vec<Nfa> {
    [NINE_STATE_NFA, SIGMA_A_SIGMA_NFA, NON_UNAMBIGUOUS_NFA, SMALL_DFA]
        .into_iter()
        .map(nfa)
        .collect()
}
