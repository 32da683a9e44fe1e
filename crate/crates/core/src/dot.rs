//! Graphviz export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::nfa::Nfa;
use crate::qds::{EdgeLabel, Qds};
use crate::trim::PathDfa;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// States as circles, finals double-circled, one edge per (source, target)
/// with comma-joined labels.
pub fn nfa_dot(a: &Nfa) -> String {
    let mut out = String::from("digraph nfa {\n  rankdir=LR;\n  node [shape=circle];\n");
    for q in 0..a.num_states() {
        let shape = if a.is_final(q) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(a.name(q)));
    }
    for (n, &i) in a.initials().iter().enumerate() {
        let _ = writeln!(
            out,
            "  __start{n} [shape=point];\n  __start{n} -> {};",
            quote(a.name(i))
        );
    }
    let mut grouped: BTreeMap<(usize, usize), Vec<&str>> = BTreeMap::new();
    for (p, x, q) in a.transitions() {
        grouped.entry((p, q)).or_default().push(a.alphabet().symbol(x));
    }
    for ((p, q), labels) in grouped {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(a.name(p)),
            quote(a.name(q)),
            quote(&labels.join(","))
        );
    }
    out.push_str("}\n");
    out
}

/// Layers as ranks; γ edges dashed and labelled with their shift.
pub fn qds_dot(s: &Qds) -> String {
    let mut out = String::from("digraph qds {\n  rankdir=LR;\n  node [shape=circle];\n");
    for j in 1..=s.num_layers() {
        let _ = write!(out, "  {{ rank=same;");
        for &q in s.layer(j) {
            let _ = write!(out, " {};", quote(s.name(q)));
        }
        out.push_str(" }\n");
    }
    for q in 0..s.len() {
        let shape = if s.is_final(q) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(s.name(q)));
    }
    let _ = writeln!(
        out,
        "  __start [shape=point];\n  __start -> {};",
        quote(s.name(s.initial()))
    );
    let mut grouped: BTreeMap<(usize, usize), Vec<&str>> = BTreeMap::new();
    for (p, x, q) in s.delta_edges() {
        grouped.entry((p, q)).or_default().push(s.alphabet().symbol(x));
    }
    for ((p, q), labels) in grouped {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(s.name(p)),
            quote(s.name(q)),
            quote(&labels.join(","))
        );
    }
    for (p, g) in s.gamma_entries() {
        if let Some(t) = g.target {
            let _ = writeln!(
                out,
                "  {} -> {} [style=dashed, label=\"{}\"];",
                quote(s.name(p)),
                quote(s.name(t)),
                g.shift
            );
        }
    }
    out.push_str("}\n");
    out
}

/// The accessible path-DFA, shift tokens written `#l`.
pub fn path_dfa_dot(s: &Qds, pd: &PathDfa) -> String {
    let mut out = String::from("digraph pathdfa {\n  rankdir=LR;\n  node [shape=box];\n");
    for (i, st) in pd.states().iter().enumerate() {
        let periph = if pd.is_final(i) { 2 } else { 1 };
        let _ = writeln!(out, "  n{i} [label={}, peripheries={periph}];", quote(&st.render(s)));
    }
    out.push_str("  __start [shape=point];\n  __start -> n0;\n");
    for i in 0..pd.len() {
        for &(label, j) in pd.transitions(i) {
            let (text, style) = match label {
                EdgeLabel::Symbol(a) => (s.alphabet().symbol(a).to_string(), ""),
                EdgeLabel::Shift(l) => (format!("#{l}"), ", style=dashed"),
            };
            let _ = writeln!(out, "  n{i} -> n{j} [label={}{style}];", quote(&text));
        }
    }
    out.push_str("}\n");
    out
}
