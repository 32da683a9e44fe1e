//! Line-oriented text formats.
//!
//! ```text
//! @type nfa            # or `dfa`, which is checked for determinism
//! @alphabet a b c
//! @states 0 1 2
//! @initial 0
//! @final 2
//! 0 a 1                # one transition per line
//! ```
//!
//! ```text
//! @type qds
//! @alphabet a b
//! @layers 3
//! @layer 1 1 6         # layer index, then its states
//! @layer 2 2 3 7
//! @layer 3 4 5 8
//! @initial 1
//! @final 2 7
//! 1 a 2                # delta edge
//! @gamma 5 1 2         # source, target (or `_`), shift
//! ```
//!
//! `#` starts a comment. Writers emit every set in declaration order, so
//! parsing the output gives back an equal value.

use std::fmt::Write as _;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::nfa::{Dfa, Nfa, NfaBuilder};
use crate::qds::{Qds, QdsBuilder};

/// Either kind of automaton a file may hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Automaton {
    Nfa(Nfa),
    Qds(Qds),
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty lines with comments removed, as (line number, tokens).
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

/// Reads the `@type` header.
pub fn detect_type(text: &str) -> Result<&str> {
    match lines(text).next() {
        Some((_, t)) if t.len() == 2 && t[0] == "@type" => match t[1] {
            "nfa" => Ok("nfa"),
            "dfa" => Ok("dfa"),
            "qds" => Ok("qds"),
            other => Err(err(1, format!("unknown type `{other}`"))),
        },
        Some((n, _)) => Err(err(n, "expected `@type nfa|dfa|qds`")),
        None => Err(err(0, "empty input")),
    }
}

pub fn parse_any(text: &str) -> Result<Automaton> {
    match detect_type(text)? {
        "qds" => parse_qds(text).map(Automaton::Qds),
        _ => parse_nfa(text).map(Automaton::Nfa),
    }
}

/// Resolves a parse-local lookup failure into a positioned parse error.
fn at<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| err(line, e.to_string()))
}

pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let kind = detect_type(text)?;
    if kind == "qds" {
        return Err(err(1, "expected an nfa or dfa file"));
    }
    let mut builder: Option<NfaBuilder> = None;
    let mut alphabet: Option<Alphabet> = None;
    for (n, t) in lines(text).skip(1) {
        match t[0] {
            "@alphabet" => {
                if alphabet.is_some() {
                    return Err(err(n, "duplicate @alphabet"));
                }
                alphabet = Some(at(n, Alphabet::new(t[1..].iter().copied()))?);
            }
            "@states" => {
                if builder.is_some() {
                    return Err(err(n, "duplicate @states"));
                }
                let al = alphabet.clone().ok_or_else(|| err(n, "@states before @alphabet"))?;
                let mut b = NfaBuilder::new(al);
                for s in &t[1..] {
                    at(n, b.add_state(*s))?;
                }
                builder = Some(b);
            }
            "@initial" | "@final" => {
                let b = builder
                    .as_mut()
                    .ok_or_else(|| err(n, format!("{} before @states", t[0])))?;
                for s in &t[1..] {
                    let q = at(n, b.state_id(s))?;
                    if t[0] == "@initial" {
                        b.add_initial(q);
                    } else {
                        b.add_final(q);
                    }
                }
            }
            d if d.starts_with('@') => return Err(err(n, format!("unknown directive `{d}`"))),
            _ => {
                let b = builder.as_mut().ok_or_else(|| err(n, "transition before @states"))?;
                if t.len() != 3 {
                    return Err(err(n, "expected `source symbol target`"));
                }
                let p = at(n, b.state_id(t[0]))?;
                let a = at(n, b.alphabet().lookup_or_err(t[1]))?;
                let q = at(n, b.state_id(t[2]))?;
                b.add_transition(p, a, q);
            }
        }
    }
    let nfa = builder.ok_or_else(|| err(0, "missing @states"))?.build();
    if kind == "dfa" && !nfa.is_deterministic() {
        return Err(err(0, "@type dfa but the automaton is not deterministic"));
    }
    Ok(nfa)
}

fn write_automaton(a: &Nfa, kind: &str) -> String {
    let mut out = String::new();
    let names = |it: &mut dyn Iterator<Item = usize>| it.map(|q| format!(" {}", a.name(q))).collect::<String>();
    let _ = writeln!(out, "@type {kind}");
    let _ = writeln!(out, "@alphabet {}", a.alphabet().symbols().join(" "));
    let _ = writeln!(out, "@states {}", a.state_names().join(" "));
    let _ = writeln!(out, "@initial{}", names(&mut a.initials().iter().copied()));
    let _ = writeln!(out, "@final{}", names(&mut a.finals().iter()));
    for (p, x, q) in a.transitions() {
        let _ = writeln!(out, "{} {} {}", a.name(p), a.alphabet().symbol(x), a.name(q));
    }
    out
}

pub fn write_nfa(a: &Nfa) -> String {
    write_automaton(a, "nfa")
}

pub fn write_dfa(d: &Dfa) -> String {
    write_automaton(d.as_nfa(), "dfa")
}

fn need(b: Option<&mut QdsBuilder>, line: usize) -> Result<&mut QdsBuilder> {
    b.ok_or_else(|| err(line, "@layers must come first"))
}

pub fn parse_qds(text: &str) -> Result<Qds> {
    if detect_type(text)? != "qds" {
        return Err(err(1, "expected a qds file"));
    }
    let mut alphabet: Option<Alphabet> = None;
    let mut builder: Option<QdsBuilder> = None;
    let mut seen_layer = Vec::new();
    let mut has_initial = false;
    for (n, t) in lines(text).skip(1) {
        match t[0] {
            "@alphabet" => {
                if alphabet.is_some() {
                    return Err(err(n, "duplicate @alphabet"));
                }
                alphabet = Some(at(n, Alphabet::new(t[1..].iter().copied()))?);
            }
            "@layers" => {
                if builder.is_some() {
                    return Err(err(n, "duplicate @layers"));
                }
                let al = alphabet.clone().ok_or_else(|| err(n, "@layers before @alphabet"))?;
                let m: usize = match t.as_slice() {
                    [_, m] => m.parse().map_err(|_| err(n, "bad layer count"))?,
                    _ => return Err(err(n, "expected `@layers N`")),
                };
                if m < 2 {
                    return Err(err(n, "a structure needs at least 2 layers"));
                }
                seen_layer = vec![false; m + 1];
                builder = Some(QdsBuilder::new(al, m));
            }
            "@layer" => {
                let b = need(builder.as_mut(), n)?;
                let j: usize = t
                    .get(1)
                    .and_then(|j| j.parse().ok())
                    .ok_or_else(|| err(n, "expected `@layer INDEX STATE...`"))?;
                if j == 0 || j >= seen_layer.len() || seen_layer[j] {
                    return Err(err(n, format!("bad or repeated layer index {j}")));
                }
                seen_layer[j] = true;
                for s in &t[2..] {
                    at(n, b.add_state(*s, j))?;
                }
            }
            "@initial" => {
                let b = need(builder.as_mut(), n)?;
                if t.len() != 2 || has_initial {
                    return Err(err(n, "expected a single `@initial STATE`"));
                }
                let q = at(n, b.state_id(t[1]))?;
                b.set_initial(q);
                has_initial = true;
            }
            "@final" => {
                let b = need(builder.as_mut(), n)?;
                for s in &t[1..] {
                    let q = at(n, b.state_id(s))?;
                    b.add_final(q);
                }
            }
            "@gamma" => {
                let b = need(builder.as_mut(), n)?;
                if t.len() != 4 {
                    return Err(err(n, "expected `@gamma SOURCE TARGET|_ SHIFT`"));
                }
                let p = at(n, b.state_id(t[1]))?;
                let target = match t[2] {
                    "_" => None,
                    s => Some(at(n, b.state_id(s))?),
                };
                let shift: usize = t[3].parse().map_err(|_| err(n, "bad shift"))?;
                at(n, b.set_gamma(p, target, shift))?;
            }
            d if d.starts_with('@') => return Err(err(n, format!("unknown directive `{d}`"))),
            _ => {
                let b = need(builder.as_mut(), n)?;
                if t.len() != 3 {
                    return Err(err(n, "expected `source symbol target`"));
                }
                let p = at(n, b.state_id(t[0]))?;
                let a = at(n, b.alphabet().lookup_or_err(t[1]))?;
                let q = at(n, b.state_id(t[2]))?;
                at(n, b.add_delta(p, a, q))?;
            }
        }
    }
    let b = builder.ok_or_else(|| err(0, "missing @layers"))?;
    b.build().map_err(|e| err(0, e.to_string()))
}

pub fn write_qds(s: &Qds) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "@type qds");
    let _ = writeln!(out, "@alphabet {}", s.alphabet().symbols().join(" "));
    let _ = writeln!(out, "@layers {}", s.num_layers());
    for j in 1..=s.num_layers() {
        let states: String = s.layer(j).iter().map(|&q| format!(" {}", s.name(q))).collect();
        let _ = writeln!(out, "@layer {j}{states}");
    }
    let _ = writeln!(out, "@initial {}", s.name(s.initial()));
    let finals: String = s.finals().map(|q| format!(" {}", s.name(q))).collect();
    let _ = writeln!(out, "@final{finals}");
    for (p, a, q) in s.delta_edges() {
        let _ = writeln!(out, "{} {} {}", s.name(p), s.alphabet().symbol(a), s.name(q));
    }
    for (p, g) in s.gamma_entries() {
        let target = g.target.map_or("_", |t| s.name(t));
        let _ = writeln!(out, "@gamma {} {} {}", s.name(p), target, g.shift);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nfa_round_trip() {
        let text = "@type nfa\n@alphabet a b\n@states x y # two states\n@initial x\n@final y\nx a y\nx a x\n";
        let a = parse_nfa(text).unwrap();
        assert_eq!(a.num_transitions(), 2);
        assert_eq!(parse_nfa(&write_nfa(&a)).unwrap(), a);
    }

    #[test]
    fn nfa_errors_carry_lines() {
        let bad = "@type nfa\n@alphabet a\n@states x\n@initial x\nx b x\n";
        assert_eq!(
            parse_nfa(bad).unwrap_err(),
            Error::Parse {
                line: 5,
                msg: "unknown symbol `b`".into()
            }
        );
        assert!(parse_nfa("@type nfa\nx a x\n").is_err());
        assert!(parse_nfa("hello").is_err());
        let nondet = "@type dfa\n@alphabet a\n@states x y\n@initial x\nx a x\nx a y\n";
        assert!(parse_nfa(nondet).is_err());
    }

    #[test]
    fn qds_rejects_bad_structure() {
        let base = "@type qds\n@alphabet a\n@layers 2\n@layer 1 p\n@layer 2 q\n@initial p\n";
        assert!(parse_qds(&format!("{base}p a q\n@gamma q p 1\n")).is_ok());
        // missing gamma
        assert!(parse_qds(&format!("{base}p a q\n")).is_err());
        // edge not advancing a layer
        assert!(parse_qds(&format!("{base}q a p\n@gamma q p 1\n")).is_err());
        // gamma target outside layer 1
        assert!(parse_qds(&format!("{base}@gamma q q 1\n")).is_err());
        // shift out of range
        assert!(parse_qds(&format!("{base}@gamma q p 3\n")).is_err());
    }
}
