//! Ordered alphabets and word helpers.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Index of a symbol in its [`Alphabet`].
pub type SymbolId = usize;

/// A word as a sequence of symbol indices.
pub type Word = Vec<SymbolId>;

/// An ordered set of symbol tokens.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, SymbolId>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for s in symbols {
            let s = s.into();
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::Input(format!("invalid symbol token `{s}`")));
            }
            if alphabet.index.contains_key(&s) {
                return Err(Error::Input(format!("duplicate symbol `{s}`")));
            }
            alphabet.index.insert(s.clone(), alphabet.symbols.len());
            alphabet.symbols.push(s);
        }
        Ok(alphabet)
    }

    /// The alphabet `a`, `b`, `c`, ... of the given size.
    pub fn letters(size: usize) -> Self {
        assert!(size <= 26, "at most 26 letters");
        Self::new((0..size).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, a: SymbolId) -> &str {
        &self.symbols[a]
    }

    pub fn lookup(&self, token: &str) -> Option<SymbolId> {
        self.index.get(token).copied()
    }

    pub fn lookup_or_err(&self, token: &str) -> Result<SymbolId> {
        self.lookup(token)
            .ok_or_else(|| Error::UnknownSymbol(token.to_string()))
    }

    /// True when every symbol is a single character, so words can be written
    /// without separators.
    pub fn is_compact(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Whitespace-separated tokens are used when the input
    /// contains whitespace; otherwise each character is a symbol when the
    /// alphabet is compact, and the whole string is one token when it is not.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if text.contains(char::is_whitespace) {
            return text.split_whitespace().map(|t| self.lookup_or_err(t)).collect();
        }
        if self.is_compact() {
            let mut buf = [0u8; 4];
            return text
                .chars()
                .map(|c| self.lookup_or_err(c.encode_utf8(&mut buf)))
                .collect();
        }
        Ok(vec![self.lookup_or_err(text)?])
    }

    /// Renders a word for humans: concatenated for compact alphabets,
    /// space-separated otherwise. The empty word renders as the empty string.
    pub fn format_word(&self, w: &[SymbolId]) -> String {
        let sep = if self.is_compact() { "" } else { " " };
        w.iter().map(|&a| self.symbol(a)).collect::<Vec<_>>().join(sep)
    }

    /// Renders a word as a single whitespace-free token (`_` for ε).
    pub fn token_word(&self, w: &[SymbolId]) -> String {
        if w.is_empty() {
            return "_".to_string();
        }
        let sep = if self.is_compact() { "" } else { "." };
        w.iter().map(|&a| self.symbol(a)).collect::<Vec<_>>().join(sep)
    }

    pub(crate) fn check_word(&self, w: &[SymbolId]) -> Result<()> {
        match w.iter().find(|&&a| a >= self.len()) {
            Some(a) => Err(Error::UnknownSymbol(format!("#{a}"))),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_compact_and_spaced() {
        let ab = Alphabet::letters(2);
        assert_eq!(ab.parse_word("abba").unwrap(), vec![0, 1, 1, 0]);
        assert_eq!(ab.parse_word("a b").unwrap(), vec![0, 1]);
        assert_eq!(ab.parse_word("").unwrap(), Vec::<usize>::new());
        assert!(matches!(ab.parse_word("abc"), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn multi_char_symbols() {
        let al = Alphabet::new(["if", "then"]).unwrap();
        assert!(!al.is_compact());
        assert_eq!(al.parse_word("if then if").unwrap(), vec![0, 1, 0]);
        assert_eq!(al.parse_word("then").unwrap(), vec![1]);
        assert_eq!(al.token_word(&[0, 1]), "if.then");
        assert_eq!(al.format_word(&[0, 1]), "if then");
    }

    #[test]
    fn rejects_duplicates() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["a b"]).is_err());
    }
}
