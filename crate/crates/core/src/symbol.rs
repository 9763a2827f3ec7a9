//! Symbols and strings of symbols.
//!
//! A [`Symbol`] is an atomic named token. Decorations such as hats, bars or
//! primes are part of the name (`hat_A`, `bar_A`, `S'`), so a string like
//! `[B hat_S bar_S E]` has four symbols.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Characters that may never appear in a symbol name.
pub const RESERVED: &[char] = &['[', ']', '{', '}', '(', ')', '#'];

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Result<Self> {
        if name.is_empty()
            || name.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c))
        {
            return Err(Error::InvalidSymbol(name.to_string()));
        }
        Ok(Symbol(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Symbol::new(s)
    }
}

/// A finite sequence of symbols. The empty string is λ.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymString(Vec<Symbol>);

impl SymString {
    pub fn empty() -> Self {
        SymString(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    /// `|w|_a`: number of occurrences of `a`.
    pub fn count(&self, a: &Symbol) -> usize {
        self.0.iter().filter(|s| *s == a).count()
    }

    /// True iff `word` occurs as a contiguous block. λ occurs everywhere.
    pub fn contains_subword(&self, word: &[Symbol]) -> bool {
        word.is_empty() || self.0.windows(word.len()).any(|w| w == word)
    }

    pub fn concat(&self, other: &SymString) -> SymString {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        SymString(v)
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    /// Ordering used for printed listings: shorter strings first, then
    /// lexicographic on symbol names.
    pub fn listing_cmp(&self, other: &SymString) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<Symbol>> for SymString {
    fn from(v: Vec<Symbol>) -> Self {
        SymString(v)
    }
}

impl From<&[Symbol]> for SymString {
    fn from(v: &[Symbol]) -> Self {
        SymString(v.to_vec())
    }
}

impl FromIterator<Symbol> for SymString {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        SymString(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a SymString {
    type Item = &'a Symbol;
    type IntoIter = std::slice::Iter<'a, Symbol>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl std::ops::Index<usize> for SymString {
    type Output = Symbol;

    fn index(&self, i: usize) -> &Symbol {
        &self.0[i]
    }
}

impl fmt::Display for SymString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(s.name())?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for SymString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `a b c`, `[a b c]` and `[]`.
impl FromStr for SymString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = match t.strip_prefix('[') {
            Some(rest) => rest
                .strip_suffix(']')
                .ok_or_else(|| Error::InvalidSymbol(s.to_string()))?,
            None => t,
        };
        inner.split_whitespace().map(Symbol::new).collect()
    }
}

/// Sorts a set of strings for listing output.
pub fn sorted_listing<'a, I>(words: I) -> Vec<SymString>
where
    I: IntoIterator<Item = &'a SymString>,
{
    let mut v: Vec<SymString> = words.into_iter().cloned().collect();
    v.sort_by(SymString::listing_cmp);
    v
}
