//! Line-oriented text formats for systems, grammars and traces.
//!
//! `#` starts a comment, directives start with `@`, strings are bracketed
//! symbol lists and `[]` is the empty string.

mod grammar;
mod system;
mod trace;

use std::collections::BTreeSet;

pub use grammar::{parse_grammar, render_grammar};
pub use system::{parse_system, render_system};
pub use trace::{parse_trace, render_trace};

use crate::error::{Error, Result};
use crate::symbol::{SymString, Symbol};

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments removed, as `(line number, text)`.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Splits `@name rest` into `("name", "rest")`.
pub(crate) fn directive(line: usize, l: &str) -> Result<(&str, &str)> {
    let body = l
        .strip_prefix('@')
        .ok_or_else(|| parse_err(line, format!("expected a directive, found {l:?}")))?;
    Ok(match body.split_once(char::is_whitespace) {
        Some((d, rest)) => (d, rest.trim()),
        None => (body, ""),
    })
}

pub(crate) fn symbols(line: usize, s: &str) -> Result<Vec<Symbol>> {
    s.split_whitespace()
        .map(|t| Symbol::new(t).map_err(|e| parse_err(line, e.to_string())))
        .collect()
}

/// Cursor over the tail of a rule line.
pub(crate) struct Cursor<'a> {
    pub line: usize,
    rest: &'a str,
}

impl<'a> Cursor<'a> {
    pub fn new(line: usize, rest: &'a str) -> Self {
        Cursor {
            line,
            rest: rest.trim_start(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rest.is_empty()
    }

    pub fn peek_char(&self) -> Option<char> {
        self.rest.chars().next()
    }

    pub fn word(&mut self) -> Result<&'a str> {
        let end = self
            .rest
            .find(|c: char| c.is_whitespace() || "[](){}".contains(c))
            .unwrap_or(self.rest.len());
        if end == 0 {
            return Err(parse_err(self.line, "expected a word"));
        }
        let (w, rest) = self.rest.split_at(end);
        self.rest = rest.trim_start();
        Ok(w)
    }

    pub fn keyword(&mut self, kw: &str) -> bool {
        match self.rest.strip_prefix(kw) {
            Some(rest) if !rest.starts_with(|c: char| c.is_alphanumeric() || c == '_') => {
                self.rest = rest.trim_start();
                true
            }
            _ => false,
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        match self.rest.strip_prefix(c) {
            Some(rest) => {
                self.rest = rest.trim_start();
                Ok(())
            }
            None => Err(parse_err(self.line, format!("expected '{c}' before {:?}", self.rest))),
        }
    }

    /// `[a b c]`.
    pub fn string(&mut self) -> Result<SymString> {
        self.expect('[')?;
        let end = self
            .rest
            .find(']')
            .ok_or_else(|| parse_err(self.line, "unterminated '['"))?;
        let inner = &self.rest[..end];
        self.rest = self.rest[end + 1..].trim_start();
        Ok(symbols(self.line, inner)?.into())
    }

    /// `{[..] [..]}`.
    pub fn string_set(&mut self) -> Result<BTreeSet<SymString>> {
        self.expect('{')?;
        let mut out = BTreeSet::new();
        while self.peek_char() != Some('}') {
            if self.is_empty() {
                return Err(parse_err(self.line, "unterminated '{'"));
            }
            let w = self.string()?;
            if w.is_empty() {
                return Err(parse_err(self.line, "condition words must not be empty"));
            }
            out.insert(w);
        }
        self.expect('}')?;
        Ok(out)
    }

    /// Optional `permit {..}` then optional `forbid {..}`, then end of line.
    pub fn conditions(&mut self) -> Result<(BTreeSet<SymString>, BTreeSet<SymString>)> {
        let permit = if self.keyword("permit") { self.string_set()? } else { BTreeSet::new() };
        let forbid = if self.keyword("forbid") { self.string_set()? } else { BTreeSet::new() };
        if !self.is_empty() {
            return Err(parse_err(self.line, format!("unexpected trailing text {:?}", self.rest)));
        }
        Ok((permit, forbid))
    }
}

pub(crate) fn render_conditions(out: &mut String, permit: &BTreeSet<SymString>, forbid: &BTreeSet<SymString>) {
    let join = |set: &BTreeSet<SymString>| set.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    if !permit.is_empty() {
        out.push_str(&format!(" permit {{{}}}", join(permit)));
    }
    if !forbid.is_empty() {
        out.push_str(&format!(" forbid {{{}}}", join(forbid)));
    }
}

pub(crate) fn join_symbols<'a>(syms: impl IntoIterator<Item = &'a Symbol>) -> String {
    syms.into_iter().map(Symbol::name).collect::<Vec<_>>().join(" ")
}
