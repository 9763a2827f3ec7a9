//! Conditional context-free grammars and the special Geffert normal form.

mod derive;
mod normalize;
mod sgnf;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use indexmap::IndexSet;

pub use derive::derive_grammar;
pub use normalize::{chain_symbol, eliminate_lambda, normalize_rc_rhs};
pub use sgnf::{validate_sgnf, validate_sgnf_with, SgnfReport, SgnfViolation};

use crate::error::{Error, Result};
use crate::rule::join;
use crate::symbol::{SymString, Symbol, RESERVED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrammarKind {
    /// Context-free, no conditions.
    Cf,
    /// Random context: conditions are single nonterminals.
    Rc,
    /// Semi-conditional: conditions are arbitrary non-empty words.
    Sc,
    /// Special Geffert normal form.
    Sgnf,
}

impl GrammarKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GrammarKind::Cf => "cf",
            GrammarKind::Rc => "rc",
            GrammarKind::Sc => "sc",
            GrammarKind::Sgnf => "sgnf",
        }
    }
}

impl fmt::Display for GrammarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GrammarKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cf" => Ok(GrammarKind::Cf),
            "rc" => Ok(GrammarKind::Rc),
            "sc" => Ok(GrammarKind::Sc),
            "sgnf" => Ok(GrammarKind::Sgnf),
            other => Err(Error::MalformedGrammar(format!("unknown grammar kind {other}"))),
        }
    }
}

/// `(lhs → rhs; permit, forbid)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrammarRule {
    pub id: String,
    pub lhs: SymString,
    pub rhs: SymString,
    pub permit: BTreeSet<SymString>,
    pub forbid: BTreeSet<SymString>,
}

impl GrammarRule {
    pub fn new(id: impl Into<String>, lhs: SymString, rhs: SymString) -> Self {
        GrammarRule {
            id: id.into(),
            lhs,
            rhs,
            permit: BTreeSet::new(),
            forbid: BTreeSet::new(),
        }
    }

    pub fn with_permit<I: IntoIterator<Item = SymString>>(mut self, words: I) -> Self {
        self.permit.extend(words);
        self
    }

    pub fn with_forbid<I: IntoIterator<Item = SymString>>(mut self, words: I) -> Self {
        self.forbid.extend(words);
        self
    }

    pub fn has_conditions(&self) -> bool {
        !self.permit.is_empty() || !self.forbid.is_empty()
    }
}

impl fmt::Display for GrammarRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.id, self.lhs, self.rhs)?;
        if self.has_conditions() {
            write!(f, " permit {{{}}} forbid {{{}}}", join(&self.permit), join(&self.forbid))?;
        }
        Ok(())
    }
}

/// The nonterminal partition of a special-Geffert-normal-form grammar.
///
/// `ndouble` lists the four symbols playing the roles A, B, C, D; the
/// erasing rules are `AB → λ` and `CD → λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SgnfParts {
    pub nprime: IndexSet<Symbol>,
    pub ndouble: [Symbol; 4],
    pub sprime: Symbol,
}

impl SgnfParts {
    pub fn erasing_pairs(&self) -> [(&Symbol, &Symbol); 2] {
        [
            (&self.ndouble[0], &self.ndouble[1]),
            (&self.ndouble[2], &self.ndouble[3]),
        ]
    }

    pub fn is_ndouble(&self, s: &Symbol) -> bool {
        self.ndouble.contains(s)
    }
}

/// `G = (N, T, S, P)` with per-rule conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    name: String,
    kind: GrammarKind,
    nonterminals: IndexSet<Symbol>,
    terminals: IndexSet<Symbol>,
    start: Symbol,
    rules: Vec<GrammarRule>,
    sgnf: Option<SgnfParts>,
}

impl Grammar {
    /// Builds a cf, rc or sc grammar.
    pub fn new(
        name: impl Into<String>,
        kind: GrammarKind,
        nonterminals: impl IntoIterator<Item = Symbol>,
        terminals: impl IntoIterator<Item = Symbol>,
        start: Symbol,
        rules: Vec<GrammarRule>,
    ) -> Result<Self> {
        if kind == GrammarKind::Sgnf {
            return Err(Error::MalformedGrammar(
                "use Grammar::sgnf for special Geffert normal form grammars".into(),
            ));
        }
        let g = Grammar {
            name: name.into(),
            kind,
            nonterminals: nonterminals.into_iter().collect(),
            terminals: terminals.into_iter().collect(),
            start,
            rules,
            sgnf: None,
        };
        g.validate()?;
        Ok(g)
    }

    /// Builds an SGNF grammar; `N = N′ ∪ N″`.
    pub fn sgnf(
        name: impl Into<String>,
        parts: SgnfParts,
        terminals: impl IntoIterator<Item = Symbol>,
        start: Symbol,
        rules: Vec<GrammarRule>,
    ) -> Result<Self> {
        let mut nonterminals = parts.nprime.clone();
        nonterminals.extend(parts.ndouble.iter().cloned());
        let g = Grammar {
            name: name.into(),
            kind: GrammarKind::Sgnf,
            nonterminals,
            terminals: terminals.into_iter().collect(),
            start,
            rules,
            sgnf: Some(parts),
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedGrammar(m));
        if let Some(s) = self.nonterminals.iter().find(|s| self.terminals.contains(*s)) {
            return bad(format!("{s} is both a terminal and a nonterminal"));
        }
        if !self.nonterminals.contains(&self.start) {
            return bad(format!("start symbol {} is not a nonterminal", self.start));
        }
        if let Some(p) = &self.sgnf {
            let distinct: HashSet<&Symbol> = p.ndouble.iter().collect();
            if distinct.len() != 4 {
                return bad("N″ must have four distinct symbols".into());
            }
            if let Some(s) = p.ndouble.iter().find(|s| p.nprime.contains(*s)) {
                return bad(format!("{s} is in both N′ and N″"));
            }
            if !p.nprime.contains(&p.sprime) {
                return bad(format!("S′ = {} is not in N′", p.sprime));
            }
            if !p.nprime.contains(&self.start) {
                return bad(format!("start symbol {} is not in N′", self.start));
            }
        }
        let mut ids = HashSet::new();
        for r in &self.rules {
            if r.id.is_empty() || r.id.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
                return Err(Error::InvalidRuleId(r.id.clone()));
            }
            if !ids.insert(r.id.as_str()) {
                return Err(Error::DuplicateRule(r.id.clone()));
            }
            for w in [&r.lhs, &r.rhs].into_iter().chain(&r.permit).chain(&r.forbid) {
                if let Some(s) = w.iter().find(|s| !self.is_symbol(s)) {
                    return Err(Error::UnknownSymbol {
                        symbol: s.clone(),
                        context: format!("rule {}", r.id),
                    });
                }
            }
            if r.permit.iter().chain(&r.forbid).any(SymString::is_empty) {
                return bad(format!("rule {} has an empty condition word", r.id));
            }
            match self.kind {
                GrammarKind::Sgnf => {
                    if r.lhs.is_empty() || r.lhs.len() > 2 {
                        return bad(format!("rule {}: left-hand side must have 1 or 2 symbols", r.id));
                    }
                    if r.lhs.iter().any(|s| !self.nonterminals.contains(s)) {
                        return bad(format!("rule {}: left-hand side must be nonterminal", r.id));
                    }
                }
                _ => {
                    if r.lhs.len() != 1 || !self.nonterminals.contains(&r.lhs[0]) {
                        return bad(format!(
                            "rule {}: left-hand side must be a single nonterminal",
                            r.id
                        ));
                    }
                }
            }
            match self.kind {
                GrammarKind::Cf if r.has_conditions() => {
                    return bad(format!("rule {}: context-free rules carry no conditions", r.id));
                }
                GrammarKind::Rc => {
                    if let Some(w) = r
                        .permit
                        .iter()
                        .chain(&r.forbid)
                        .find(|w| w.len() != 1 || !self.nonterminals.contains(&w[0]))
                    {
                        return bad(format!(
                            "rule {}: random-context condition {w} must be a single nonterminal",
                            r.id
                        ));
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn is_symbol(&self, s: &Symbol) -> bool {
        self.nonterminals.contains(s) || self.terminals.contains(s)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> GrammarKind {
        self.kind
    }

    pub fn nonterminals(&self) -> &IndexSet<Symbol> {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &IndexSet<Symbol> {
        &self.terminals
    }

    pub fn start(&self) -> &Symbol {
        &self.start
    }

    pub fn rules(&self) -> &[GrammarRule] {
        &self.rules
    }

    pub fn sgnf_parts(&self) -> Option<&SgnfParts> {
        self.sgnf.as_ref()
    }

    /// `N ∪ T` in declaration order, nonterminals first.
    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.nonterminals.iter().chain(self.terminals.iter())
    }

    pub fn require_kind(&self, expected: GrammarKind) -> Result<()> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(Error::WrongKind {
                expected: expected.to_string(),
                found: self.kind.to_string(),
            })
        }
    }

    /// Same grammar with a different rule set (and extra nonterminals).
    pub fn with_rules(
        &self,
        extra_nonterminals: impl IntoIterator<Item = Symbol>,
        rules: Vec<GrammarRule>,
    ) -> Result<Self> {
        let mut g = self.clone();
        g.nonterminals.extend(extra_nonterminals);
        g.rules = rules;
        g.validate()?;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SymString {
        s.parse().unwrap()
    }

    fn syms(s: &str) -> Vec<Symbol> {
        w(s).into_vec()
    }

    fn sym(s: &str) -> Symbol {
        Symbol::new(s).unwrap()
    }

    #[test]
    fn rc_conditions_must_be_nonterminals() {
        let r = GrammarRule::new("r", w("S"), w("a")).with_permit([w("a")]);
        let g = Grammar::new("g", GrammarKind::Rc, syms("S"), syms("a"), sym("S"), vec![r]);
        assert!(matches!(g, Err(Error::MalformedGrammar(_))));
    }

    #[test]
    fn cf_rejects_conditions_and_long_lhs() {
        let r = GrammarRule::new("r", w("S"), w("a")).with_forbid([w("S")]);
        assert!(Grammar::new("g", GrammarKind::Cf, syms("S"), syms("a"), sym("S"), vec![r]).is_err());
        let r = GrammarRule::new("r", w("S S"), w("a"));
        assert!(Grammar::new("g", GrammarKind::Sc, syms("S"), syms("a"), sym("S"), vec![r]).is_err());
    }

    #[test]
    fn basic_invariants() {
        assert!(Grammar::new("g", GrammarKind::Cf, syms("S"), syms("S"), sym("S"), vec![]).is_err());
        assert!(Grammar::new("g", GrammarKind::Cf, syms("A"), syms("a"), sym("S"), vec![]).is_err());
        let r = GrammarRule::new("r", w("S"), w("b"));
        assert!(matches!(
            Grammar::new("g", GrammarKind::Cf, syms("S"), syms("a"), sym("S"), vec![r]),
            Err(Error::UnknownSymbol { .. })
        ));
    }
}
