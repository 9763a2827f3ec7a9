use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::engine::{enumerate_language, SearchBounds, SearchOptions, SearchStats};
use crate::error::{Error, Result};
use crate::grammar::{derive_grammar, Grammar};
use crate::symbol::{sorted_listing, SymString, Symbol};
use crate::system::InsDelSystem;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Mapping {
    Identity,
    Unhat,
    Table(BTreeMap<Symbol, Symbol>),
}

/// Letter-to-letter map from a system's terminals to a grammar's terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphabetMorphism {
    mapping: Mapping,
}

impl AlphabetMorphism {
    pub fn identity() -> Self {
        AlphabetMorphism {
            mapping: Mapping::Identity,
        }
    }

    /// `hat_a ↦ a`; symbols without the `hat_` prefix are not mapped.
    pub fn unhat() -> Self {
        AlphabetMorphism {
            mapping: Mapping::Unhat,
        }
    }

    /// An explicit table; it must be injective.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Symbol, Symbol)>) -> Result<Self> {
        let mut table = BTreeMap::new();
        let mut images = BTreeSet::new();
        for (from, to) in pairs {
            if let Some(prev) = table.insert(from.clone(), to.clone()) {
                if prev != to {
                    return Err(Error::Morphism(format!("{from} is mapped twice")));
                }
                continue;
            }
            if !images.insert(to.clone()) {
                return Err(Error::Morphism(format!("{to} is the image of two symbols")));
            }
        }
        Ok(AlphabetMorphism {
            mapping: Mapping::Table(table),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.mapping == Mapping::Identity
    }

    pub fn map_symbol(&self, s: &Symbol) -> Option<Symbol> {
        match &self.mapping {
            Mapping::Identity => Some(s.clone()),
            Mapping::Unhat => s
                .name()
                .strip_prefix("hat_")
                .filter(|r| !r.is_empty())
                .map(|r| Symbol::new(r).expect("suffix of a valid symbol")),
            Mapping::Table(t) => t.get(s).cloned(),
        }
    }

    pub fn apply(&self, w: &SymString) -> Result<SymString> {
        w.iter()
            .map(|s| {
                self.map_symbol(s)
                    .ok_or_else(|| Error::Morphism(format!("no image for {s}")))
            })
            .collect()
    }

    /// Fails on the first symbol of `alphabet` without an image.
    pub fn check_total<'a>(&self, alphabet: impl IntoIterator<Item = &'a Symbol>) -> Result<()> {
        for s in alphabet {
            if self.map_symbol(s).is_none() {
                return Err(Error::Morphism(format!("no image for terminal {s}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equal,
    /// The system's language is strictly contained in the grammar's.
    Subset,
    /// The system's language strictly contains the grammar's.
    Superset,
    Incomparable,
    /// At least one search hit its state budget.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equal => "equal",
            Verdict::Subset => "subset",
            Verdict::Superset => "superset",
            Verdict::Incomparable => "incomparable",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Verdict::Equal,
            Verdict::Subset,
            Verdict::Superset,
            Verdict::Incomparable,
            Verdict::Inconclusive,
        ]
        .into_iter()
        .find(|v| v.as_str() == s)
        .ok_or_else(|| Error::Precondition(format!("unknown verdict {s}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    /// The system's terminal strings after the morphism.
    pub system_terminals: BTreeSet<SymString>,
    pub grammar_terminals: BTreeSet<SymString>,
    /// Derived by the grammar only.
    pub missing: BTreeSet<SymString>,
    /// Produced by the system only.
    pub extra: BTreeSet<SymString>,
    pub both_exhausted: bool,
    pub verdict: Verdict,
    pub system_stats: SearchStats,
    pub grammar_stats: SearchStats,
}

impl ComparisonReport {
    pub fn from_sets(
        system_terminals: BTreeSet<SymString>,
        grammar_terminals: BTreeSet<SymString>,
        both_exhausted: bool,
    ) -> Self {
        let missing: BTreeSet<_> = grammar_terminals.difference(&system_terminals).cloned().collect();
        let extra: BTreeSet<_> = system_terminals.difference(&grammar_terminals).cloned().collect();
        let verdict = match (both_exhausted, missing.is_empty(), extra.is_empty()) {
            (false, _, _) => Verdict::Inconclusive,
            (true, true, true) => Verdict::Equal,
            (true, false, true) => Verdict::Subset,
            (true, true, false) => Verdict::Superset,
            (true, false, false) => Verdict::Incomparable,
        };
        ComparisonReport {
            system_terminals,
            grammar_terminals,
            missing,
            extra,
            both_exhausted,
            verdict,
            system_stats: SearchStats::default(),
            grammar_stats: SearchStats::default(),
        }
    }

    /// `VERDICT`, then `EXTRA` and `MISSING` lines in listing order.
    pub fn render_machine(&self) -> String {
        let mut out = format!("VERDICT {}\n", self.verdict);
        for w in sorted_listing(&self.extra) {
            out.push_str(&format!("EXTRA {w}\n"));
        }
        for w in sorted_listing(&self.missing) {
            out.push_str(&format!("MISSING {w}\n"));
        }
        out
    }

    pub fn render_text(&self) -> String {
        let list = |set: &BTreeSet<SymString>| {
            sorted_listing(set)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::new();
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out.push_str(&format!(
            "system:  {} strings ({})\n",
            self.system_terminals.len(),
            self.system_stats
        ));
        out.push_str(&format!(
            "grammar: {} strings ({})\n",
            self.grammar_terminals.len(),
            self.grammar_stats
        ));
        if !self.both_exhausted {
            out.push_str("a search hit its state budget; differences are not certified\n");
        }
        if !self.extra.is_empty() {
            out.push_str(&format!("only from the system: {}\n", list(&self.extra)));
        }
        if !self.missing.is_empty() {
            out.push_str(&format!("only from the grammar: {}\n", list(&self.missing)));
        }
        out
    }
}

/// Enumerates both sides with the same bounds and compares the images of the
/// system's strings with the grammar's strings.
pub fn compare_languages(
    sys: &InsDelSystem,
    g: &Grammar,
    morphism: &AlphabetMorphism,
    bounds: &SearchBounds,
    opts: &SearchOptions,
) -> Result<ComparisonReport> {
    morphism.check_total(sys.terminals())?;
    let s = enumerate_language(sys, bounds, opts)?;
    let o = derive_grammar(g, bounds, opts)?;
    let mapped = s
        .terminals
        .iter()
        .map(|w| morphism.apply(w))
        .collect::<Result<BTreeSet<_>>>()?;
    let mut report = ComparisonReport::from_sets(mapped, o.terminals, s.exhausted && o.exhausted);
    report.system_stats = s.stats;
    report.grammar_stats = o.stats;
    Ok(report)
}
