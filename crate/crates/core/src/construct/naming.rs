use std::fmt;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// A symbol introduced by one of the constructions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeneratedSymbol {
    /// `hat_X`.
    Hat(Symbol),
    /// `bar_X`.
    Bar(Symbol),
    /// Left terminator, `Bmark`.
    Begin,
    /// Right terminator, `Emark`.
    End,
    /// `sharp_<rule>` or, primed, `sharpp_<rule>`.
    Sharp { rule: String, primed: bool },
    /// `dollar<i>_<rule>`, `i` in 1..=5.
    Dollar { rule: String, index: u8 },
    /// `f_<rule>` or, primed, `fp_<rule>`.
    F { rule: String, primed: bool },
    /// `W_<rule>_<i>`.
    Chain { rule: String, index: usize },
    /// `<X>p_<rule>`, the intermediate nonterminal of a split rule.
    Split { base: Symbol, rule: String },
}

impl GeneratedSymbol {
    pub fn render(&self) -> Symbol {
        let name = self.to_string();
        Symbol::new(&name).unwrap_or_else(|_| panic!("generated name {name:?} is a valid symbol"))
    }
}

impl fmt::Display for GeneratedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratedSymbol::Hat(s) => write!(f, "hat_{s}"),
            GeneratedSymbol::Bar(s) => write!(f, "bar_{s}"),
            GeneratedSymbol::Begin => f.write_str("Bmark"),
            GeneratedSymbol::End => f.write_str("Emark"),
            GeneratedSymbol::Sharp { rule, primed } => {
                write!(f, "sharp{}_{rule}", if *primed { "p" } else { "" })
            }
            GeneratedSymbol::Dollar { rule, index } => write!(f, "dollar{index}_{rule}"),
            GeneratedSymbol::F { rule, primed } => write!(f, "f{}_{rule}", if *primed { "p" } else { "" }),
            GeneratedSymbol::Chain { rule, index } => write!(f, "W_{rule}_{index}"),
            GeneratedSymbol::Split { base, rule } => write!(f, "{base}p_{rule}"),
        }
    }
}

pub fn hat(s: &Symbol) -> Symbol {
    GeneratedSymbol::Hat(s.clone()).render()
}

pub fn bar(s: &Symbol) -> Symbol {
    GeneratedSymbol::Bar(s.clone()).render()
}

/// Allocates generated symbols, refusing names already in use.
pub(crate) struct Fresh {
    taken: IndexSet<Symbol>,
}

impl Fresh {
    pub fn new<'a>(existing: impl IntoIterator<Item = &'a Symbol>) -> Self {
        Fresh {
            taken: existing.into_iter().cloned().collect(),
        }
    }

    pub fn take(&mut self, g: GeneratedSymbol) -> Result<Symbol> {
        let s = g.render();
        if !self.taken.insert(s.clone()) {
            return Err(Error::Collision(s));
        }
        Ok(s)
    }
}
