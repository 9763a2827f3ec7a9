use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::grammar::{eliminate_lambda, Grammar, GrammarKind, GrammarRule};
use crate::rule::Mode;
use crate::symbol::{SymString, Symbol};
use crate::system::InsDelSystem;

#[derive(Debug, Clone)]
pub struct CfApproximation {
    /// The grammar before λ-elimination.
    pub with_lambda: Grammar,
    /// The result.
    pub grammar: Grammar,
    pub notes: Vec<String>,
}

fn fresh_name(base: &str, taken: &IndexSet<Symbol>) -> Symbol {
    let mut name = base.to_string();
    while taken.contains(&Symbol::new(&name).expect("valid")) {
        name.push('\'');
    }
    Symbol::new(&name).expect("valid")
}

/// Context-free grammar for a system whose rules all insert one symbol
/// without context.
///
/// With a start symbol `S0` and a filler `S`, the rules are
/// `S0 → S a₁ S … aₙ S` for every terminal axiom `a₁…aₙ`, `S → S a S` for
/// every inserted terminal `a`, and `S → λ`; λ-productions are then
/// eliminated. Rule conditions are ignored, so for a conditioned system the
/// grammar over-approximates. Axioms or insertions containing nonterminals
/// are dropped: without deletion rules they cannot lead to terminal strings.
pub fn cf_approximation(sys: &InsDelSystem) -> Result<CfApproximation> {
    let mut notes = Vec::new();
    let mut inserted: IndexSet<Symbol> = IndexSet::new();
    for r in sys.rules() {
        let b = &r.base;
        if b.mode != Mode::Insertion {
            return Err(Error::Precondition(format!("rule {} is a deletion rule", r.id)));
        }
        if b.body.len() != 1 || !b.left.is_empty() || !b.right.is_empty() {
            return Err(Error::Precondition(format!(
                "rule {} is not a context-free single-symbol insertion",
                r.id
            )));
        }
        if !r.permit.is_empty() || !r.forbid.is_empty() {
            notes.push(format!("conditions of rule {} ignored (over-approximation)", r.id));
        }
        if sys.terminals().contains(&b.body[0]) {
            inserted.insert(b.body[0].clone());
        }
    }
    if sys.axioms().iter().any(SymString::is_empty) {
        return Err(Error::Precondition("the empty word is an axiom".into()));
    }

    let taken: IndexSet<Symbol> = sys.alphabet().clone();
    let start = fresh_name("S0", &taken);
    let filler = fresh_name("S", &taken);
    let s = || filler.clone();
    let mut rules = Vec::new();
    for (i, ax) in sys.axioms().iter().filter(|a| sys.is_terminal_word(a)).enumerate() {
        let mut rhs = vec![s()];
        for a in ax {
            rhs.push(a.clone());
            rhs.push(s());
        }
        rules.push(GrammarRule::new(
            format!("axiom{}", i + 1),
            SymString::from(vec![start.clone()]),
            rhs.into(),
        ));
    }
    for a in &inserted {
        rules.push(GrammarRule::new(
            format!("insert_{a}"),
            SymString::from(vec![s()]),
            SymString::from(vec![s(), a.clone(), s()]),
        ));
    }
    rules.push(GrammarRule::new("empty", SymString::from(vec![s()]), SymString::empty()));
    let with_lambda = Grammar::new(
        format!("{}_cf", sys.name()),
        GrammarKind::Cf,
        [start.clone(), filler.clone()],
        sys.terminals().iter().cloned(),
        start,
        rules,
    )?;
    let grammar = eliminate_lambda(&with_lambda)?;
    Ok(CfApproximation {
        with_lambda,
        grammar,
        notes,
    })
}
