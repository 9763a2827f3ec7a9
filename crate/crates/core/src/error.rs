use thiserror::Error;

use crate::symbol::Symbol;

/// Errors raised while building or transforming systems and grammars.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid symbol name {0:?}")]
    InvalidSymbol(String),
    #[error("unknown symbol {symbol} in {context}")]
    UnknownSymbol { symbol: Symbol, context: String },
    #[error("rule {0} has an empty body")]
    EmptyBody(String),
    #[error("duplicate rule id {0}")]
    DuplicateRule(String),
    #[error("invalid rule id {0:?}")]
    InvalidRuleId(String),
    #[error("terminal {0} is not in the alphabet")]
    TerminalNotInAlphabet(Symbol),
    #[error("system has no axioms")]
    NoAxioms,
    #[error("malformed grammar: {0}")]
    MalformedGrammar(String),
    #[error("expected a grammar of kind {expected}, found {found}")]
    WrongKind { expected: String, found: String },
    #[error("generated symbol {0} collides with an existing symbol")]
    Collision(Symbol),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),
    #[error("morphism error: {0}")]
    Morphism(String),
    #[error("grammar is not in special Geffert normal form: {0}")]
    NotSgnf(String),
    #[error("{message} at line {line}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
