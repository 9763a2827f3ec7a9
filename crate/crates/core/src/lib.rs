//! Conditional insertion-deletion systems: a bounded execution engine,
//! compilers from random context and Geffert normal form grammars, and
//! oracle-based verification.
//!
//! The guide in `book/` walks through each module; its examples run as
//! doctests of this crate.

pub mod construct;
pub mod engine;
pub mod error;
pub mod grammar;
pub mod rule;
pub mod symbol;
pub mod system;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use rule::{ConditionedRule, ContextRule, Gate, Mode};
pub use symbol::{SymString, Symbol};
pub use system::{degree_of, size_of, Degree, InsDelSystem, SizeVector, Successor};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/systems.md")]
    mod systems {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/grammars.md")]
    mod grammars {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
