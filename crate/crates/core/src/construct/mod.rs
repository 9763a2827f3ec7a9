//! Compilers from grammars to insertion-deletion systems, and the
//! context-free approximation of context-free insertion systems.

mod cf;
mod coding;
mod naming;
mod rc200;
mod sc22;

pub use cf::{cf_approximation, CfApproximation};
pub use coding::{begin_marker, decode_word, encode_word, end_marker, is_normalized, normalization_condition};
pub use naming::{bar, hat, GeneratedSymbol};
pub use rc200::{compile_rc200, Rc200Artifacts, Rc200Output};
pub use sc22::{compile_sc22, Sc22Artifacts, Sc22Output};
