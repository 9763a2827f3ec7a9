//! Cross-checks: bounded language comparison against the grammar oracle,
//! replay of the constructions' displayed derivations, and the pumping
//! example for left-context insertion.

mod compare;
mod golden;
mod pump;

pub use compare::{compare_languages, AlphabetMorphism, ComparisonReport, Verdict};
pub use golden::{
    check_golden_traces, erasing_grammar, construction_golden_suite, single_a_grammar, star_grammar, template_grammar,
    Expectation, GoldenCase, GoldenOutcome, GoldenReport,
};
pub use pump::{gamma_ab, gamma_ab_trace};
