mod support;

use std::collections::BTreeSet;
use std::path::PathBuf;

use insdel::construct::{compile_rc200, compile_sc22};
use insdel::engine::{enumerate_language, replay, SearchBounds, SearchOptions, StartPolicy};
use insdel::grammar::{derive_grammar, normalize_rc_rhs, validate_sgnf, Grammar, GrammarKind, GrammarRule};
use insdel::text::{parse_grammar, parse_system, parse_trace, render_system};
use insdel::verify::{compare_languages, single_a_grammar, star_grammar, AlphabetMorphism, Verdict};
use insdel::SymString;
use support::*;

fn sample(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples").join(name);
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn sample_files_match_the_library_grammars() {
    assert_eq!(parse_grammar(&sample("g1.grammar")).unwrap(), single_a_grammar());
    assert_eq!(parse_grammar(&sample("star.grammar")).unwrap(), star_grammar());
    assert!(validate_sgnf(&single_a_grammar()).unwrap().valid());
}

#[test]
fn sample_trace_replays() {
    let sys = parse_system(&sample("gamma_ab.system")).unwrap();
    let t = parse_trace(&sample("gamma_ab.trace")).unwrap();
    assert_eq!(replay(&sys, &t, StartPolicy::Axiom).unwrap(), w("a b a b"));
}

#[test]
fn compiled_file_compares_equal_after_reparse() {
    let g = single_a_grammar();
    let sys = parse_system(&render_system(&compile_rc200(&g).unwrap().system)).unwrap();
    let b = SearchBounds { max_terminal_len: 3, max_form_len: 12, max_steps: 48, max_states: 1_000_000 };
    let r = compare_languages(&sys, &g, &AlphabetMorphism::identity(), &b, &SearchOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Equal);
}

#[test]
fn single_nprime_pruning_keeps_the_language() {
    let g = single_a_grammar();
    let sys = compile_rc200(&g).unwrap().system;
    let b = SearchBounds { max_terminal_len: 3, max_form_len: 12, max_steps: 48, max_states: 1_000_000 };
    let plain = enumerate_language(&sys, &b, &SearchOptions::sequential()).unwrap();
    let opts = SearchOptions { assume_single_nprime: true, ..SearchOptions::sequential() };
    let pruned = enumerate_language(&sys, &b, &opts).unwrap();
    assert_eq!(plain.terminals, pruned.terminals);
    assert!(pruned.stats.states <= plain.stats.states);
}

#[test]
fn sc22_language_of_a_split_rule() {
    // S → a b, S → a S b b: |rhs| = 4 is split into a chain.
    let g = Grammar::new(
        "g",
        GrammarKind::Rc,
        syms(&["S"]),
        syms(&["a", "b"]),
        sym("S"),
        vec![GrammarRule::new("1", w("S"), w("a b")), GrammarRule::new("2", w("S"), w("a S b b"))],
    )
    .unwrap();
    let sys = compile_sc22(&g).unwrap().system;
    let b = SearchBounds { max_terminal_len: 2, max_form_len: 12, max_steps: 60, max_states: 2_000_000 };
    let r = compare_languages(&sys, &g, &AlphabetMorphism::unhat(), &b, &SearchOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Equal, "{}", r.render_text());
    assert_eq!(r.system_terminals, [w("a b")].into_iter().collect());
}

/// Rules that are not split keep their conditions, so they may fire while a
/// chain is half built. Here the input derives nothing: `X → cc` needs `Y`
/// gone and `Y → b` needs `X` gone. After splitting `A → a Y a`, `X → cc`
/// fires while only the chain symbol stands for `A`.
#[test]
fn unsplit_rules_can_fire_inside_a_chain() {
    let g = Grammar::new(
        "interleave",
        GrammarKind::Rc,
        syms(&["S", "A", "X", "Y"]),
        syms(&["a", "b", "c"]),
        sym("S"),
        vec![
            GrammarRule::new("1", w("S"), w("A X")),
            GrammarRule::new("2", w("A"), w("a Y a")),
            GrammarRule::new("3", w("X"), w("c c")).with_forbid([w("A"), w("Y")]),
            GrammarRule::new("4", w("Y"), w("b")).with_forbid([w("X")]),
        ],
    )
    .unwrap();
    let b = SearchBounds::with_terminal_len(5);
    let opts = SearchOptions::sequential();
    let before = derive_grammar(&g, &b, &opts).unwrap();
    let after = derive_grammar(&normalize_rc_rhs(&g).unwrap(), &b, &opts).unwrap();
    assert!(before.terminals.is_empty());
    let extra: BTreeSet<SymString> = [w("a b a c c")].into_iter().collect();
    assert_eq!(after.terminals, extra);
}
