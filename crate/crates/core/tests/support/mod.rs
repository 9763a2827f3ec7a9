//! Generators and naive oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use indexmap::IndexSet;
use insdel::grammar::{validate_sgnf_with, Grammar, GrammarKind, GrammarRule, SgnfParts};
use insdel::{ConditionedRule, InsDelSystem, Mode, SymString, Symbol};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn sym(s: &str) -> Symbol {
    Symbol::new(s).unwrap()
}

pub fn w(s: &str) -> SymString {
    s.parse().unwrap()
}

pub fn syms(names: &[&str]) -> Vec<Symbol> {
    names.iter().map(|n| sym(n)).collect()
}

/// Plain sliding-window subword test.
pub fn has_subword(w: &[Symbol], x: &[Symbol]) -> bool {
    x.is_empty() || w.windows(x.len()).any(|win| win == x)
}

pub fn random_word(rng: &mut StdRng, alphabet: &[Symbol], min: usize, max: usize) -> SymString {
    let n = rng.gen_range(min..=max);
    (0..n).map(|_| alphabet.choose(rng).unwrap().clone()).collect()
}

fn random_set(rng: &mut StdRng, alphabet: &[Symbol], max_words: usize, max_len: usize) -> BTreeSet<SymString> {
    let n = rng.gen_range(0..=max_words);
    (0..n).map(|_| random_word(rng, alphabet, 1, max_len)).collect()
}

/// A system over `{a, b, X}` with terminals `{a, b}` and up to `max_rules`
/// rules of context length ≤ 2 and body length 1 or 2.
pub fn random_system(rng: &mut StdRng, max_rules: usize) -> InsDelSystem {
    let alphabet = syms(&["a", "b", "X"]);
    let n = rng.gen_range(0..=max_rules);
    let rules = (0..n)
        .map(|i| {
            let left = random_word(rng, &alphabet, 0, 2);
            let body = random_word(rng, &alphabet, 1, 2);
            let right = random_word(rng, &alphabet, 0, 1);
            let base = if rng.gen_bool(0.6) {
                ConditionedRule::ins(format!("r{i}"), left, body, right)
            } else {
                ConditionedRule::del(format!("r{i}"), left, body, right)
            };
            base.with_permit(random_set(rng, &alphabet, 1, 2))
                .with_forbid(random_set(rng, &alphabet, 2, 2))
        })
        .collect();
    let axioms: Vec<SymString> = (0..rng.gen_range(1..=2)).map(|_| random_word(rng, &alphabet, 0, 3)).collect();
    InsDelSystem::new("random", alphabet.clone(), syms(&["a", "b"]), axioms, rules).unwrap()
}

/// An rc grammar with nonterminals `{S, X, Y}`, terminals `{a, b}` and
/// `1..=max_rules` rules with right-hand sides of length ≤ 4.
pub fn random_rc_grammar(rng: &mut StdRng, max_rules: usize) -> Grammar {
    let n = syms(&["S", "X", "Y"]);
    let all = syms(&["S", "X", "Y", "a", "b"]);
    let k = rng.gen_range(1..=max_rules);
    let rules = (0..k)
        .map(|i| {
            let lhs = SymString::from(vec![n.choose(rng).unwrap().clone()]);
            let rhs = random_word(rng, &all, 0, 4);
            let cond = |rng: &mut StdRng| -> BTreeSet<SymString> {
                (0..rng.gen_range(0..=1))
                    .map(|_| SymString::from(vec![n.choose(rng).unwrap().clone()]))
                    .collect()
            };
            let permit = cond(rng);
            let forbid = cond(rng);
            GrammarRule::new(format!("r{i}"), lhs, rhs).with_permit(permit).with_forbid(forbid)
        })
        .collect();
    Grammar::new("rand_rc", GrammarKind::Rc, n, syms(&["a", "b"]), sym("S"), rules).unwrap()
}

pub fn sgnf_parts() -> SgnfParts {
    SgnfParts {
        nprime: syms(&["S", "S'", "X", "Y"]).into_iter().collect::<IndexSet<_>>(),
        ndouble: [sym("A"), sym("B"), sym("C"), sym("D")],
        sprime: sym("S'"),
    }
}

/// Shape of a simulated SGNF rule, with the number of system rules the
/// rc200 compiler emits for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgnfShape {
    /// X → cY, c ∈ T.
    LeftTerminal,
    /// X → bY, b ∈ N″.
    LeftDouble,
    /// X → Yc, c ∈ T.
    RightTerminal,
    /// X → Yb, b ∈ N″.
    RightDouble,
    /// AB → λ or CD → λ.
    Erasing,
    /// S′ → λ.
    FinalErase,
}

impl SgnfShape {
    pub fn emitted_rules(self) -> usize {
        match self {
            SgnfShape::LeftTerminal => 2,
            SgnfShape::LeftDouble => 4,
            SgnfShape::RightTerminal => 5,
            SgnfShape::RightDouble => 10,
            SgnfShape::Erasing => 18,
            SgnfShape::FinalErase => 1,
        }
    }
}

pub fn classify_sgnf_rule(r: &GrammarRule) -> SgnfShape {
    let nprime = sgnf_parts().nprime;
    let double = |s: &Symbol| ["A", "B", "C", "D"].contains(&s.name());
    match (r.lhs.len(), r.rhs.len()) {
        (2, 0) => SgnfShape::Erasing,
        (1, 0) => SgnfShape::FinalErase,
        (1, 2) if nprime.contains(&r.rhs[1]) => {
            if double(&r.rhs[0]) {
                SgnfShape::LeftDouble
            } else {
                SgnfShape::LeftTerminal
            }
        }
        (1, 2) => {
            if double(&r.rhs[1]) {
                SgnfShape::RightDouble
            } else {
                SgnfShape::RightTerminal
            }
        }
        _ => panic!("not an SGNF rule: {r:?}"),
    }
}

/// A valid SGNF grammar with `1..=max_rules` rules, drawn until the
/// validator accepts it.
pub fn random_sgnf_grammar(rng: &mut StdRng, max_rules: usize) -> Grammar {
    let nprime = syms(&["S", "S'", "X", "Y"]);
    let ndouble = syms(&["A", "B", "C", "D"]);
    let terminals = syms(&["a", "b"]);
    loop {
        let k = rng.gen_range(1..=max_rules);
        let mut rules = Vec::new();
        for i in 0..k {
            let id = format!("r{i}");
            let x = nprime.choose(rng).unwrap().clone();
            let mut y = nprime.choose(rng).unwrap().clone();
            while y == x {
                y = nprime.choose(rng).unwrap().clone();
            }
            let c = terminals.choose(rng).unwrap().clone();
            let b = ndouble.choose(rng).unwrap().clone();
            let (lhs, rhs) = match rng.gen_range(0..6) {
                0 => (vec![x], vec![c, y]),
                1 => (vec![x], vec![b, y]),
                2 => (vec![x], vec![y, c]),
                3 => (vec![x], vec![y, b]),
                4 => {
                    if rng.gen_bool(0.5) {
                        (syms(&["A", "B"]), vec![])
                    } else {
                        (syms(&["C", "D"]), vec![])
                    }
                }
                _ => (vec![sym("S'")], vec![]),
            };
            rules.push(GrammarRule::new(id, lhs.into(), rhs.into()));
        }
        let Ok(g) = Grammar::sgnf("rand_sgnf", sgnf_parts(), terminals.clone(), sym("S"), rules) else {
            continue;
        };
        if validate_sgnf_with(&g, true).map(|r| r.valid()).unwrap_or(false) {
            return g;
        }
    }
}

/// Whether `mode` is an insertion.
pub fn is_ins(mode: Mode) -> bool {
    mode == Mode::Insertion
}
