use std::collections::HashSet;

use indexmap::IndexSet;

use super::{Grammar, GrammarKind, GrammarRule};
use crate::error::{Error, Result};
use crate::symbol::{SymString, Symbol};

/// The `i`-th chain nonterminal introduced when splitting rule `rule_id`.
pub fn chain_symbol(rule_id: &str, i: usize) -> Symbol {
    Symbol::new(&format!("W_{rule_id}_{i}")).expect("rule ids are valid symbol fragments")
}

/// Rewrites every rule `A → u₁…uₙ` with `n ∉ {0, 2}` into
/// `A → u₁W₁`, `Wᵢ → uᵢ₊₁Wᵢ₊₁` and `Wₙ → λ`.
///
/// The head rule keeps the original id and conditions, and additionally
/// forbids every chain symbol of every split rule so that a started chain is
/// finished before another split rule begins. Chain rules are named
/// `<id>.w<i>` and carry no conditions.
pub fn normalize_rc_rhs(g: &Grammar) -> Result<Grammar> {
    g.require_kind(GrammarKind::Rc)?;
    let split = |r: &GrammarRule| !r.rhs.is_empty() && r.rhs.len() != 2;

    let mut chain: IndexSet<Symbol> = IndexSet::new();
    for r in g.rules().iter().filter(|r| split(r)) {
        for i in 1..=r.rhs.len() {
            let s = chain_symbol(&r.id, i);
            if g.nonterminals().contains(&s) || g.terminals().contains(&s) {
                return Err(Error::Collision(s));
            }
            chain.insert(s);
        }
    }
    let q_w: Vec<SymString> = chain.iter().map(|s| SymString::from(vec![s.clone()])).collect();

    let mut rules = Vec::new();
    for r in g.rules() {
        if !split(r) {
            rules.push(r.clone());
            continue;
        }
        let u = r.rhs.symbols();
        let n = u.len();
        let wsym = |i: usize| chain_symbol(&r.id, i);
        rules.push(GrammarRule {
            id: r.id.clone(),
            lhs: r.lhs.clone(),
            rhs: SymString::from(vec![u[0].clone(), wsym(1)]),
            permit: r.permit.clone(),
            forbid: r.forbid.iter().cloned().chain(q_w.iter().cloned()).collect(),
        });
        for (i, x) in u.iter().enumerate().skip(1) {
            rules.push(GrammarRule::new(
                format!("{}.w{i}", r.id),
                SymString::from(vec![wsym(i)]),
                SymString::from(vec![x.clone(), wsym(i + 1)]),
            ));
        }
        rules.push(GrammarRule::new(
            format!("{}.w{n}", r.id),
            SymString::from(vec![wsym(n)]),
            SymString::empty(),
        ));
    }
    g.with_rules(chain, rules)
}

/// Removes λ-productions from a context-free grammar.
///
/// Each rule is replaced by all variants obtained by dropping some nullable
/// occurrences; empty right-hand sides and `A → A` are discarded, duplicates
/// are kept once. A variant that is not the original rule gets the id
/// `<id>.<k>`. The empty word is lost if the start symbol was nullable.
pub fn eliminate_lambda(g: &Grammar) -> Result<Grammar> {
    g.require_kind(GrammarKind::Cf)?;
    let mut nullable: HashSet<&Symbol> = HashSet::new();
    loop {
        let before = nullable.len();
        for r in g.rules() {
            if r.rhs.iter().all(|s| nullable.contains(s)) {
                nullable.insert(&r.lhs[0]);
            }
        }
        if nullable.len() == before {
            break;
        }
    }

    let mut seen: HashSet<(SymString, SymString)> = HashSet::new();
    let mut rules = Vec::new();
    for r in g.rules() {
        let optional: Vec<usize> = (0..r.rhs.len()).filter(|&i| nullable.contains(&r.rhs[i])).collect();
        let mut k = 0;
        // Mask bit set = drop that occurrence; mask 0 is the rule itself.
        for mask in 0u64..(1u64 << optional.len()) {
            let rhs: SymString = (0..r.rhs.len())
                .filter(|i| match optional.iter().position(|o| o == i) {
                    Some(bit) => mask & (1 << bit) == 0,
                    None => true,
                })
                .map(|i| r.rhs[i].clone())
                .collect();
            if rhs.is_empty() || rhs == r.lhs {
                continue;
            }
            if !seen.insert((r.lhs.clone(), rhs.clone())) {
                continue;
            }
            let id = if mask == 0 {
                r.id.clone()
            } else {
                k += 1;
                format!("{}.{k}", r.id)
            };
            rules.push(GrammarRule::new(id, r.lhs.clone(), rhs));
        }
    }
    g.with_rules([], rules)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::super::derive_grammar;
    use super::*;
    use crate::engine::{SearchBounds, SearchOptions};

    fn w(s: &str) -> SymString {
        s.parse().unwrap()
    }

    fn sym(s: &str) -> Symbol {
        Symbol::new(s).unwrap()
    }

    fn lang(g: &Grammar, len: usize) -> BTreeSet<SymString> {
        let b = SearchBounds {
            max_form_len: len + 6,
            ..SearchBounds::with_terminal_len(len)
        };
        let r = derive_grammar(g, &b, &SearchOptions::sequential()).unwrap();
        assert!(r.exhausted);
        r.terminals
    }

    fn grammar(kind: GrammarKind, n: &str, rules: Vec<GrammarRule>) -> Grammar {
        Grammar::new("g", kind, w(n).into_vec(), [sym("a"), sym("b")], sym("S"), rules).unwrap()
    }

    #[test]
    fn binary_rules_unchanged() {
        let g = grammar(GrammarKind::Rc, "S A", vec![GrammarRule::new("r", w("S"), w("A a"))]);
        assert_eq!(normalize_rc_rhs(&g).unwrap(), g);
    }

    #[test]
    fn unit_rule_split() {
        let g = grammar(
            GrammarKind::Rc,
            "S A",
            vec![GrammarRule::new("r", w("S"), w("a")).with_forbid([w("A")])],
        );
        let n = normalize_rc_rhs(&g).unwrap();
        assert_eq!(
            n.rules(),
            &[
                GrammarRule::new("r", w("S"), w("a W_r_1")).with_forbid([w("A"), w("W_r_1")]),
                GrammarRule::new("r.w1", w("W_r_1"), w("[]")),
            ]
        );
        assert!(n.nonterminals().contains(&sym("W_r_1")));
    }

    #[test]
    fn split_preserves_language() {
        let g = grammar(
            GrammarKind::Rc,
            "S",
            vec![
                GrammarRule::new("r1", w("S"), w("a S a")),
                GrammarRule::new("r2", w("S"), w("[]")),
            ],
        );
        let n = normalize_rc_rhs(&g).unwrap();
        assert!(n.rules().iter().all(|r| r.rhs.is_empty() || r.rhs.len() == 2));
        let expect = BTreeSet::from([w("[]"), w("a a"), w("a a a a")]);
        assert_eq!(lang(&g, 4), expect);
        assert_eq!(lang(&n, 4), expect);
    }

    #[test]
    fn chain_collision_is_an_error() {
        let g = grammar(GrammarKind::Rc, "S W_r_1", vec![GrammarRule::new("r", w("S"), w("a"))]);
        assert_eq!(normalize_rc_rhs(&g), Err(Error::Collision(sym("W_r_1"))));
    }

    #[test]
    fn lambda_unreachable_nullable() {
        let g = grammar(
            GrammarKind::Cf,
            "S Z",
            vec![
                GrammarRule::new("1", w("S"), w("a S")),
                GrammarRule::new("2", w("S"), w("a")),
                GrammarRule::new("3", w("Z"), w("[]")),
            ],
        );
        let e = eliminate_lambda(&g).unwrap();
        assert_eq!(e.rules(), &g.rules()[..2]);
    }

    #[test]
    fn lambda_elimination_keeps_nonempty_language() {
        let g = grammar(
            GrammarKind::Cf,
            "S",
            vec![
                GrammarRule::new("1", w("S"), w("S a S")),
                GrammarRule::new("2", w("S"), w("[]")),
            ],
        );
        let e = eliminate_lambda(&g).unwrap();
        assert!(e.rules().iter().all(|r| !r.rhs.is_empty()));
        let ids: Vec<_> = e.rules().iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, vec!["1", "1.1", "1.2", "1.3"]);
        let mut full = lang(&g, 4);
        full.remove(&w("[]"));
        assert_eq!(lang(&e, 4), full);
    }

    #[test]
    fn wrong_kinds() {
        let cf = grammar(GrammarKind::Cf, "S", vec![]);
        assert!(matches!(normalize_rc_rhs(&cf), Err(Error::WrongKind { .. })));
        let rc = grammar(GrammarKind::Rc, "S", vec![]);
        assert!(matches!(eliminate_lambda(&rc), Err(Error::WrongKind { .. })));
    }
}
