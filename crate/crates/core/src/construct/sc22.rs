use std::collections::BTreeSet;

use indexmap::{IndexMap, IndexSet};

use super::coding::{encode_word, normalization_condition};
use super::naming::{Fresh, GeneratedSymbol};
use crate::error::Result;
use crate::grammar::{normalize_rc_rhs, Grammar, GrammarKind, GrammarRule};
use crate::rule::ConditionedRule;
use crate::symbol::{SymString, Symbol};
use crate::system::InsDelSystem;

/// Service symbols and condition sets of a [`compile_sc22`] run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sc22Artifacts {
    pub hat: IndexMap<Symbol, Symbol>,
    pub bar: IndexMap<Symbol, Symbol>,
    pub begin: Symbol,
    pub end: Symbol,
    /// The normalization condition over the normalized grammar's alphabet.
    pub normalization: BTreeSet<SymString>,
    /// One marker per erasing rule.
    pub sharp: IndexSet<Symbol>,
    /// Five markers per binary rule.
    pub dollar: IndexSet<Symbol>,
    pub terminals: IndexSet<Symbol>,
    pub alphabet: IndexSet<Symbol>,
}

#[derive(Debug, Clone)]
pub struct Sc22Output {
    pub system: InsDelSystem,
    /// The input after right-hand sides were brought to length 0 or 2.
    pub normalized: Grammar,
    pub artifacts: Sc22Artifacts,
    pub notes: Vec<String>,
}

fn one(a: &Symbol) -> SymString {
    SymString::from(vec![a.clone()])
}

fn two(a: &Symbol, b: &Symbol) -> SymString {
    SymString::from(vec![a.clone(), b.clone()])
}

fn ins(id: String, a: &Symbol) -> ConditionedRule {
    ConditionedRule::ins(id, SymString::empty(), one(a), SymString::empty())
}

fn del(id: String, a: &Symbol) -> ConditionedRule {
    ConditionedRule::del(id, SymString::empty(), one(a), SymString::empty())
}

/// Compiles a random context grammar into a semi-conditional
/// insertion-deletion system of size (1,0,0;1,0,0) and degree (2,2).
///
/// Every symbol `a` of the grammar is coded as the pair `hat_a bar_a` between
/// `Bmark` and `Emark`; the axiom is the code of the start symbol. Each
/// erasing rule `p` becomes `p.1`–`p.4`, each binary rule `q` becomes
/// `q.1`–`q.16`, and a cleanup group (`clean.B`, `clean.E`, `clean.bar_a` for
/// terminals `a`) strips the coding from finished strings, leaving the hatted
/// terminals as output alphabet.
pub fn compile_sc22(g: &Grammar) -> Result<Sc22Output> {
    g.require_kind(GrammarKind::Rc)?;
    let normalized = normalize_rc_rhs(g)?;
    let v: Vec<Symbol> = normalized.symbols().cloned().collect();

    let mut fresh = Fresh::new(&v);
    let begin = fresh.take(GeneratedSymbol::Begin)?;
    let end = fresh.take(GeneratedSymbol::End)?;
    let mut hat = IndexMap::new();
    let mut bar = IndexMap::new();
    for a in &v {
        hat.insert(a.clone(), fresh.take(GeneratedSymbol::Hat(a.clone()))?);
        bar.insert(a.clone(), fresh.take(GeneratedSymbol::Bar(a.clone()))?);
    }
    let mut sharp = IndexSet::new();
    let mut dollar = IndexSet::new();
    for r in normalized.rules() {
        if r.rhs.is_empty() {
            sharp.insert(fresh.take(GeneratedSymbol::Sharp {
                rule: r.id.clone(),
                primed: false,
            })?);
        } else {
            for index in 1..=5 {
                dollar.insert(fresh.take(GeneratedSymbol::Dollar {
                    rule: r.id.clone(),
                    index,
                })?);
            }
        }
    }
    let qn = normalization_condition(&v);
    let terminals: IndexSet<Symbol> = normalized.terminals().iter().map(|a| hat[a].clone()).collect();
    let mut alphabet: IndexSet<Symbol> = [begin.clone(), end.clone()].into_iter().collect();
    for a in &v {
        alphabet.insert(hat[a].clone());
        alphabet.insert(bar[a].clone());
    }
    alphabet.extend(sharp.iter().cloned());
    alphabet.extend(dollar.iter().cloned());

    let hat_words = |set: &BTreeSet<SymString>| -> Vec<SymString> {
        set.iter().map(|w| w.iter().map(|s| hat[s].clone()).collect()).collect()
    };
    let with_qn = |extra: Vec<SymString>| -> Vec<SymString> {
        extra.into_iter().chain(qn.iter().cloned()).collect()
    };
    let markers: Vec<SymString> = sharp.iter().chain(&dollar).map(one).collect();

    let mut rules = Vec::new();
    for r in normalized.rules() {
        let GrammarRule {
            id, lhs, rhs, permit, forbid,
        } = r;
        let x = &lhs[0];
        let (xh, xb) = (&hat[x], &bar[x]);
        let start_permit = std::iter::once(two(xh, xb)).chain(hat_words(permit));
        let start_forbid = with_qn(markers.iter().cloned().chain(hat_words(forbid)).collect());
        let k = |n: usize| format!("{id}.{n}");
        if rhs.is_empty() {
            let s = &GeneratedSymbol::Sharp {
                rule: id.clone(),
                primed: false,
            }
            .render();
            rules.push(ins(k(1), s).with_permit(start_permit).with_forbid(start_forbid));
            rules.push(del(k(2), xh).with_permit([two(s, xh)]).with_forbid(with_qn(vec![])));
            rules.push(
                del(k(3), xb)
                    .with_permit([two(s, xb)])
                    .with_forbid(with_qn(vec![two(xh, s)])),
            );
            rules.push(del(k(4), s).with_forbid(with_qn(vec![])));
            continue;
        }
        let d: Vec<Symbol> = (1..=5)
            .map(|index| GeneratedSymbol::Dollar { rule: id.clone(), index }.render())
            .collect();
        let (d1, d2, d3, d4, d5) = (&d[0], &d[1], &d[2], &d[3], &d[4]);
        let (yh, yb) = (&hat[&rhs[0]], &bar[&rhs[0]]);
        let (zh, zb) = (&hat[&rhs[1]], &bar[&rhs[1]]);
        rules.push(ins(k(1), d1).with_permit(start_permit).with_forbid(start_forbid));
        rules.push(ins(k(2), d2).with_permit([two(d1, xh)]).with_forbid(with_qn(vec![one(d2)])));
        rules.push(del(k(3), xh).with_permit([two(d1, xh), two(xb, d2)]).with_forbid(with_qn(vec![])));
        rules.push(
            ins(k(4), d3)
                .with_permit([two(d1, xb)])
                .with_forbid(with_qn(vec![two(d2, xb), one(d3), two(xh, d1)])),
        );
        rules.push(del(k(5), d1).with_permit([two(d3, d1)]).with_forbid(with_qn(vec![])));
        rules.push(del(k(6), xb).with_permit([two(d3, xb)]).with_forbid(with_qn(vec![one(d1)])));
        rules.push(ins(k(7), d4).with_permit([two(d3, d2)]).with_forbid(with_qn(vec![one(d1), one(d4)])));
        rules.push(del(k(8), d2).with_permit([two(d4, d3)]).with_forbid(with_qn(vec![])));
        rules.push(
            ins(k(9), d5)
                .with_permit([one(d4)])
                .with_forbid(with_qn(vec![one(d2), one(d5), two(xh, d4)])),
        );
        rules.push(
            ins(k(10), yh)
                .with_permit([two(d4, d3), two(d3, d5)])
                .with_forbid(with_qn(vec![two(yh, d4)])),
        );
        rules.push(
            ins(k(11), yb)
                .with_permit([two(d4, yh), two(yh, d3), two(d3, d5)])
                .with_forbid(with_qn(vec![two(d5, yb)])),
        );
        rules.push(
            ins(k(12), zh)
                .with_permit([two(d4, yh), two(yb, d3), two(d3, d5)])
                .with_forbid(with_qn(vec![two(zh, d4)])),
        );
        rules.push(
            ins(k(13), zb)
                .with_permit([two(d4, yh), two(yb, d3), two(d3, zh), two(zh, d5)])
                .with_forbid(with_qn(vec![two(d5, zb)])),
        );
        rules.push(
            del(k(14), d3)
                .with_permit([two(d4, yh), two(yb, d3), two(d3, zh), two(zb, d5)])
                .with_forbid(with_qn(vec![])),
        );
        rules.push(
            del(k(15), d4)
                .with_permit([two(d4, yh), two(zb, d5)])
                .with_forbid(with_qn(vec![one(d3)])),
        );
        rules.push(del(k(16), d5).with_forbid(with_qn(vec![one(d3), one(d4)])));
    }

    let keep: IndexSet<&Symbol> = [&begin, &end]
        .into_iter()
        .chain(normalized.terminals().iter().flat_map(|a| [&hat[a], &bar[a]]))
        .collect();
    rules.push(
        del("clean.B".into(), &begin).with_forbid(alphabet.iter().filter(|s| !keep.contains(s)).map(one)),
    );
    rules.push(del("clean.E".into(), &end).with_forbid([one(&begin)]));
    for a in normalized.terminals() {
        let b = &bar[a];
        rules.push(del(format!("clean.{b}"), b).with_forbid([one(&begin), one(&end)]));
    }

    let system = InsDelSystem::new(
        format!("{}_sc22", g.name()),
        alphabet.iter().cloned(),
        terminals.iter().cloned(),
        [encode_word(&one(normalized.start()))],
        rules,
    )?;
    let notes = vec![
        "random-context conditions X are checked as the one-symbol words hat_X".to_string(),
        "cleanup erases bar_a for terminals a".to_string(),
    ];
    Ok(Sc22Output {
        system,
        normalized,
        artifacts: Sc22Artifacts {
            hat,
            bar,
            begin,
            end,
            normalization: qn,
            sharp,
            dollar,
            terminals,
            alphabet,
        },
        notes,
    })
}
