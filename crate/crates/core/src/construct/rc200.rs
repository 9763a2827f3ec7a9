use indexmap::{IndexMap, IndexSet};

use super::naming::{Fresh, GeneratedSymbol};
use crate::error::{Error, Result};
use crate::grammar::{validate_sgnf_with, Grammar, GrammarKind};
use crate::rule::ConditionedRule;
use crate::symbol::{SymString, Symbol};
use crate::system::InsDelSystem;

/// Service symbols of a [`compile_rc200`] run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rc200Artifacts {
    /// Hatted copies of the four erasable nonterminals.
    pub hat: IndexMap<Symbol, Symbol>,
    pub bar: IndexMap<Symbol, Symbol>,
    /// Per-rule `sharp`, `dollar` and `f` symbols.
    pub markers: IndexSet<Symbol>,
    /// Split rule id → intermediate nonterminal.
    pub split: IndexMap<String, Symbol>,
    /// All added nonterminals: hats, bars and markers.
    pub service: IndexSet<Symbol>,
    /// The grammar's N′ together with the split intermediates.
    pub nprime: IndexSet<Symbol>,
}

#[derive(Debug, Clone)]
pub struct Rc200Output {
    pub system: InsDelSystem,
    pub artifacts: Rc200Artifacts,
    pub notes: Vec<String>,
}

/// One simulation unit, after splitting rules that produce an N″ symbol.
enum Unit {
    /// `x → c y`.
    Left { x: Symbol, c: Symbol, y: Symbol },
    /// `x → y c`.
    Right { x: Symbol, y: Symbol, c: Symbol },
    /// `u v → λ`.
    Erase { u: Symbol, v: Symbol },
    /// `S′ → λ`.
    EraseStart { x: Symbol },
}

fn one(a: &Symbol) -> SymString {
    SymString::from(vec![a.clone()])
}

fn two(a: &Symbol, b: &Symbol) -> SymString {
    SymString::from(vec![a.clone(), b.clone()])
}

fn ins(id: String, body: SymString) -> ConditionedRule {
    ConditionedRule::ins(id, SymString::empty(), body, SymString::empty())
}

fn del(id: String, left: Option<&Symbol>, a: &Symbol) -> ConditionedRule {
    let left = left.map(one).unwrap_or_default();
    ConditionedRule::del(id, left, one(a), SymString::empty())
}

/// Compiles a grammar in special Geffert normal form into a random context
/// insertion-deletion system of size (2,0,0;1,1,0).
///
/// `X → cY` and `X → Yc` with `c ∈ T` use the two- and five-rule templates;
/// rules producing an N″ symbol `b` are first split through a fresh
/// nonterminal into halves producing `hat_b` and `bar_b`. Each erasing rule
/// `UV → λ` gets eighteen rules, and `S′ → λ` a single gated deletion.
/// The axiom is the start symbol.
pub fn compile_rc200(g: &Grammar) -> Result<Rc200Output> {
    g.require_kind(GrammarKind::Sgnf)?;
    let report = validate_sgnf_with(g, true)?;
    if !report.valid() {
        return Err(Error::NotSgnf(report.to_string()));
    }
    let parts = g.sgnf_parts().expect("sgnf grammar has parts");
    let terminal = |s: &Symbol| g.terminals().contains(s);

    let mut fresh = Fresh::new(g.symbols());
    let mut hat = IndexMap::new();
    let mut bar = IndexMap::new();
    for b in &parts.ndouble {
        hat.insert(b.clone(), fresh.take(GeneratedSymbol::Hat(b.clone()))?);
        bar.insert(b.clone(), fresh.take(GeneratedSymbol::Bar(b.clone()))?);
    }

    let mut units: Vec<(String, Unit)> = Vec::new();
    let mut split = IndexMap::new();
    for r in g.rules() {
        let (lhs, rhs) = (r.lhs.symbols(), r.rhs.symbols());
        match (lhs, rhs) {
            ([u, v], []) => units.push((r.id.clone(), Unit::Erase { u: u.clone(), v: v.clone() })),
            ([x], []) => units.push((r.id.clone(), Unit::EraseStart { x: x.clone() })),
            ([x], [c, y]) if parts.nprime.contains(y) => {
                if terminal(c) {
                    units.push((r.id.clone(), Unit::Left { x: x.clone(), c: c.clone(), y: y.clone() }));
                } else {
                    let xp = fresh.take(GeneratedSymbol::Split { base: x.clone(), rule: r.id.clone() })?;
                    split.insert(r.id.clone(), xp.clone());
                    units.push((format!("{}'", r.id), Unit::Left { x: x.clone(), c: hat[c].clone(), y: xp.clone() }));
                    units.push((format!("{}''", r.id), Unit::Left { x: xp, c: bar[c].clone(), y: y.clone() }));
                }
            }
            ([x], [y, c]) => {
                if terminal(c) {
                    units.push((r.id.clone(), Unit::Right { x: x.clone(), y: y.clone(), c: c.clone() }));
                } else {
                    let xp = fresh.take(GeneratedSymbol::Split { base: x.clone(), rule: r.id.clone() })?;
                    split.insert(r.id.clone(), xp.clone());
                    units.push((format!("{}'", r.id), Unit::Right { x: x.clone(), y: xp.clone(), c: bar[c].clone() }));
                    units.push((format!("{}''", r.id), Unit::Right { x: xp, y: y.clone(), c: hat[c].clone() }));
                }
            }
            _ => unreachable!("validated normal form"),
        }
    }

    let mut markers = IndexSet::new();
    for (id, unit) in &units {
        match unit {
            Unit::Right { .. } => {
                for primed in [false, true] {
                    markers.insert(fresh.take(GeneratedSymbol::Sharp { rule: id.clone(), primed })?);
                }
            }
            Unit::Erase { .. } => {
                for index in 1..=5 {
                    markers.insert(fresh.take(GeneratedSymbol::Dollar { rule: id.clone(), index })?);
                }
                for primed in [false, true] {
                    markers.insert(fresh.take(GeneratedSymbol::F { rule: id.clone(), primed })?);
                }
            }
            _ => {}
        }
    }

    let nprime: IndexSet<Symbol> = parts.nprime.iter().chain(split.values()).cloned().collect();
    let mut service: IndexSet<Symbol> = IndexSet::new();
    for b in &parts.ndouble {
        service.insert(hat[b].clone());
        service.insert(bar[b].clone());
    }
    service.extend(markers.iter().cloned());
    let mut alphabet: IndexSet<Symbol> = g.symbols().cloned().collect();
    alphabet.extend(split.values().cloned());
    alphabet.extend(service.iter().cloned());

    // Only one simulation may be in progress: everything in N′ other than
    // the rewritten symbol, and every marker, is forbidden.
    let gate = |x: &Symbol| -> Vec<SymString> {
        nprime.iter().chain(&markers).filter(|s| *s != x).map(one).collect()
    };
    let all_markers: Vec<SymString> = markers.iter().map(one).collect();
    let (a_hat, c_hat) = (&hat[&parts.ndouble[0]], &hat[&parts.ndouble[2]]);

    let mut rules = Vec::new();
    for (id, unit) in &units {
        let k = |n: usize| format!("{id}.{n}");
        match unit {
            Unit::Left { x, c, y } => {
                rules.push(ins(k(1), two(c, y)).with_permit([one(x)]).with_forbid(gate(x)));
                rules.push(del(k(2), Some(y), x));
            }
            Unit::Right { x, y, c } => {
                let s = GeneratedSymbol::Sharp { rule: id.clone(), primed: false }.render();
                let sp = GeneratedSymbol::Sharp { rule: id.clone(), primed: true }.render();
                rules.push(ins(k(1), two(&s, &sp)).with_permit([one(x)]).with_forbid(gate(x)));
                rules.push(del(k(2), Some(&sp), x));
                rules.push(ins(k(3), two(y, c)).with_permit([one(&s)]).with_forbid([one(x), one(y)]));
                rules.push(del(k(4), Some(c), &sp));
                rules.push(del(k(5), None, &s).with_forbid([one(&sp)]));
            }
            Unit::EraseStart { x } => {
                rules.push(del(k(1), None, x).with_permit([one(x)]).with_forbid(gate(x)));
            }
            Unit::Erase { u, v } => {
                let d: Vec<Symbol> = (1..=5)
                    .map(|index| GeneratedSymbol::Dollar { rule: id.clone(), index }.render())
                    .collect();
                let (d1, d2, d3, d4, d5) = (&d[0], &d[1], &d[2], &d[3], &d[4]);
                let f = GeneratedSymbol::F { rule: id.clone(), primed: false }.render();
                let fp = GeneratedSymbol::F { rule: id.clone(), primed: true }.render();
                let (uh, ub, vh, vb) = (&hat[u], &bar[u], &hat[v], &bar[v]);
                rules.push(ins(k(1), two(d1, d2)).with_forbid(all_markers.iter().cloned()));
                rules.push(del(k(2), Some(uh), d1));
                rules.push(ins(k(3), one(d3)).with_permit([one(d2)]).with_forbid([one(d1), one(d3), one(d4)]));
                rules.push(del(k(4), Some(d3), d2));
                rules.push(del(k(5), Some(d3), ub).with_forbid([one(d2)]));
                rules.push(ins(k(6), one(d4)).with_permit([one(d3)]).with_forbid([one(d2), one(d4)]));
                rules.push(del(k(7), Some(d4), d3));
                rules.push(del(k(8), Some(d4), vh).with_forbid([one(d3)]));
                rules.push(del(k(9), Some(d4), a_hat).with_forbid([one(d3)]));
                rules.push(del(k(10), Some(d4), c_hat).with_forbid([one(d3)]));
                rules.push(ins(k(11), two(&f, &fp)).with_permit([one(d4)]).with_forbid([one(d3), one(&fp)]));
                rules.push(del(k(12), Some(vb), &f));
                rules.push(ins(k(13), one(d5)).with_permit([one(&fp)]).with_forbid([one(&f), one(d5)]));
                rules.push(del(k(14), Some(d5), d4));
                rules.push(del(k(15), Some(d5), vb).with_forbid([one(d4)]));
                rules.push(del(k(16), Some(d5), &fp).with_forbid([one(d4)]));
                rules.push(del(k(17), None, d5).with_forbid([one(&fp)]));
                rules.push(
                    del(k(18), None, uh).with_forbid(
                        alphabet
                            .iter()
                            .filter(|s| !terminal(s) && *s != a_hat && *s != c_hat)
                            .map(one),
                    ),
                );
            }
        }
    }

    let system = InsDelSystem::new(
        format!("{}_rc200", g.name()),
        alphabet,
        g.terminals().iter().cloned(),
        [one(g.start())],
        rules,
    )?
    .with_nprime(nprime.iter().cloned())?;
    let mut notes = vec![
        "start-rule forbidding sets use N′ and the marker symbols; hat/bar copies of N″ are not included"
            .to_string(),
    ];
    if units.iter().any(|(_, u)| matches!(u, Unit::EraseStart { .. })) {
        notes.push("S′ → λ has no template in the construction; emitted as a gated deletion".to_string());
    }
    Ok(Rc200Output {
        system,
        artifacts: Rc200Artifacts {
            hat,
            bar,
            markers,
            split,
            service,
            nprime,
        },
        notes,
    })
}
