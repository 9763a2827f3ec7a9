//! Conditional insertion-deletion systems `γ = (V, T, A, R)`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::rule::{ConditionedRule, Mode};
use crate::symbol::{SymString, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsDelSystem {
    name: String,
    alphabet: IndexSet<Symbol>,
    terminals: IndexSet<Symbol>,
    axioms: Vec<SymString>,
    rules: Vec<ConditionedRule>,
    nprime: IndexSet<Symbol>,
}

/// `(n, m, m′; p, q, q′)`: maxima of body, left and right context lengths
/// over insertion rules, then over deletion rules.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SizeVector {
    pub ins_body: usize,
    pub ins_left: usize,
    pub ins_right: usize,
    pub del_body: usize,
    pub del_left: usize,
    pub del_right: usize,
}

impl SizeVector {
    pub const fn new(n: usize, m: usize, m2: usize, p: usize, q: usize, q2: usize) -> Self {
        SizeVector {
            ins_body: n,
            ins_left: m,
            ins_right: m2,
            del_body: p,
            del_left: q,
            del_right: q2,
        }
    }

    pub fn total(&self) -> usize {
        self.ins_body + self.ins_left + self.ins_right + self.del_body + self.del_left + self.del_right
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &SizeVector) -> bool {
        self.ins_body <= other.ins_body
            && self.ins_left <= other.ins_left
            && self.ins_right <= other.ins_right
            && self.del_body <= other.del_body
            && self.del_left <= other.del_left
            && self.del_right <= other.del_right
    }
}

impl fmt::Display for SizeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{};{},{},{})",
            self.ins_body, self.ins_left, self.ins_right, self.del_body, self.del_left, self.del_right
        )
    }
}

/// Longest permitting word and longest forbidding word.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Degree {
    pub permit: usize,
    pub forbid: usize,
}

impl Degree {
    /// Random-context systems only use single-symbol conditions.
    pub fn is_random_context(&self) -> bool {
        self.permit <= 1 && self.forbid <= 1
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.permit, self.forbid)
    }
}

/// One element of the one-step successor set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Successor {
    pub rule: String,
    pub position: usize,
    pub form: SymString,
}

impl InsDelSystem {
    pub fn new(
        name: impl Into<String>,
        alphabet: impl IntoIterator<Item = Symbol>,
        terminals: impl IntoIterator<Item = Symbol>,
        axioms: impl IntoIterator<Item = SymString>,
        rules: Vec<ConditionedRule>,
    ) -> Result<Self> {
        let mut axiom_list = Vec::new();
        for a in axioms {
            if !axiom_list.contains(&a) {
                axiom_list.push(a);
            }
        }
        let sys = InsDelSystem {
            name: name.into(),
            alphabet: alphabet.into_iter().collect(),
            terminals: terminals.into_iter().collect(),
            axioms: axiom_list,
            rules,
            nprime: IndexSet::new(),
        };
        sys.validate()?;
        Ok(sys)
    }

    /// Declares the middle-nonterminal set used by the single-occurrence
    /// pruning option of the search engine.
    pub fn with_nprime(mut self, nprime: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        self.nprime = nprime.into_iter().collect();
        for s in &self.nprime {
            self.require_symbol(s, "@nprime")?;
        }
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        for t in &self.terminals {
            if !self.alphabet.contains(t) {
                return Err(Error::TerminalNotInAlphabet(t.clone()));
            }
        }
        if self.axioms.is_empty() {
            return Err(Error::NoAxioms);
        }
        for a in &self.axioms {
            self.check_word(a, "axiom")?;
        }
        let mut ids = HashSet::new();
        for r in &self.rules {
            if r.id.is_empty() || r.id.chars().any(|c| c.is_whitespace() || crate::symbol::RESERVED.contains(&c)) {
                return Err(Error::InvalidRuleId(r.id.clone()));
            }
            if !ids.insert(r.id.as_str()) {
                return Err(Error::DuplicateRule(r.id.clone()));
            }
            if r.base.body.is_empty() {
                return Err(Error::EmptyBody(r.id.clone()));
            }
            let ctx = format!("rule {}", r.id);
            self.check_word(&r.base.left, &ctx)?;
            self.check_word(&r.base.body, &ctx)?;
            self.check_word(&r.base.right, &ctx)?;
            for w in r.permit.iter().chain(&r.forbid) {
                if w.is_empty() {
                    return Err(Error::Precondition(format!(
                        "rule {} has an empty condition word",
                        r.id
                    )));
                }
                self.check_word(w, &ctx)?;
            }
        }
        Ok(())
    }

    fn require_symbol(&self, s: &Symbol, context: &str) -> Result<()> {
        if self.alphabet.contains(s) {
            Ok(())
        } else {
            Err(Error::UnknownSymbol {
                symbol: s.clone(),
                context: context.to_string(),
            })
        }
    }

    /// Fails if `w` uses a symbol outside the alphabet.
    pub fn check_word(&self, w: &SymString, context: &str) -> Result<()> {
        w.iter().try_for_each(|s| self.require_symbol(s, context))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &IndexSet<Symbol> {
        &self.alphabet
    }

    pub fn terminals(&self) -> &IndexSet<Symbol> {
        &self.terminals
    }

    pub fn axioms(&self) -> &[SymString] {
        &self.axioms
    }

    pub fn rules(&self) -> &[ConditionedRule] {
        &self.rules
    }

    pub fn nprime(&self) -> &IndexSet<Symbol> {
        &self.nprime
    }

    pub fn rule(&self, id: &str) -> Option<&ConditionedRule> {
        self.rules.iter().find(|r| r.id == id)
    }

    pub fn is_terminal_word(&self, w: &SymString) -> bool {
        w.iter().all(|s| self.terminals.contains(s))
    }

    /// Returns a copy with extra rules appended.
    pub fn with_rules(&self, extra: impl IntoIterator<Item = ConditionedRule>) -> Result<Self> {
        let mut rules = self.rules.clone();
        rules.extend(extra);
        let mut sys = InsDelSystem::new(
            self.name.clone(),
            self.alphabet.iter().cloned(),
            self.terminals.iter().cloned(),
            self.axioms.iter().cloned(),
            rules,
        )?;
        sys.nprime = self.nprime.clone();
        Ok(sys)
    }

    /// Evaluates the conditions of the rule `rule_id` on `w`.
    pub fn conditions_hold(&self, rule_id: &str, w: &SymString) -> Result<bool> {
        self.check_word(w, "sentential form")?;
        let rule = self
            .rule(rule_id)
            .ok_or_else(|| Error::Precondition(format!("unknown rule {rule_id}")))?;
        Ok(rule.conditions_hold(w))
    }

    /// Exact one-step successor set of `w`.
    pub fn step(&self, w: &SymString) -> Result<BTreeSet<Successor>> {
        self.check_word(w, "sentential form")?;
        let mut out = BTreeSet::new();
        for rule in &self.rules {
            if !rule.conditions_hold(w) {
                continue;
            }
            for pos in rule.match_positions(w) {
                out.insert(Successor {
                    rule: rule.id.clone(),
                    position: pos,
                    form: rule.apply_at(w, pos),
                });
            }
        }
        Ok(out)
    }

    pub fn size(&self) -> SizeVector {
        let mut s = SizeVector::default();
        for r in &self.rules {
            let b = &r.base;
            match b.mode {
                Mode::Insertion => {
                    s.ins_body = s.ins_body.max(b.body.len());
                    s.ins_left = s.ins_left.max(b.left.len());
                    s.ins_right = s.ins_right.max(b.right.len());
                }
                Mode::Deletion => {
                    s.del_body = s.del_body.max(b.body.len());
                    s.del_left = s.del_left.max(b.left.len());
                    s.del_right = s.del_right.max(b.right.len());
                }
            }
        }
        s
    }

    pub fn degree(&self) -> Degree {
        let longest = |f: fn(&ConditionedRule) -> &BTreeSet<SymString>| {
            self.rules
                .iter()
                .flat_map(|r| f(r).iter().map(SymString::len))
                .max()
                .unwrap_or(0)
        };
        Degree {
            permit: longest(|r| &r.permit),
            forbid: longest(|r| &r.forbid),
        }
    }
}

/// Size vector of a system.
pub fn size_of(system: &InsDelSystem) -> SizeVector {
    system.size()
}

/// Semi-conditional degree of a system.
pub fn degree_of(system: &InsDelSystem) -> Degree {
    system.degree()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SymString {
        s.parse().unwrap()
    }

    fn syms(s: &str) -> Vec<Symbol> {
        w(s).into_vec()
    }

    fn sys(alpha: &str, rules: Vec<ConditionedRule>) -> InsDelSystem {
        InsDelSystem::new("t", syms(alpha), syms(alpha), [w("[]")], rules).unwrap()
    }

    #[test]
    fn single_insertion_into_lambda() {
        let s = sys("x", vec![ConditionedRule::ins("r", w("[]"), w("x"), w("[]"))]);
        let succ: Vec<_> = s.step(&w("[]")).unwrap().into_iter().collect();
        assert_eq!(
            succ,
            vec![Successor {
                rule: "r".into(),
                position: 0,
                form: w("x")
            }]
        );
    }

    #[test]
    fn left_context_deletion_positions() {
        let s = sys("a b", vec![ConditionedRule::del("r", w("a"), w("b"), w("[]"))]);
        let pos: Vec<_> = s.step(&w("a b a b")).unwrap().iter().map(|x| x.position).collect();
        assert_eq!(pos, vec![1, 3]);
    }

    #[test]
    fn left_context_deletion_of_x_after_y() {
        let s = sys("c X Y", vec![ConditionedRule::del("p.2", w("Y"), w("X"), w("[]"))]);
        let succ: Vec<_> = s.step(&w("c Y X")).unwrap().into_iter().collect();
        assert_eq!(succ.len(), 1);
        assert_eq!((succ[0].position, succ[0].form.clone()), (2, w("c Y")));
    }

    #[test]
    fn unknown_symbol_is_malformed_input() {
        let s = sys("a", vec![]);
        assert!(matches!(s.step(&w("z")), Err(Error::UnknownSymbol { .. })));
        assert!(s.conditions_hold("nope", &w("a")).is_err());
    }

    #[test]
    fn size_and_degree() {
        let empty = sys("a", vec![]);
        assert_eq!(empty.size(), SizeVector::default());
        assert_eq!(empty.size().total(), 0);
        assert_eq!(empty.degree(), Degree::default());

        let rc = sys(
            "c X Y",
            vec![
                ConditionedRule::ins("p.1", w("[]"), w("c Y"), w("[]")),
                ConditionedRule::del("p.2", w("Y"), w("X"), w("[]")),
            ],
        );
        assert_eq!(rc.size(), SizeVector::new(2, 0, 0, 1, 1, 0));

        let cf = sys(
            "x y",
            vec![
                ConditionedRule::ins("i", w("[]"), w("x"), w("[]")).with_forbid([w("x y")]),
                ConditionedRule::del("d", w("[]"), w("y"), w("[]")).with_permit([w("x")]),
            ],
        );
        assert_eq!(cf.size(), SizeVector::new(1, 0, 0, 1, 0, 0));
        assert_eq!(cf.size().total(), 2);
        assert_eq!(cf.degree(), Degree { permit: 1, forbid: 2 });
    }

    #[test]
    fn validation_errors() {
        let bad_body = InsDelSystem::new(
            "t",
            syms("a"),
            syms("a"),
            [w("a")],
            vec![ConditionedRule::ins("r", w("[]"), w("[]"), w("[]"))],
        );
        assert_eq!(bad_body, Err(Error::EmptyBody("r".into())));
        let dup = InsDelSystem::new(
            "t",
            syms("a"),
            syms("a"),
            [w("a")],
            vec![
                ConditionedRule::ins("r", w("[]"), w("a"), w("[]")),
                ConditionedRule::del("r", w("[]"), w("a"), w("[]")),
            ],
        );
        assert_eq!(dup, Err(Error::DuplicateRule("r".into())));
        assert_eq!(
            InsDelSystem::new("t", syms("a"), syms("b"), [w("a")], vec![]),
            Err(Error::TerminalNotInAlphabet(Symbol::new("b").unwrap()))
        );
        assert_eq!(
            InsDelSystem::new("t", syms("a"), syms("a"), Vec::<SymString>::new(), vec![]),
            Err(Error::NoAxioms)
        );
    }
}
