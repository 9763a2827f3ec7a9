use std::collections::BTreeMap;
use std::fmt;

use super::{Grammar, GrammarKind};
use crate::error::Result;
use crate::symbol::{SymString, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SgnfViolation {
    pub rule: String,
    pub reason: String,
}

impl fmt::Display for SgnfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SgnfReport {
    pub violations: Vec<SgnfViolation>,
}

impl SgnfReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SgnfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks that every rule has one of the shapes
///
/// * `X → bY` with `X, Y ∈ N′`, `b ∈ N″`, `X ≠ Y`
/// * `X → Yb` with `X, Y ∈ N′`, `b ∈ T ∪ N″`, `X ≠ Y`
/// * `S′ → λ`, `AB → λ`, `CD → λ`
///
/// and that the right-hand sides of the two linear shapes are unique,
/// except for `X → Sb` and `X → S′b`.
pub fn validate_sgnf(g: &Grammar) -> Result<SgnfReport> {
    validate_sgnf_with(g, false)
}

/// As [`validate_sgnf`]; with `allow_terminal_left` the shape `X → cY` with
/// `c ∈ T` is also accepted (it has its own simulation template).
pub fn validate_sgnf_with(g: &Grammar, allow_terminal_left: bool) -> Result<SgnfReport> {
    g.require_kind(GrammarKind::Sgnf)?;
    let parts = g.sgnf_parts().expect("sgnf grammar has parts");
    let nprime = |s: &Symbol| parts.nprime.contains(s);
    let ndouble = |s: &Symbol| parts.is_ndouble(s);
    let terminal = |s: &Symbol| g.terminals().contains(s);

    let mut report = SgnfReport::default();
    let mut flag = |rule: &str, reason: String| {
        report.violations.push(SgnfViolation {
            rule: rule.to_string(),
            reason,
        })
    };
    let mut linear_rhs: BTreeMap<SymString, Vec<(&str, &Symbol)>> = BTreeMap::new();

    for r in g.rules() {
        if r.has_conditions() {
            flag(&r.id, "normal-form rules carry no conditions".into());
        }
        let lhs = r.lhs.symbols();
        let rhs = r.rhs.symbols();
        match (lhs, rhs) {
            ([u, v], []) => {
                let ok = parts.erasing_pairs().iter().any(|(a, b)| *a == u && *b == v);
                if !ok {
                    flag(&r.id, format!("{u}{v} → λ is not one of the erasing rules AB → λ, CD → λ"));
                }
            }
            ([_, _], _) => flag(&r.id, "two-symbol left-hand sides must erase".into()),
            ([x], []) => {
                if *x != parts.sprime {
                    flag(&r.id, format!("only S′ = {} may be erased, not {x}", parts.sprime));
                }
            }
            ([x], [b, y]) if nprime(y) && (ndouble(b) || terminal(b)) => {
                if !nprime(x) {
                    flag(&r.id, format!("left-hand side {x} must be in N′"));
                }
                if terminal(b) && !allow_terminal_left {
                    flag(&r.id, format!("X → bY requires b ∈ N″, found terminal {b}"));
                }
                if x == y {
                    flag(&r.id, "X ≠ Y required".into());
                }
                linear_rhs.entry(r.rhs.clone()).or_default().push((&r.id, x));
            }
            ([x], [y, b]) if nprime(y) && (ndouble(b) || terminal(b)) => {
                if !nprime(x) {
                    flag(&r.id, format!("left-hand side {x} must be in N′"));
                }
                if x == y {
                    flag(&r.id, "X ≠ Y required".into());
                }
                if *y != *g.start() && *y != parts.sprime {
                    linear_rhs.entry(r.rhs.clone()).or_default().push((&r.id, x));
                }
            }
            _ => flag(&r.id, format!("{} → {} is not a normal-form shape", r.lhs, r.rhs)),
        }
    }
    for (rhs, users) in &linear_rhs {
        let first = users[0].1;
        for (id, x) in &users[1..] {
            if *x != first {
                flag(id, format!("right-hand side {rhs} is not unique (also derived from {first})"));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::{GrammarRule, SgnfParts};
    use super::*;
    use crate::error::Error;

    fn w(s: &str) -> SymString {
        s.parse().unwrap()
    }

    fn sym(s: &str) -> Symbol {
        Symbol::new(s).unwrap()
    }

    fn grammar(rules: Vec<GrammarRule>) -> Grammar {
        let parts = SgnfParts {
            nprime: w("S X Y Z S'").into_vec().into_iter().collect(),
            ndouble: [sym("A"), sym("B"), sym("C"), sym("D")],
            sprime: sym("S'"),
        };
        Grammar::sgnf("g", parts, w("a b").into_vec(), sym("S"), rules).unwrap()
    }

    fn r(id: &str, lhs: &str, rhs: &str) -> GrammarRule {
        GrammarRule::new(id, w(lhs), w(rhs))
    }

    #[test]
    fn accepts_the_normal_form_shapes() {
        let g = grammar(vec![
            r("1", "S", "A X"),
            r("2", "X", "S' B"),
            r("3", "S'", "[]"),
            r("4", "A B", "[]"),
        ]);
        assert!(validate_sgnf(&g).unwrap().valid());
        assert!(validate_sgnf(&grammar(vec![])).unwrap().valid());
    }

    #[test]
    fn rejects_self_loop() {
        let g = grammar(vec![r("1", "X", "B X")]);
        let rep = validate_sgnf(&g).unwrap();
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].reason, "X ≠ Y required");
    }

    #[test]
    fn rejects_bad_shapes() {
        let g = grammar(vec![
            r("e", "B A", "[]"),
            r("l", "X", "[]"),
            r("t", "X", "a Y"),
            r("c", "X", "a b"),
        ]);
        let rep = validate_sgnf(&g).unwrap();
        let ids: Vec<_> = rep.violations.iter().map(|v| v.rule.as_str()).collect();
        assert_eq!(ids, vec!["e", "l", "t", "c"]);
        let relaxed = validate_sgnf_with(&g, true).unwrap();
        assert_eq!(relaxed.violations.len(), 3);
    }

    #[test]
    fn rhs_uniqueness_with_exceptions() {
        let g = grammar(vec![r("1", "X", "A Y"), r("2", "Z", "A Y")]);
        let rep = validate_sgnf(&g).unwrap();
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].rule, "2");
        let g = grammar(vec![r("1", "X", "S a"), r("2", "Z", "S a"), r("3", "Y", "S' b"), r("4", "Z", "S' b")]);
        assert!(validate_sgnf(&g).unwrap().valid());
    }

    #[test]
    fn wrong_kind() {
        let g = Grammar::new("g", GrammarKind::Cf, [sym("S")], [sym("a")], sym("S"), vec![]).unwrap();
        assert!(matches!(validate_sgnf(&g), Err(Error::WrongKind { .. })));
    }
}
