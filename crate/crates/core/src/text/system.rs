use std::collections::HashMap;

use indexmap::IndexSet;

use super::{directive, join_symbols, lines, parse_err, render_conditions, symbols, Cursor};
use crate::error::Result;
use crate::rule::{ConditionedRule, ContextRule, Mode};
use crate::symbol::{SymString, Symbol};
use crate::system::InsDelSystem;

/// Checks every symbol of `words` against the declared alphabet.
fn check_declared<'a>(
    alphabet: &IndexSet<Symbol>,
    line: usize,
    words: impl IntoIterator<Item = &'a SymString>,
) -> Result<()> {
    for w in words {
        if let Some(s) = w.iter().find(|s| !alphabet.contains(*s)) {
            return Err(parse_err(line, format!("unknown symbol {s}")));
        }
    }
    Ok(())
}

fn parse_rule(line: usize, rest: &str) -> Result<ConditionedRule> {
    let mut c = Cursor::new(line, rest);
    let id = c.word()?.to_string();
    let mode = match c.word()? {
        "ins" => Mode::Insertion,
        "del" => Mode::Deletion,
        other => return Err(parse_err(line, format!("expected ins or del, found {other}"))),
    };
    let mut part = || -> Result<SymString> {
        c.expect('(')?;
        let w = c.string()?;
        c.expect(')')?;
        Ok(w)
    };
    let left = part()?;
    let body = part()?;
    let right = part()?;
    if body.is_empty() {
        return Err(parse_err(line, format!("rule {id} has an empty body")));
    }
    let (permit, forbid) = c.conditions()?;
    Ok(ConditionedRule {
        id,
        base: ContextRule {
            mode,
            left,
            body,
            right,
        },
        permit,
        forbid,
    })
}

/// Parses the system format:
///
/// ```text
/// @system NAME
/// @alphabet a b X
/// @terminals a b
/// @nprime X            # optional
/// @axiom [X]           # one or more
/// @rule ID ins|del ([left])([body])([right]) permit {[w] ..} forbid {[w] ..}
/// ```
pub fn parse_system(text: &str) -> Result<InsDelSystem> {
    let mut name = None;
    let mut alphabet = IndexSet::new();
    let mut terminals: Vec<(usize, Vec<Symbol>)> = Vec::new();
    let mut nprime: Vec<(usize, Vec<Symbol>)> = Vec::new();
    let mut axioms: Vec<(usize, SymString)> = Vec::new();
    let mut rules: Vec<(usize, ConditionedRule)> = Vec::new();
    let mut last_line = 0;

    for (line, l) in lines(text) {
        last_line = line;
        let (d, rest) = directive(line, l)?;
        match d {
            "system" => {
                if name.is_some() {
                    return Err(parse_err(line, "second @system line"));
                }
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(parse_err(line, "@system takes exactly one name"));
                }
                name = Some(rest.to_string());
            }
            "alphabet" => alphabet.extend(symbols(line, rest)?),
            "terminals" => terminals.push((line, symbols(line, rest)?)),
            "nprime" => nprime.push((line, symbols(line, rest)?)),
            "axiom" => {
                let mut c = Cursor::new(line, rest);
                let w = c.string()?;
                if !c.is_empty() {
                    return Err(parse_err(line, "unexpected text after the axiom"));
                }
                axioms.push((line, w));
            }
            "rule" => rules.push((line, parse_rule(line, rest)?)),
            other => return Err(parse_err(line, format!("unknown directive @{other}"))),
        }
    }

    let name = name.ok_or_else(|| parse_err(last_line.max(1), "missing @system line"))?;
    for (line, syms) in terminals.iter().chain(&nprime) {
        if let Some(s) = syms.iter().find(|s| !alphabet.contains(*s)) {
            return Err(parse_err(*line, format!("unknown symbol {s}")));
        }
    }
    if axioms.is_empty() {
        return Err(parse_err(last_line.max(1), "system has no @axiom line"));
    }
    for (line, a) in &axioms {
        check_declared(&alphabet, *line, [a])?;
    }
    let mut seen = HashMap::new();
    for (line, r) in &rules {
        if let Some(first) = seen.insert(r.id.clone(), *line) {
            return Err(parse_err(*line, format!("duplicate rule id {} (first at line {first})", r.id)));
        }
        let b = &r.base;
        check_declared(
            &alphabet,
            *line,
            [&b.left, &b.body, &b.right].into_iter().chain(&r.permit).chain(&r.forbid),
        )?;
    }

    let rule_lines: Vec<usize> = rules.iter().map(|(l, _)| *l).collect();
    let sys = InsDelSystem::new(
        name,
        alphabet,
        terminals.into_iter().flat_map(|(_, s)| s),
        axioms.into_iter().map(|(_, a)| a),
        rules.into_iter().map(|(_, r)| r).collect(),
    )
    .map_err(|e| parse_err(rule_lines.first().copied().unwrap_or(last_line.max(1)), e.to_string()))?;
    if nprime.is_empty() {
        Ok(sys)
    } else {
        sys.with_nprime(nprime.into_iter().flat_map(|(_, s)| s))
    }
}

fn render_rule(out: &mut String, r: &ConditionedRule) {
    let b = &r.base;
    let mode = match b.mode {
        Mode::Insertion => "ins",
        Mode::Deletion => "del",
    };
    out.push_str(&format!("@rule {} {mode} ({})({})({})", r.id, b.left, b.body, b.right));
    render_conditions(out, &r.permit, &r.forbid);
    out.push('\n');
}

/// Canonical text for `sys`; `parse_system` inverts it.
pub fn render_system(sys: &InsDelSystem) -> String {
    let mut out = format!("@system {}\n", sys.name());
    out.push_str(&format!("@alphabet {}\n", join_symbols(sys.alphabet())));
    if !sys.terminals().is_empty() {
        out.push_str(&format!("@terminals {}\n", join_symbols(sys.terminals())));
    }
    if !sys.nprime().is_empty() {
        out.push_str(&format!("@nprime {}\n", join_symbols(sys.nprime())));
    }
    for a in sys.axioms() {
        out.push_str(&format!("@axiom {a}\n"));
    }
    for r in sys.rules() {
        render_rule(&mut out, r);
    }
    out
}
