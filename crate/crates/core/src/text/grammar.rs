use std::collections::HashMap;

use indexmap::IndexSet;

use super::{directive, join_symbols, lines, parse_err, render_conditions, symbols, Cursor};
use crate::error::{Error, Result};
use crate::grammar::{Grammar, GrammarKind, GrammarRule, SgnfParts};
use crate::symbol::{SymString, Symbol};

fn parse_rule(line: usize, rest: &str) -> Result<GrammarRule> {
    let mut c = Cursor::new(line, rest);
    let id = c.word()?.to_string();
    let mut lhs = SymString::empty();
    while c.peek_char() == Some('[') {
        for s in c.string()?.into_vec() {
            lhs.push(s);
        }
    }
    if lhs.is_empty() {
        return Err(parse_err(line, format!("rule {id} has an empty left-hand side")));
    }
    if !c.keyword("->") {
        return Err(parse_err(line, "expected '->'"));
    }
    let rhs = c.string()?;
    let (permit, forbid) = c.conditions()?;
    Ok(GrammarRule {
        id,
        lhs,
        rhs,
        permit,
        forbid,
    })
}

fn single(line: usize, what: &str, rest: &str) -> Result<Symbol> {
    match symbols(line, rest)?.as_slice() {
        [s] => Ok(s.clone()),
        _ => Err(parse_err(line, format!("@{what} takes exactly one symbol"))),
    }
}

#[derive(Default)]
struct Header {
    name: Option<(usize, String, GrammarKind)>,
    nonterminals: IndexSet<Symbol>,
    nonterminals_line: Option<usize>,
    nprime: IndexSet<Symbol>,
    ndouble: Option<(usize, Vec<Symbol>)>,
    sprime: Option<(usize, Symbol)>,
    terminals: IndexSet<Symbol>,
    start: Option<(usize, Symbol)>,
}

/// Parses the grammar format:
///
/// ```text
/// @grammar NAME kind=cf|rc|sc|sgnf
/// @nonterminals S X          # cf, rc, sc
/// @nprime S S' X             # sgnf only, with the next two
/// @ndouble A B C D
/// @sprime S'
/// @terminals a b
/// @start S
/// @rule ID [lhs] .. -> [rhs] permit {[w] ..} forbid {[w] ..}
/// ```
///
/// A left-hand side may be split over several brackets; `[A] [B]` and
/// `[A B]` are the same.
pub fn parse_grammar(text: &str) -> Result<Grammar> {
    let mut h = Header::default();
    let mut rules: Vec<(usize, GrammarRule)> = Vec::new();
    let mut last_line = 0;

    for (line, l) in lines(text) {
        last_line = line;
        let (d, rest) = directive(line, l)?;
        match d {
            "grammar" => {
                if h.name.is_some() {
                    return Err(parse_err(line, "second @grammar line"));
                }
                let mut parts = rest.split_whitespace();
                let (Some(name), Some(kind), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(parse_err(line, "expected @grammar NAME kind=KIND"));
                };
                let kind = kind
                    .strip_prefix("kind=")
                    .ok_or_else(|| parse_err(line, "expected kind=KIND"))?
                    .parse::<GrammarKind>()
                    .map_err(|e| parse_err(line, e.to_string()))?;
                h.name = Some((line, name.to_string(), kind));
            }
            "nonterminals" => {
                h.nonterminals.extend(symbols(line, rest)?);
                h.nonterminals_line.get_or_insert(line);
            }
            "nprime" => h.nprime.extend(symbols(line, rest)?),
            "ndouble" => h.ndouble = Some((line, symbols(line, rest)?)),
            "sprime" => h.sprime = Some((line, single(line, "sprime", rest)?)),
            "terminals" => h.terminals.extend(symbols(line, rest)?),
            "start" => h.start = Some((line, single(line, "start", rest)?)),
            "rule" => rules.push((line, parse_rule(line, rest)?)),
            other => return Err(parse_err(line, format!("unknown directive @{other}"))),
        }
    }

    let (gline, name, kind) = h
        .name
        .clone()
        .ok_or_else(|| parse_err(last_line.max(1), "missing @grammar line"))?;
    let (sline, start) = h
        .start
        .clone()
        .ok_or_else(|| parse_err(last_line.max(1), "missing @start line"))?;
    let header_err = |e: Error| parse_err(gline, e.to_string());

    let empty = if kind == GrammarKind::Sgnf {
        if let Some(l) = h.nonterminals_line {
            return Err(parse_err(l, "sgnf grammars declare @nprime and @ndouble, not @nonterminals"));
        }
        let (nline, nd) = h
            .ndouble
            .clone()
            .ok_or_else(|| parse_err(gline, "sgnf grammars need an @ndouble line"))?;
        let ndouble: [Symbol; 4] = nd
            .try_into()
            .map_err(|_| parse_err(nline, "@ndouble takes exactly four symbols"))?;
        let (_, sprime) = h
            .sprime
            .clone()
            .ok_or_else(|| parse_err(gline, "sgnf grammars need an @sprime line"))?;
        let parts = SgnfParts {
            nprime: h.nprime.clone(),
            ndouble,
            sprime,
        };
        Grammar::sgnf(name, parts, h.terminals.clone(), start, vec![]).map_err(header_err)?
    } else {
        for (what, l) in [("ndouble", &h.ndouble.as_ref().map(|x| x.0)), ("sprime", &h.sprime.as_ref().map(|x| x.0))] {
            if let Some(l) = l {
                return Err(parse_err(*l, format!("@{what} is only allowed in sgnf grammars")));
            }
        }
        if !h.nprime.is_empty() {
            return Err(parse_err(gline, "@nprime is only allowed in sgnf grammars"));
        }
        Grammar::new(name, kind, h.nonterminals.clone(), h.terminals.clone(), start, vec![])
            .map_err(|e| parse_err(sline, e.to_string()))?
    };

    // Each rule is checked on its own so errors point at its line.
    let mut seen = HashMap::new();
    for (line, r) in &rules {
        if let Some(first) = seen.insert(r.id.clone(), *line) {
            return Err(parse_err(*line, format!("duplicate rule id {} (first at line {first})", r.id)));
        }
        let words = [&r.lhs, &r.rhs].into_iter().chain(&r.permit).chain(&r.forbid);
        for w in words {
            if let Some(s) = w
                .iter()
                .find(|s| !empty.nonterminals().contains(*s) && !empty.terminals().contains(*s))
            {
                return Err(parse_err(*line, format!("unknown symbol {s}")));
            }
        }
        empty
            .with_rules([], vec![r.clone()])
            .map_err(|e| parse_err(*line, e.to_string()))?;
    }
    empty
        .with_rules([], rules.into_iter().map(|(_, r)| r).collect())
        .map_err(header_err)
}

/// Canonical text for `g`; `parse_grammar` inverts it.
pub fn render_grammar(g: &Grammar) -> String {
    let mut out = format!("@grammar {} kind={}\n", g.name(), g.kind());
    match g.sgnf_parts() {
        Some(p) => {
            out.push_str(&format!("@nprime {}\n", join_symbols(&p.nprime)));
            out.push_str(&format!("@ndouble {}\n", join_symbols(&p.ndouble)));
            out.push_str(&format!("@sprime {}\n", p.sprime));
        }
        None => out.push_str(&format!("@nonterminals {}\n", join_symbols(g.nonterminals()))),
    }
    if !g.terminals().is_empty() {
        out.push_str(&format!("@terminals {}\n", join_symbols(g.terminals())));
    }
    out.push_str(&format!("@start {}\n", g.start()));
    for r in g.rules() {
        let lhs: Vec<String> = r.lhs.iter().map(|s| format!("[{s}]")).collect();
        out.push_str(&format!("@rule {} {} -> {}", r.id, lhs.join(" "), r.rhs));
        render_conditions(&mut out, &r.permit, &r.forbid);
        out.push('\n');
    }
    out
}
