//! Index-based rewriting core shared by the system engine and the grammar
//! oracle.
//!
//! Symbols are interned as `u16`. Condition words of length one and two are
//! numbered; for each sentential form a bitset records which of them occur,
//! so checking a rule's permitting and forbidding sets is a handful of word
//! operations. Longer condition words fall back to a scan.

use std::collections::{BTreeSet, HashMap};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::symbol::{SymString, Symbol};

pub(crate) type Form = Box<[u16]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Action {
    /// `left · right → left · body · right`; position is the gap.
    Insert,
    /// `left · body · right → left · right`; position is the start of body.
    Delete,
    /// `body → right` (grammar production `lhs → rhs`); position is the
    /// start of the left-hand side.
    Replace,
}

pub(crate) struct RuleSpec<'a> {
    pub action: Action,
    pub left: &'a SymString,
    pub body: &'a SymString,
    pub right: &'a SymString,
    pub permit: &'a BTreeSet<SymString>,
    pub forbid: &'a BTreeSet<SymString>,
}

struct CRule {
    action: Action,
    left: Vec<u16>,
    body: Vec<u16>,
    right: Vec<u16>,
    permit: Vec<u64>,
    forbid: Vec<u64>,
    permit_long: Vec<Vec<u16>>,
    forbid_long: Vec<Vec<u16>>,
}

pub(crate) struct Compiled {
    symbols: Vec<Symbol>,
    index: HashMap<Symbol, u16>,
    terminal: Vec<bool>,
    rules: Vec<CRule>,
    words: FxHashMap<u64, u32>,
    blocks: usize,
}

fn key1(a: u16) -> u64 {
    a as u64
}

fn key2(a: u16, b: u16) -> u64 {
    (1u64 << 32) | ((a as u64) << 16) | b as u64
}

impl Compiled {
    pub fn new<'a>(
        symbols: impl IntoIterator<Item = &'a Symbol>,
        terminals: impl IntoIterator<Item = &'a Symbol>,
        rules: impl IntoIterator<Item = RuleSpec<'a>>,
    ) -> Result<Self> {
        let symbols: Vec<Symbol> = symbols.into_iter().cloned().collect();
        if symbols.len() >= u16::MAX as usize {
            return Err(Error::Precondition("alphabet too large for the engine".into()));
        }
        let index: HashMap<Symbol, u16> = symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u16))
            .collect();
        let mut terminal = vec![false; symbols.len()];
        for t in terminals {
            if let Some(&i) = index.get(t) {
                terminal[i as usize] = true;
            }
        }
        let mut c = Compiled {
            symbols,
            index,
            terminal,
            rules: Vec::new(),
            words: FxHashMap::default(),
            blocks: 0,
        };
        let specs: Vec<RuleSpec<'a>> = rules.into_iter().collect();
        for spec in &specs {
            for w in spec.permit.iter().chain(spec.forbid) {
                let enc = c.encode(w)?;
                if let Some(k) = Self::short_key(&enc) {
                    let next = c.words.len() as u32;
                    c.words.entry(k).or_insert(next);
                }
            }
        }
        c.blocks = c.words.len().div_ceil(64);
        for spec in &specs {
            let mut permit = vec![0u64; c.blocks];
            let mut forbid = vec![0u64; c.blocks];
            let mut permit_long = Vec::new();
            let mut forbid_long = Vec::new();
            for (set, mask, long) in [
                (spec.permit, &mut permit, &mut permit_long),
                (spec.forbid, &mut forbid, &mut forbid_long),
            ] {
                for w in set {
                    let enc = c.encode(w)?;
                    match Self::short_key(&enc) {
                        Some(k) => {
                            let bit = c.words[&k] as usize;
                            mask[bit / 64] |= 1 << (bit % 64);
                        }
                        None => long.push(enc),
                    }
                }
            }
            c.rules.push(CRule {
                action: spec.action,
                left: c.encode(spec.left)?,
                body: c.encode(spec.body)?,
                right: c.encode(spec.right)?,
                permit,
                forbid,
                permit_long,
                forbid_long,
            });
        }
        Ok(c)
    }

    fn short_key(enc: &[u16]) -> Option<u64> {
        match enc {
            [a] => Some(key1(*a)),
            [a, b] => Some(key2(*a, *b)),
            _ => None,
        }
    }

    pub fn encode(&self, w: &SymString) -> Result<Vec<u16>> {
        w.iter()
            .map(|s| {
                self.index.get(s).copied().ok_or_else(|| Error::UnknownSymbol {
                    symbol: s.clone(),
                    context: "engine input".into(),
                })
            })
            .collect()
    }

    pub fn decode(&self, f: &[u16]) -> SymString {
        f.iter().map(|&i| self.symbols[i as usize].clone()).collect()
    }

    pub fn symbol_id(&self, s: &Symbol) -> Option<u16> {
        self.index.get(s).copied()
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_terminal_form(&self, f: &[u16]) -> bool {
        f.iter().all(|&s| self.terminal[s as usize])
    }

    fn footprint(&self, f: &[u16]) -> Vec<u64> {
        let mut bits = vec![0u64; self.blocks];
        if self.blocks == 0 {
            return bits;
        }
        let mut mark = |k: u64| {
            if let Some(&b) = self.words.get(&k) {
                let b = b as usize;
                bits[b / 64] |= 1 << (b % 64);
            }
        };
        for (i, &a) in f.iter().enumerate() {
            mark(key1(a));
            if let Some(&b) = f.get(i + 1) {
                mark(key2(a, b));
            }
        }
        bits
    }

    fn enabled(&self, rule: &CRule, f: &[u16], fp: &[u64]) -> bool {
        let permit_ok = rule.permit.iter().zip(fp).all(|(m, b)| m & b == *m);
        let forbid_ok = rule.forbid.iter().zip(fp).all(|(m, b)| m & b == 0);
        permit_ok
            && forbid_ok
            && rule.permit_long.iter().all(|w| contains(f, w))
            && !rule.forbid_long.iter().any(|w| contains(f, w))
    }

    /// All one-step successors as `(rule index, position, form)`, in rule
    /// order then position order.
    pub fn successors(&self, f: &[u16], out: &mut Vec<(u32, u32, Form)>) {
        let fp = self.footprint(f);
        for (ri, rule) in self.rules.iter().enumerate() {
            if !self.enabled(rule, f, &fp) {
                continue;
            }
            let (u, a, v) = (&rule.left[..], &rule.body[..], &rule.right[..]);
            match rule.action {
                Action::Insert => {
                    for gap in u.len()..=f.len() {
                        if gap + v.len() <= f.len()
                            && &f[gap - u.len()..gap] == u
                            && &f[gap..gap + v.len()] == v
                        {
                            let mut n = Vec::with_capacity(f.len() + a.len());
                            n.extend_from_slice(&f[..gap]);
                            n.extend_from_slice(a);
                            n.extend_from_slice(&f[gap..]);
                            out.push((ri as u32, gap as u32, n.into_boxed_slice()));
                        }
                    }
                }
                Action::Delete => {
                    let need = a.len() + v.len();
                    for start in u.len()..=f.len() {
                        if start + need <= f.len()
                            && &f[start - u.len()..start] == u
                            && &f[start..start + a.len()] == a
                            && &f[start + a.len()..start + need] == v
                        {
                            let mut n = Vec::with_capacity(f.len() - a.len());
                            n.extend_from_slice(&f[..start]);
                            n.extend_from_slice(&f[start + a.len()..]);
                            out.push((ri as u32, start as u32, n.into_boxed_slice()));
                        }
                    }
                }
                Action::Replace => {
                    for start in 0..f.len() {
                        if start + a.len() <= f.len() && &f[start..start + a.len()] == a {
                            let mut n = Vec::with_capacity(f.len() + v.len());
                            n.extend_from_slice(&f[..start]);
                            n.extend_from_slice(v);
                            n.extend_from_slice(&f[start + a.len()..]);
                            out.push((ri as u32, start as u32, n.into_boxed_slice()));
                        }
                    }
                }
            }
        }
    }
}

fn contains(f: &[u16], w: &[u16]) -> bool {
    w.is_empty() || f.windows(w.len()).any(|x| x == w)
}
