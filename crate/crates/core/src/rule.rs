use std::collections::BTreeSet;
use std::fmt;

use crate::symbol::SymString;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Insertion,
    Deletion,
}

impl Mode {
    pub fn keyword(self) -> &'static str {
        match self {
            Mode::Insertion => "ins",
            Mode::Deletion => "del",
        }
    }
}

/// A contextual rule `(u, α, v)`.
///
/// Insertion rewrites `uv` to `uαv`; deletion rewrites `uαv` to `uv`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContextRule {
    pub mode: Mode,
    pub left: SymString,
    pub body: SymString,
    pub right: SymString,
}

impl fmt::Display for ContextRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({})({})({})",
            self.mode.keyword(),
            self.left,
            self.body,
            self.right
        )
    }
}

/// A contextual rule guarded by permitting and forbidding subwords.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConditionedRule {
    pub id: String,
    pub base: ContextRule,
    pub permit: BTreeSet<SymString>,
    pub forbid: BTreeSet<SymString>,
}

impl ConditionedRule {
    pub fn new(id: impl Into<String>, base: ContextRule) -> Self {
        ConditionedRule {
            id: id.into(),
            base,
            permit: BTreeSet::new(),
            forbid: BTreeSet::new(),
        }
    }

    pub fn ins(id: impl Into<String>, left: SymString, body: SymString, right: SymString) -> Self {
        Self::new(
            id,
            ContextRule {
                mode: Mode::Insertion,
                left,
                body,
                right,
            },
        )
    }

    pub fn del(id: impl Into<String>, left: SymString, body: SymString, right: SymString) -> Self {
        Self::new(
            id,
            ContextRule {
                mode: Mode::Deletion,
                left,
                body,
                right,
            },
        )
    }

    pub fn with_permit<I: IntoIterator<Item = SymString>>(mut self, words: I) -> Self {
        self.permit.extend(words);
        self
    }

    pub fn with_forbid<I: IntoIterator<Item = SymString>>(mut self, words: I) -> Self {
        self.forbid.extend(words);
        self
    }

    pub fn mode(&self) -> Mode {
        self.base.mode
    }

    /// Every permitting word occurs in `w` and no forbidding word does.
    pub fn conditions_hold(&self, w: &SymString) -> bool {
        self.permit.iter().all(|x| w.contains_subword(x.symbols()))
            && !self.forbid.iter().any(|y| w.contains_subword(y.symbols()))
    }

    /// First condition that blocks the rule on `w`, if any.
    pub fn blocking_condition(&self, w: &SymString) -> Option<Gate> {
        if let Some(x) = self.permit.iter().find(|x| !w.contains_subword(x.symbols())) {
            return Some(Gate::MissingPermit(x.clone()));
        }
        self.forbid
            .iter()
            .find(|y| w.contains_subword(y.symbols()))
            .map(|y| Gate::ForbiddenPresent(y.clone()))
    }

    /// Gap or start positions where the contexts (and the body, for
    /// deletion) match in `w`, ignoring conditions.
    pub fn match_positions(&self, w: &SymString) -> Vec<usize> {
        let s = w.symbols();
        let u = self.base.left.symbols();
        let a = self.base.body.symbols();
        let v = self.base.right.symbols();
        let mut out = Vec::new();
        match self.base.mode {
            Mode::Insertion => {
                for gap in u.len()..=s.len() {
                    if gap + v.len() <= s.len()
                        && &s[gap - u.len()..gap] == u
                        && &s[gap..gap + v.len()] == v
                    {
                        out.push(gap);
                    }
                }
            }
            Mode::Deletion => {
                let need = a.len() + v.len();
                for start in u.len()..=s.len() {
                    if start + need <= s.len()
                        && &s[start - u.len()..start] == u
                        && &s[start..start + a.len()] == a
                        && &s[start + a.len()..start + need] == v
                    {
                        out.push(start);
                    }
                }
            }
        }
        out
    }

    /// Result of applying the rule at `position`, ignoring conditions.
    /// The caller must pass a position from [`Self::match_positions`].
    pub fn apply_at(&self, w: &SymString, position: usize) -> SymString {
        let s = w.symbols();
        let a = self.base.body.symbols();
        let mut out = Vec::with_capacity(s.len() + a.len());
        match self.base.mode {
            Mode::Insertion => {
                out.extend_from_slice(&s[..position]);
                out.extend_from_slice(a);
                out.extend_from_slice(&s[position..]);
            }
            Mode::Deletion => {
                out.extend_from_slice(&s[..position]);
                out.extend_from_slice(&s[position + a.len()..]);
            }
        }
        SymString::from(out)
    }
}

impl fmt::Display for ConditionedRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id, self.base)?;
        if !self.permit.is_empty() || !self.forbid.is_empty() {
            write!(f, " permit {{{}}} forbid {{{}}}", join(&self.permit), join(&self.forbid))?;
        }
        Ok(())
    }
}

pub(crate) fn join(set: &BTreeSet<SymString>) -> String {
    set.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
}

/// Why a rule was not applicable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    MissingPermit(SymString),
    ForbiddenPresent(SymString),
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::MissingPermit(w) => write!(f, "permitting word {w} is absent"),
            Gate::ForbiddenPresent(w) => write!(f, "forbidding word {w} is present"),
        }
    }
}
