//! Bounded derivation search: language enumeration, membership, trace
//! replay and insertion pumping.

mod compiled;
mod explore;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub(crate) use compiled::{Action, Compiled, RuleSpec};
pub(crate) use explore::{explore, Exploration};

use crate::error::{Error, Result};
use crate::rule::{Gate, Mode};
use crate::symbol::SymString;
use crate::system::InsDelSystem;

/// Caps that make the search finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    /// Longest terminal string reported.
    pub max_terminal_len: usize,
    /// Longest sentential form kept; longer successors are pruned.
    pub max_form_len: usize,
    /// Maximum derivation depth.
    pub max_steps: usize,
    /// Budget on stored states.
    pub max_states: usize,
}

impl SearchBounds {
    /// Default caps for a given terminal length: eight symbols of slack for
    /// service symbols, 64 steps, two million states.
    pub fn with_terminal_len(max_terminal_len: usize) -> Self {
        SearchBounds {
            max_terminal_len,
            max_form_len: max_terminal_len + 8,
            max_steps: 64,
            max_states: 2_000_000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_form_len < self.max_terminal_len {
            return Err(Error::InvalidBounds(format!(
                "max_form_len {} is smaller than max_terminal_len {}",
                self.max_form_len, self.max_terminal_len
            )));
        }
        Ok(())
    }
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self::with_terminal_len(6)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads used to expand a level; 0 or 1 means sequential.
    pub workers: usize,
    /// Discard forms in which some symbol of the system's declared N′ set
    /// occurs twice.
    pub assume_single_nprime: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            assume_single_nprime: false,
        }
    }
}

impl SearchOptions {
    pub fn sequential() -> Self {
        SearchOptions {
            workers: 1,
            ..Self::default()
        }
    }

    pub fn with_workers(workers: usize) -> Self {
        SearchOptions {
            workers,
            ..Self::default()
        }
    }
}

/// Counters describing how much of the space was cut away.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Stored states.
    pub states: usize,
    /// Deepest level that received new states.
    pub levels: usize,
    /// Successors discarded for exceeding `max_form_len`.
    pub form_len_pruned: u64,
    /// Distinct new forms left unexplored at the `max_steps` horizon.
    pub depth_cut: u64,
    /// Successors discarded by the single-N′ assumption.
    pub assumption_pruned: u64,
    /// The state budget stopped the search.
    pub budget_hit: bool,
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "states={} levels={} form_len_pruned={} depth_cut={} assumption_pruned={} budget_hit={}",
            self.states,
            self.levels,
            self.form_len_pruned,
            self.depth_cut,
            self.assumption_pruned,
            self.budget_hit
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub terminals: BTreeSet<SymString>,
    /// The bounded space (forms within `max_form_len`, derivations within
    /// `max_steps`) was explored completely, i.e. the state budget was not
    /// hit. Cuts by the two caps are counted in `stats`.
    pub exhausted: bool,
    pub stats: SearchStats,
}

impl EnumerationResult {
    /// Terminal strings in listing order.
    pub fn listing(&self) -> Vec<SymString> {
        crate::symbol::sorted_listing(&self.terminals)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TraceStep {
    pub rule: String,
    pub position: usize,
}

impl TraceStep {
    pub fn new(rule: impl Into<String>, position: usize) -> Self {
        TraceStep {
            rule: rule.into(),
            position,
        }
    }
}

/// A replayable derivation: a start form plus `(rule, position)` steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trace {
    pub system_name: String,
    pub start: SymString,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn new(system_name: impl Into<String>, start: SymString) -> Self {
        Trace {
            system_name: system_name.into(),
            start,
            steps: Vec::new(),
        }
    }

    pub fn step(mut self, rule: impl Into<String>, position: usize) -> Self {
        self.steps.push(TraceStep::new(rule, position));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Derivable(Trace),
    NotFoundWithinBounds,
    /// The bounded search finished without depth or budget cuts and the
    /// string was not reached. Absence holds relative to `max_form_len`.
    CertifiedAbsent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartPolicy {
    /// The start form must be an axiom.
    Axiom,
    /// Any form over the alphabet may start the trace.
    AnyForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepFailure {
    Gated(Gate),
    ContextMismatch,
}

impl fmt::Display for StepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepFailure::Gated(g) => write!(f, "condition gating: {g}"),
            StepFailure::ContextMismatch => f.write_str("context mismatch"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("start form {0} is not an axiom")]
    StartNotAxiom(SymString),
    #[error("malformed start form: {0}")]
    MalformedStart(Error),
    #[error("step {index}: unknown rule {rule}")]
    UnknownRule { index: usize, rule: String },
    #[error("step {index}: {rule} @ {position} not applicable to {form}: {failure}")]
    Inapplicable {
        index: usize,
        rule: String,
        position: usize,
        form: SymString,
        failure: StepFailure,
    },
}

impl ReplayError {
    /// Index of the failing step, if the failure is tied to one.
    pub fn step_index(&self) -> Option<usize> {
        match self {
            ReplayError::UnknownRule { index, .. } | ReplayError::Inapplicable { index, .. } => {
                Some(*index)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PumpError {
    #[error("step index {index} out of range (trace has {len} steps)")]
    StepOutOfRange { index: usize, len: usize },
    #[error("step {index} uses {rule}, which is not an insertion rule")]
    NotInsertion { index: usize, rule: String },
    #[error("original trace does not replay: {0}")]
    Original(ReplayError),
    #[error("pumped trace does not replay: {0}")]
    Pumped(ReplayError),
}

/// A system prepared for repeated searches.
pub struct Engine<'a> {
    system: &'a InsDelSystem,
    compiled: Compiled,
}

impl<'a> Engine<'a> {
    pub fn new(system: &'a InsDelSystem) -> Result<Self> {
        let compiled = Compiled::new(
            system.alphabet(),
            system.terminals(),
            system.rules().iter().map(|r| RuleSpec {
                action: match r.base.mode {
                    Mode::Insertion => Action::Insert,
                    Mode::Deletion => Action::Delete,
                },
                left: &r.base.left,
                body: &r.base.body,
                right: &r.base.right,
                permit: &r.permit,
                forbid: &r.forbid,
            }),
        )?;
        Ok(Engine { system, compiled })
    }

    pub fn system(&self) -> &InsDelSystem {
        self.system
    }

    /// Breadth-first closure of the axioms within `bounds`.
    pub fn search(&self, bounds: &SearchBounds, opts: &SearchOptions) -> Result<Search<'_>> {
        bounds.validate()?;
        let starts = self
            .system
            .axioms()
            .iter()
            .map(|a| self.compiled.encode(a).map(Vec::into_boxed_slice))
            .collect::<Result<Vec<_>>>()?;
        let nprime: Vec<u16> = self
            .system
            .nprime()
            .iter()
            .filter_map(|s| self.compiled.symbol_id(s))
            .collect();
        let mut marked = vec![false; self.compiled.symbol_count()];
        for &i in &nprime {
            marked[i as usize] = true;
        }
        let single_nprime = move |f: &[u16]| {
            let mut seen: Vec<u16> = Vec::new();
            for &s in f {
                if marked[s as usize] {
                    if seen.contains(&s) {
                        return true;
                    }
                    seen.push(s);
                }
            }
            false
        };
        let prune: Option<explore::Prune<'_>> =
            if opts.assume_single_nprime && !nprime.is_empty() {
                Some(&single_nprime)
            } else {
                None
            };
        let exploration = explore(&self.compiled, &starts, bounds, opts, prune);
        Ok(Search {
            engine: self,
            exploration,
            bounds: *bounds,
        })
    }
}

/// Result of one bounded search, kept for witness extraction.
pub struct Search<'e> {
    engine: &'e Engine<'e>,
    exploration: Exploration,
    bounds: SearchBounds,
}

impl Search<'_> {
    pub fn stats(&self) -> SearchStats {
        self.exploration.stats
    }

    pub fn exhausted(&self) -> bool {
        !self.exploration.stats.budget_hit
    }

    pub fn result(&self) -> EnumerationResult {
        let c = &self.engine.compiled;
        let terminals = self
            .exploration
            .states
            .iter()
            .filter(|f| f.len() <= self.bounds.max_terminal_len && c.is_terminal_form(f))
            .map(|f| c.decode(f))
            .collect();
        EnumerationResult {
            terminals,
            exhausted: self.exhausted(),
            stats: self.stats(),
        }
    }

    pub fn forms(&self) -> BTreeSet<SymString> {
        let c = &self.engine.compiled;
        self.exploration.states.iter().map(|f| c.decode(f)).collect()
    }

    pub fn contains(&self, w: &SymString) -> bool {
        match self.engine.compiled.encode(w) {
            Ok(e) => self.exploration.states.contains(&e[..]),
            Err(_) => false,
        }
    }

    /// A derivation reaching `w`, reconstructed from BFS parent links.
    pub fn trace_to(&self, w: &SymString) -> Option<Trace> {
        let enc = self.engine.compiled.encode(w).ok()?;
        let mut idx = self.exploration.states.get_index_of(&enc[..])?;
        let mut steps = Vec::new();
        while let Some((parent, rule, pos)) = self.exploration.parents[idx] {
            let id = &self.engine.system.rules()[rule as usize].id;
            steps.push(TraceStep::new(id.clone(), pos as usize));
            idx = parent as usize;
        }
        steps.reverse();
        let start = self.engine.compiled.decode(&self.exploration.states[idx]);
        Some(Trace {
            system_name: self.engine.system.name().to_string(),
            start,
            steps,
        })
    }
}

pub fn enumerate_language(
    system: &InsDelSystem,
    bounds: &SearchBounds,
    opts: &SearchOptions,
) -> Result<EnumerationResult> {
    let engine = Engine::new(system)?;
    let search = engine.search(bounds, opts)?;
    Ok(search.result())
}

/// Every sentential form explored by the bounded search.
pub fn reachable_forms(
    system: &InsDelSystem,
    bounds: &SearchBounds,
    opts: &SearchOptions,
) -> Result<BTreeSet<SymString>> {
    let engine = Engine::new(system)?;
    let search = engine.search(bounds, opts)?;
    Ok(search.forms())
}

pub fn membership(
    system: &InsDelSystem,
    w: &SymString,
    bounds: &SearchBounds,
    opts: &SearchOptions,
) -> Result<Membership> {
    if let Some(s) = w.iter().find(|s| !system.terminals().contains(*s)) {
        return Err(Error::UnknownSymbol {
            symbol: s.clone(),
            context: "membership query (terminals only)".into(),
        });
    }
    let engine = Engine::new(system)?;
    let search = engine.search(bounds, opts)?;
    if let Some(t) = search.trace_to(w) {
        return Ok(Membership::Derivable(t));
    }
    let stats = search.stats();
    if !stats.budget_hit && stats.depth_cut == 0 && stats.assumption_pruned == 0 {
        Ok(Membership::CertifiedAbsent)
    } else {
        Ok(Membership::NotFoundWithinBounds)
    }
}

/// Replays `trace` and returns every form along the way, start included.
pub fn replay_forms(
    system: &InsDelSystem,
    trace: &Trace,
    policy: StartPolicy,
) -> Result<Vec<SymString>, ReplayError> {
    system
        .check_word(&trace.start, "trace start")
        .map_err(ReplayError::MalformedStart)?;
    if policy == StartPolicy::Axiom && !system.axioms().contains(&trace.start) {
        return Err(ReplayError::StartNotAxiom(trace.start.clone()));
    }
    let mut forms = vec![trace.start.clone()];
    for (index, st) in trace.steps.iter().enumerate() {
        let rule = system.rule(&st.rule).ok_or_else(|| ReplayError::UnknownRule {
            index,
            rule: st.rule.clone(),
        })?;
        let cur = forms.last().expect("non-empty");
        let fail = |failure| ReplayError::Inapplicable {
            index,
            rule: st.rule.clone(),
            position: st.position,
            form: cur.clone(),
            failure,
        };
        if let Some(g) = rule.blocking_condition(cur) {
            return Err(fail(StepFailure::Gated(g)));
        }
        if !rule.match_positions(cur).contains(&st.position) {
            return Err(fail(StepFailure::ContextMismatch));
        }
        let next = rule.apply_at(cur, st.position);
        forms.push(next);
    }
    Ok(forms)
}

/// Folds the trace steps over the start form.
pub fn replay(
    system: &InsDelSystem,
    trace: &Trace,
    policy: StartPolicy,
) -> Result<SymString, ReplayError> {
    replay_forms(system, trace, policy).map(|mut f| f.pop().expect("non-empty"))
}

/// Repeats the insertion at `step_index` `k` more times at the same gap and
/// re-validates the whole trace.
///
/// Later steps whose position is at or right of the pumped gap are shifted
/// by `k·|α|`.
pub fn pump_insertion(
    system: &InsDelSystem,
    trace: &Trace,
    step_index: usize,
    k: usize,
    policy: StartPolicy,
) -> Result<Trace, PumpError> {
    let len = trace.steps.len();
    let pumped_step = trace
        .steps
        .get(step_index)
        .ok_or(PumpError::StepOutOfRange { index: step_index, len })?;
    replay_forms(system, trace, policy).map_err(PumpError::Original)?;
    let rule = system
        .rule(&pumped_step.rule)
        .expect("rule exists: trace replayed");
    if rule.mode() != Mode::Insertion {
        return Err(PumpError::NotInsertion {
            index: step_index,
            rule: rule.id.clone(),
        });
    }
    let site = pumped_step.position;
    let shift = k * rule.base.body.len();
    let mut steps = trace.steps[..=step_index].to_vec();
    steps.extend(std::iter::repeat_n(pumped_step.clone(), k));
    steps.extend(trace.steps[step_index + 1..].iter().map(|s| TraceStep {
        rule: s.rule.clone(),
        position: if s.position >= site { s.position + shift } else { s.position },
    }));
    let pumped = Trace {
        system_name: trace.system_name.clone(),
        start: trace.start.clone(),
        steps,
    };
    replay_forms(system, &pumped, policy).map_err(PumpError::Pumped)?;
    Ok(pumped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::ConditionedRule;
    use crate::symbol::Symbol;

    fn w(s: &str) -> SymString {
        s.parse().unwrap()
    }

    fn syms(s: &str) -> Vec<Symbol> {
        w(s).into_vec()
    }

    fn ab_system(rules: Vec<ConditionedRule>) -> InsDelSystem {
        InsDelSystem::new("t", syms("a b"), syms("a b"), [w("a b")], rules).unwrap()
    }

    fn bounds(len: usize) -> SearchBounds {
        SearchBounds::with_terminal_len(len)
    }

    #[test]
    fn no_rules_gives_axiom_only() {
        let s = ab_system(vec![]);
        let r = enumerate_language(&s, &bounds(6), &SearchOptions::sequential()).unwrap();
        assert_eq!(r.terminals, BTreeSet::from([w("a b")]));
        assert!(r.exhausted);
        assert_eq!(r.stats.depth_cut, 0);
    }

    #[test]
    fn free_insertion_of_ab() {
        let s = ab_system(vec![ConditionedRule::ins("r", w("[]"), w("a b"), w("[]"))]);
        let b = SearchBounds {
            max_terminal_len: 4,
            max_form_len: 4,
            ..bounds(4)
        };
        let r = enumerate_language(&s, &b, &SearchOptions::sequential()).unwrap();
        assert_eq!(
            r.terminals,
            BTreeSet::from([w("a b"), w("a a b b"), w("a b a b")])
        );
        assert!(r.stats.form_len_pruned > 0);
    }

    #[test]
    fn reachable_one_level() {
        let s = ab_system(vec![ConditionedRule::ins("r", w("[]"), w("a b"), w("[]"))]);
        let b = SearchBounds {
            max_steps: 1,
            ..bounds(6)
        };
        let forms = reachable_forms(&s, &b, &SearchOptions::sequential()).unwrap();
        assert_eq!(forms, BTreeSet::from([w("a b"), w("a b a b"), w("a a b b")]));
    }

    #[test]
    fn membership_outcomes() {
        let s = ab_system(vec![]);
        let opts = SearchOptions::sequential();
        assert!(matches!(
            membership(&s, &w("a b"), &bounds(6), &opts).unwrap(),
            Membership::Derivable(_)
        ));
        assert_eq!(
            membership(&s, &w("b a"), &bounds(6), &opts).unwrap(),
            Membership::CertifiedAbsent
        );
        let grow = ab_system(vec![ConditionedRule::ins("r", w("[]"), w("a"), w("[]"))]);
        let shallow = SearchBounds {
            max_steps: 1,
            ..bounds(6)
        };
        assert_eq!(
            membership(&grow, &w("b a"), &shallow, &opts).unwrap(),
            Membership::NotFoundWithinBounds
        );
    }

    #[test]
    fn membership_rejects_nonterminals() {
        let s = InsDelSystem::new("t", syms("a X"), syms("a"), [w("a")], vec![]).unwrap();
        assert!(membership(&s, &w("X"), &bounds(3), &SearchOptions::sequential()).is_err());
    }

    #[test]
    fn witness_traces_replay() {
        let s = ab_system(vec![
            ConditionedRule::ins("i1", w("b"), w("a"), w("[]")),
            ConditionedRule::ins("i2", w("a"), w("b"), w("[]")),
        ]);
        let engine = Engine::new(&s).unwrap();
        let search = engine.search(&bounds(5), &SearchOptions::sequential()).unwrap();
        for t in search.result().terminals {
            let trace = search.trace_to(&t).unwrap();
            assert_eq!(replay(&s, &trace, StartPolicy::Axiom).unwrap(), t);
        }
    }

    #[test]
    fn replay_reports_unknown_rule_and_bad_start() {
        let s = ab_system(vec![]);
        let t = Trace::new("t", w("a b")).step("zz", 0);
        assert_eq!(
            replay(&s, &t, StartPolicy::Axiom),
            Err(ReplayError::UnknownRule {
                index: 0,
                rule: "zz".into()
            })
        );
        let t = Trace::new("t", w("b"));
        assert_eq!(
            replay(&s, &t, StartPolicy::Axiom),
            Err(ReplayError::StartNotAxiom(w("b")))
        );
        assert_eq!(replay(&s, &t, StartPolicy::AnyForm), Ok(w("b")));
    }

    #[test]
    fn pump_zero_is_identity() {
        let s = ab_system(vec![ConditionedRule::ins("i", w("a"), w("b"), w("[]"))]);
        let t = Trace::new("t", w("a b")).step("i", 1);
        let p = pump_insertion(&s, &t, 0, 0, StartPolicy::Axiom).unwrap();
        assert_eq!(p, t);
        assert!(matches!(
            pump_insertion(&s, &t, 3, 1, StartPolicy::Axiom),
            Err(PumpError::StepOutOfRange { .. })
        ));
    }

    #[test]
    fn pump_rejects_deletions() {
        let s = ab_system(vec![ConditionedRule::del("d", w("a"), w("b"), w("[]"))]);
        let t = Trace::new("t", w("a b")).step("d", 1);
        assert!(matches!(
            pump_insertion(&s, &t, 0, 1, StartPolicy::Axiom),
            Err(PumpError::NotInsertion { .. })
        ));
    }

    #[test]
    fn single_nprime_pruning() {
        let s = InsDelSystem::new(
            "t",
            syms("a X"),
            syms("a"),
            [w("X")],
            vec![
                ConditionedRule::ins("dup", w("[]"), w("X"), w("[]")),
                ConditionedRule::del("end", w("[]"), w("X"), w("[]")),
            ],
        )
        .unwrap()
        .with_nprime(syms("X"))
        .unwrap();
        let opts = SearchOptions {
            workers: 1,
            assume_single_nprime: true,
        };
        let forms = reachable_forms(&s, &bounds(3), &opts).unwrap();
        assert_eq!(forms, BTreeSet::from([w("X"), w("[]")]));
    }

    #[test]
    fn budget_marks_not_exhausted() {
        let s = ab_system(vec![ConditionedRule::ins("r", w("[]"), w("a"), w("[]"))]);
        let b = SearchBounds {
            max_states: 3,
            ..bounds(6)
        };
        let r = enumerate_language(&s, &b, &SearchOptions::sequential()).unwrap();
        assert!(!r.exhausted);
        assert!(r.stats.budget_hit);
        assert_eq!(r.stats.states, 3);
    }
}
