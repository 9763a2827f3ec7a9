use std::collections::BTreeSet;
use std::fmt;

use crate::construct::{compile_rc200, compile_sc22, encode_word};
use crate::engine::{replay_forms, StartPolicy, Trace};
use crate::error::Result;
use crate::grammar::{Grammar, GrammarKind, GrammarRule, SgnfParts};
use crate::symbol::{SymString, Symbol};
use crate::system::InsDelSystem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    /// Replays completely and ends in this form.
    Reaches(SymString),
    /// Replay stops at this step index.
    FailsAt(usize),
}

#[derive(Debug, Clone)]
pub struct GoldenCase {
    pub name: String,
    pub system: InsDelSystem,
    pub trace: Trace,
    pub policy: StartPolicy,
    pub expect: Expectation,
    /// When set, no form along the replay may contain one of these words.
    pub normalization: Option<BTreeSet<SymString>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenOutcome {
    pub name: String,
    pub passed: bool,
    /// Index of the first step that failed to replay or produced a form
    /// containing a normalization word.
    pub first_failure: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GoldenReport {
    pub outcomes: Vec<GoldenOutcome>,
}

impl GoldenReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

impl fmt::Display for GoldenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            let status = if o.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {}: {}", o.name, o.detail)?;
        }
        Ok(())
    }
}

fn run_case(case: &GoldenCase) -> GoldenOutcome {
    let outcome = |passed, first_failure, detail: String| GoldenOutcome {
        name: case.name.clone(),
        passed,
        first_failure,
        detail,
    };
    let forms = match replay_forms(&case.system, &case.trace, case.policy) {
        Ok(forms) => forms,
        Err(e) => {
            let at = e.step_index();
            let passed = matches!(case.expect, Expectation::FailsAt(i) if Some(i) == at);
            return outcome(passed, at, e.to_string());
        }
    };
    let bad = case.normalization.as_ref().and_then(|qn| {
        forms
            .iter()
            .position(|f| qn.iter().any(|q| f.contains_subword(q.symbols())))
    });
    if let Some(k) = bad {
        // Form k is produced by step k - 1; the start form counts as step 0.
        let at = k.saturating_sub(1);
        let passed = case.expect == Expectation::FailsAt(at);
        return outcome(passed, Some(at), format!("form {} breaks the normalization condition", forms[k]));
    }
    let last = forms.last().expect("non-empty");
    match &case.expect {
        Expectation::Reaches(want) if want == last => outcome(true, None, format!("reached {last}")),
        Expectation::Reaches(want) => outcome(false, None, format!("reached {last}, expected {want}")),
        Expectation::FailsAt(i) => outcome(false, None, format!("replayed to {last}, expected failure at step {i}")),
    }
}

/// Replays every case and records pass or fail.
pub fn check_golden_traces(cases: &[GoldenCase]) -> GoldenReport {
    GoldenReport {
        outcomes: cases.iter().map(run_case).collect(),
    }
}

fn w(s: &str) -> SymString {
    s.parse().expect("literal word")
}

fn sym(s: &str) -> Symbol {
    Symbol::new(s).expect("literal symbol")
}

fn steps(name: &str, start: SymString, steps: &[(&str, usize)]) -> Trace {
    steps
        .iter()
        .fold(Trace::new(name, start), |t, (r, p)| t.step(*r, *p))
}

/// `{p: S → λ}` over `{S, a}`.
pub fn erasing_grammar() -> Grammar {
    Grammar::new(
        "erase",
        GrammarKind::Rc,
        [sym("S")],
        [sym("a")],
        sym("S"),
        vec![GrammarRule::new("p", w("S"), w("[]"))],
    )
    .expect("valid grammar")
}

/// `{r1: S → aS, r2: S → λ}`, generating `a*`.
pub fn star_grammar() -> Grammar {
    Grammar::new(
        "star",
        GrammarKind::Rc,
        [sym("S")],
        [sym("a")],
        sym("S"),
        vec![
            GrammarRule::new("r1", w("S"), w("a S")),
            GrammarRule::new("r2", w("S"), w("[]")),
        ],
    )
    .expect("valid grammar")
}

/// `{S → AX, X → Za, Z → S′B, S′ → λ, AB → λ}`, generating `{a}`.
pub fn single_a_grammar() -> Grammar {
    let parts = SgnfParts {
        nprime: [sym("S"), sym("X"), sym("Z"), sym("S'")].into_iter().collect(),
        ndouble: [sym("A"), sym("B"), sym("C"), sym("D")],
        sprime: sym("S'"),
    };
    Grammar::sgnf(
        "g1",
        parts,
        [sym("a")],
        sym("S"),
        vec![
            GrammarRule::new("1", w("S"), w("A X")),
            GrammarRule::new("2", w("X"), w("Z a")),
            GrammarRule::new("3", w("Z"), w("S' B")),
            GrammarRule::new("4", w("S'"), w("[]")),
            GrammarRule::new("5", w("A B"), w("[]")),
        ],
    )
    .expect("valid grammar")
}

/// One rule of each simulated shape: `p: X → aY`, `q: X → Yc`, `r: AB → λ`,
/// `s: S′ → λ`.
pub fn template_grammar() -> Grammar {
    let parts = SgnfParts {
        nprime: [sym("S"), sym("S'"), sym("X"), sym("Y")].into_iter().collect(),
        ndouble: [sym("A"), sym("B"), sym("C"), sym("D")],
        sprime: sym("S'"),
    };
    Grammar::sgnf(
        "templates",
        parts,
        [sym("a"), sym("c")],
        sym("S"),
        vec![
            GrammarRule::new("p", w("X"), w("a Y")),
            GrammarRule::new("q", w("X"), w("Y c")),
            GrammarRule::new("r", w("A B"), w("[]")),
            GrammarRule::new("s", w("S'"), w("[]")),
        ],
    )
    .expect("valid grammar")
}

const SC_P: &[(&str, usize)] = &[("p.1", 1), ("p.2", 2), ("p.3", 2), ("p.4", 1)];

const SC_Q: &[(&str, usize)] = &[
    ("r1.1", 1),
    ("r1.2", 4),
    ("r1.3", 2),
    ("r1.4", 1),
    ("r1.5", 2),
    ("r1.6", 2),
    ("r1.7", 1),
    ("r1.8", 3),
    ("r1.9", 3),
    ("r1.10", 2),
    ("r1.11", 3),
    ("r1.12", 5),
    ("r1.13", 6),
    ("r1.14", 4),
    ("r1.15", 1),
    ("r1.16", 5),
];

const RC_R: &[(&str, usize)] = &[
    ("r.1", 1),
    ("r.2", 1),
    ("r.3", 1),
    ("r.4", 2),
    ("r.5", 2),
    ("r.6", 1),
    ("r.7", 2),
    ("r.8", 2),
    ("r.11", 3),
    ("r.12", 3),
    ("r.13", 1),
    ("r.14", 2),
    ("r.15", 2),
    ("r.16", 2),
    ("r.17", 1),
];

/// The derivations displayed in the constructions' correctness arguments,
/// each with a variant that moves one step and must fail there.
pub fn construction_golden_suite() -> Result<Vec<GoldenCase>> {
    let erase = compile_sc22(&erasing_grammar())?;
    let star = compile_sc22(&star_grammar())?;
    let templates = compile_rc200(&template_grammar())?.system;
    let axiom = encode_word(&w("S"));

    let case = |name: &str, system: &InsDelSystem, trace: Trace, policy, expect, qn: Option<&BTreeSet<SymString>>| GoldenCase {
        name: name.to_string(),
        system: system.clone(),
        trace,
        policy,
        expect,
        normalization: qn.cloned(),
    };

    let mut p_bad = SC_P.to_vec();
    p_bad[2] = ("p.4", 1);
    p_bad[3] = ("p.3", 1);
    let mut q_bad = SC_Q.to_vec();
    q_bad[13] = ("r1.15", 1);
    q_bad[14] = ("r1.14", 4);
    let mut r_bad = RC_R.to_vec();
    r_bad[6] = ("r.8", 2);
    r_bad[7] = ("r.7", 2);
    let mut r_full = RC_R.to_vec();
    r_full.push(("r.18", 0));

    let qe = Some(&erase.artifacts.normalization);
    let qs = Some(&star.artifacts.normalization);
    let any = StartPolicy::AnyForm;
    Ok(vec![
        case(
            "sc22 erasing rule",
            &erase.system,
            steps("erase", axiom.clone(), SC_P),
            StartPolicy::Axiom,
            Expectation::Reaches(w("Bmark Emark")),
            qe,
        ),
        case(
            "sc22 erasing rule, p.4 before p.3",
            &erase.system,
            steps("erase", axiom.clone(), &p_bad),
            StartPolicy::Axiom,
            Expectation::FailsAt(3),
            None,
        ),
        case(
            "sc22 binary rule",
            &star.system,
            steps("star", axiom.clone(), SC_Q),
            StartPolicy::Axiom,
            Expectation::Reaches(w("Bmark hat_a bar_a hat_S bar_S Emark")),
            qs,
        ),
        case(
            "sc22 binary rule, q.15 before q.14",
            &star.system,
            steps("star", axiom, &q_bad),
            StartPolicy::Axiom,
            Expectation::FailsAt(13),
            None,
        ),
        case(
            "rc200 left-linear rule",
            &templates,
            steps("templates", w("X"), &[("p.1", 0), ("p.2", 2)]),
            any,
            Expectation::Reaches(w("a Y")),
            None,
        ),
        case(
            "rc200 left-linear rule, p.2 first",
            &templates,
            steps("templates", w("X"), &[("p.2", 0), ("p.1", 0)]),
            any,
            Expectation::FailsAt(0),
            None,
        ),
        case(
            "rc200 right-linear rule",
            &templates,
            steps(
                "templates",
                w("X"),
                &[("q.1", 0), ("q.2", 2), ("q.3", 1), ("q.4", 3), ("q.5", 0)],
            ),
            any,
            Expectation::Reaches(w("Y c")),
            None,
        ),
        case(
            "rc200 right-linear rule, q.3 before q.2",
            &templates,
            steps(
                "templates",
                w("X"),
                &[("q.1", 0), ("q.3", 1), ("q.2", 4), ("q.4", 3), ("q.5", 0)],
            ),
            any,
            Expectation::FailsAt(1),
            None,
        ),
        case(
            "rc200 erasing rule",
            &templates,
            steps("templates", w("hat_A bar_A hat_B bar_B"), RC_R),
            any,
            Expectation::Reaches(w("hat_A")),
            None,
        ),
        case(
            "rc200 erasing rule with final cleanup",
            &templates,
            steps("templates", w("hat_A bar_A hat_B bar_B"), &r_full),
            any,
            Expectation::Reaches(w("[]")),
            None,
        ),
        case(
            "rc200 erasing rule, r.8 before r.7",
            &templates,
            steps("templates", w("hat_A bar_A hat_B bar_B"), &r_bad),
            any,
            Expectation::FailsAt(6),
            None,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let report = check_golden_traces(&construction_golden_suite().unwrap());
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.outcomes.len(), 11);
    }

    #[test]
    fn wrong_expectation_fails() {
        let mut cases = construction_golden_suite().unwrap();
        cases.truncate(2);
        cases[0].expect = Expectation::Reaches(w("Bmark"));
        cases[1].expect = Expectation::FailsAt(2);
        let report = check_golden_traces(&cases);
        assert!(report.outcomes.iter().all(|o| !o.passed));
        assert_eq!(report.outcomes[1].first_failure, Some(3));
    }
}
