use super::Grammar;
use crate::engine::{explore, Action, Compiled, EnumerationResult, RuleSpec, SearchBounds, SearchOptions};
use crate::error::Result;
use crate::symbol::SymString;

/// Bounded breadth-first derivation from the start symbol.
///
/// A rule applies to any occurrence of its left-hand side when all of its
/// permitting words and none of its forbidding words occur in the current
/// sentential form. The result is read exactly like
/// [`enumerate_language`](crate::engine::enumerate_language).
pub fn derive_grammar(g: &Grammar, bounds: &SearchBounds, opts: &SearchOptions) -> Result<EnumerationResult> {
    bounds.validate()?;
    let empty = SymString::empty();
    let c = Compiled::new(
        g.symbols(),
        g.terminals(),
        g.rules().iter().map(|r| RuleSpec {
            action: Action::Replace,
            left: &empty,
            body: &r.lhs,
            right: &r.rhs,
            permit: &r.permit,
            forbid: &r.forbid,
        }),
    )?;
    let start = c.encode(&SymString::from(vec![g.start().clone()]))?;
    let ex = explore(&c, &[start.into_boxed_slice()], bounds, opts, None);
    let terminals = ex
        .states
        .iter()
        .filter(|f| f.len() <= bounds.max_terminal_len && c.is_terminal_form(f))
        .map(|f| c.decode(f))
        .collect();
    Ok(EnumerationResult {
        terminals,
        exhausted: !ex.stats.budget_hit,
        stats: ex.stats,
    })
}
