use crate::engine::Trace;
use crate::rule::ConditionedRule;
use crate::symbol::{SymString, Symbol};
use crate::system::InsDelSystem;

fn w(s: &str) -> SymString {
    s.parse().expect("literal word")
}

/// `({a,b}, {a,b}, {ab}, {i1: (b, a, λ), i2: (a, b, λ)})`, an insertion
/// system of size (1,1,0;0,0,0) whose insertions look only one symbol to
/// the left. It derives every word of `(ab)⁺`, but also words outside it.
pub fn gamma_ab() -> InsDelSystem {
    let ab = [Symbol::new("a").expect("valid"), Symbol::new("b").expect("valid")];
    InsDelSystem::new(
        "gamma_ab",
        ab.clone(),
        ab,
        [w("a b")],
        vec![
            ConditionedRule::ins("i1", w("b"), w("a"), w("[]")),
            ConditionedRule::ins("i2", w("a"), w("b"), w("[]")),
        ],
    )
    .expect("valid system")
}

/// `ab ⇒i1 aba ⇒i2 abab`.
pub fn gamma_ab_trace() -> Trace {
    Trace::new("gamma_ab", w("a b")).step("i1", 2).step("i2", 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{pump_insertion, replay, StartPolicy};

    #[test]
    fn trace_reaches_abab() {
        assert_eq!(replay(&gamma_ab(), &gamma_ab_trace(), StartPolicy::Axiom).unwrap(), w("a b a b"));
    }

    #[test]
    fn pumping_the_second_insertion() {
        let sys = gamma_ab();
        let p = pump_insertion(&sys, &gamma_ab_trace(), 1, 2, StartPolicy::Axiom).unwrap();
        assert_eq!(replay(&sys, &p, StartPolicy::Axiom).unwrap(), w("a b a b b b"));
    }
}
