mod support;

use insdel::construct::{bar, begin_marker, compile_rc200, compile_sc22, end_marker, hat, is_normalized, normalization_condition};
use insdel::engine::{enumerate_language, pump_insertion, replay, SearchBounds, SearchOptions, StartPolicy};
use insdel::text::{parse_grammar, parse_system, parse_trace, render_grammar, render_system, render_trace};
use insdel::verify::{gamma_ab, gamma_ab_trace};
use insdel::{SizeVector, SymString, Symbol};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use support::*;

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn le(a: SizeVector, b: SizeVector) -> bool {
    a.le(&b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn system_text_round_trips(seed in any::<u64>()) {
        let sys = random_system(&mut rng(seed), 6);
        let text = render_system(&sys);
        let back = parse_system(&text).unwrap();
        prop_assert_eq!(&back, &sys);
        prop_assert_eq!(render_system(&back), text);
    }

    #[test]
    fn grammar_text_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        for g in [random_rc_grammar(&mut r, 6), random_sgnf_grammar(&mut r, 6)] {
            let text = render_grammar(&g);
            prop_assert_eq!(parse_grammar(&text).unwrap(), g);
        }
    }

    #[test]
    fn compiled_systems_round_trip_with_their_contracts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sc = compile_sc22(&random_rc_grammar(&mut r, 4)).unwrap().system;
        let back = parse_system(&render_system(&sc)).unwrap();
        prop_assert_eq!(back.size(), sc.size());
        prop_assert_eq!(back.degree(), sc.degree());
        prop_assert!(le(sc.size(), SizeVector::new(1, 0, 0, 1, 0, 0)));

        let rc = compile_rc200(&random_sgnf_grammar(&mut r, 4)).unwrap().system;
        let back = parse_system(&render_system(&rc)).unwrap();
        prop_assert_eq!(&back, &rc);
        prop_assert!(le(rc.size(), SizeVector::new(2, 0, 0, 1, 1, 0)));
        let d = rc.degree();
        prop_assert!(d.permit <= 1 && d.forbid <= 1);
    }

    /// Between the terminators, Q_N-freeness is exactly the pair shape.
    #[test]
    fn normalization_inside_terminators(inner in prop::collection::vec(0usize..6, 1..9)) {
        let v = syms(&["S", "a", "b"]);
        let letters: Vec<Symbol> = v.iter().map(hat).chain(v.iter().map(bar)).collect();
        let mut s = vec![begin_marker()];
        s.extend(inner.iter().map(|&i| letters[i].clone()));
        s.push(end_marker());
        let qn = normalization_condition(&v);
        let free = !qn.iter().any(|q| has_subword(&s, q.symbols()));
        prop_assert_eq!(free, is_normalized(&SymString::from(s), &v));
    }

    #[test]
    fn pumping_adds_k_copies(k in 0usize..6) {
        let sys = gamma_ab();
        let t = gamma_ab_trace();
        let base = replay(&sys, &t, StartPolicy::Axiom).unwrap();
        let pumped = pump_insertion(&sys, &t, 1, k, StartPolicy::Axiom).unwrap();
        let last = replay(&sys, &pumped, StartPolicy::Axiom).unwrap();
        prop_assert_eq!(last.count(&sym("b")), base.count(&sym("b")) + k);
        prop_assert_eq!(last.len(), base.len() + k);
    }

    #[test]
    fn enumeration_is_independent_of_workers(seed in any::<u64>(), workers in 2usize..6) {
        let sys = random_system(&mut rng(seed), 4);
        let b = SearchBounds { max_terminal_len: 4, max_form_len: 6, max_steps: 10, max_states: 100_000 };
        let one = enumerate_language(&sys, &b, &SearchOptions::sequential()).unwrap();
        let many = enumerate_language(&sys, &b, &SearchOptions::with_workers(workers)).unwrap();
        prop_assert_eq!(one, many);
    }

    #[test]
    fn trace_text_round_trips(seed in any::<u64>(), steps in prop::collection::vec(("[a-z][a-z0-9.']{0,6}", 0usize..50), 0..8)) {
        let start = random_word(&mut rng(seed), &syms(&["a", "hat_B", "$1", "X'"]), 0, 5);
        let t = steps.iter().fold(insdel::engine::Trace::new("sys", start), |t, (r, p)| t.step(r.clone(), *p));
        prop_assert_eq!(parse_trace(&render_trace(&t)).unwrap(), t);
    }
}

#[test]
fn final_erase_alone_stays_below_the_bound() {
    use insdel::grammar::{Grammar, GrammarRule};
    let g = Grammar::sgnf("g", sgnf_parts(), syms(&["a"]), sym("S"), vec![GrammarRule::new("s", w("S'"), w("[]"))]).unwrap();
    let sys = compile_rc200(&g).unwrap().system;
    assert_eq!(sys.size(), SizeVector::new(0, 0, 0, 1, 0, 0));
}
