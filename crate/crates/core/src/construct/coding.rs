//! The hat/bar pair coding `a ↦ âā` between terminators, and the forbidding
//! words that keep a string in that shape.

use std::collections::BTreeSet;

use super::naming::{bar, hat, GeneratedSymbol};
use crate::error::{Error, Result};
use crate::symbol::{SymString, Symbol};

pub fn begin_marker() -> Symbol {
    GeneratedSymbol::Begin.render()
}

pub fn end_marker() -> Symbol {
    GeneratedSymbol::End.render()
}

/// The words whose absence forces `B(x̂ȳ)⁺E`-like structure:
///
/// * `x̂ŷ` and `x̄ȳ` for all `x, y ∈ V`,
/// * `Bx̄` and `x̂E` for all `x ∈ V`,
/// * `uB` and `Eu` for every hatted or barred `u`.
///
/// There are `2|V|² + 2|V| + 4|V|` of them.
pub fn normalization_condition<'a>(v: impl IntoIterator<Item = &'a Symbol>) -> BTreeSet<SymString> {
    let v: Vec<&Symbol> = v.into_iter().collect();
    let (b, e) = (begin_marker(), end_marker());
    let pair = |x: Symbol, y: Symbol| SymString::from(vec![x, y]);
    let mut q = BTreeSet::new();
    for x in &v {
        for y in &v {
            q.insert(pair(hat(x), hat(y)));
            q.insert(pair(bar(x), bar(y)));
        }
        q.insert(pair(b.clone(), bar(x)));
        q.insert(pair(hat(x), e.clone()));
        for u in [hat(x), bar(x)] {
            q.insert(pair(u.clone(), b.clone()));
            q.insert(pair(e.clone(), u));
        }
    }
    q
}

/// `B · c(w) · E` with `c(a) = âā`.
pub fn encode_word(w: &SymString) -> SymString {
    let mut out = vec![begin_marker()];
    for a in w {
        out.push(hat(a));
        out.push(bar(a));
    }
    out.push(end_marker());
    out.into()
}

/// Strips the hat from every symbol.
pub fn decode_word(w: &SymString) -> Result<SymString> {
    w.iter()
        .map(|s| {
            s.name()
                .strip_prefix("hat_")
                .filter(|rest| !rest.is_empty())
                .map(|rest| Symbol::new(rest).expect("suffix of a valid symbol"))
                .ok_or_else(|| Error::Morphism(format!("{s} is not a hatted symbol")))
        })
        .collect()
}

/// Whether `w` is `B (x̂ȳ)⁺ E` with `x, y ∈ V`.
pub fn is_normalized<'a>(w: &SymString, v: impl IntoIterator<Item = &'a Symbol>) -> bool {
    let v: Vec<&Symbol> = v.into_iter().collect();
    let hats: BTreeSet<Symbol> = v.iter().map(|x| hat(x)).collect();
    let bars: BTreeSet<Symbol> = v.iter().map(|x| bar(x)).collect();
    let s = w.symbols();
    let n = s.len();
    if n < 4 || !n.is_multiple_of(2) || s[0] != begin_marker() || s[n - 1] != end_marker() {
        return false;
    }
    s[1..n - 1]
        .chunks(2)
        .all(|p| hats.contains(&p[0]) && bars.contains(&p[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SymString {
        s.parse().unwrap()
    }

    fn sym(s: &str) -> Symbol {
        Symbol::new(s).unwrap()
    }

    #[test]
    fn condition_size() {
        let one = [sym("a")];
        let q = normalization_condition(&one);
        assert_eq!(q.len(), 8);
        assert!(q.contains(&w("Emark hat_a")));
        assert!(q.contains(&w("Bmark bar_a")));
        let three = [sym("S"), sym("a"), sym("b")];
        assert_eq!(normalization_condition(&three).len(), 2 * 9 + 2 * 3 + 4 * 3);
    }

    #[test]
    fn coding_round_trip() {
        assert_eq!(encode_word(&w("[]")), w("Bmark Emark"));
        assert_eq!(encode_word(&w("S")), w("Bmark hat_S bar_S Emark"));
        assert_eq!(decode_word(&w("hat_a hat_b")).unwrap(), w("a b"));
        assert_eq!(decode_word(&w("[]")).unwrap(), w("[]"));
        assert!(decode_word(&w("bar_a")).is_err());
    }

    #[test]
    fn normalized_shape() {
        let v = [sym("a"), sym("b")];
        assert!(is_normalized(&w("Bmark hat_a bar_b Emark"), &v));
        assert!(!is_normalized(&w("Bmark Emark"), &v));
        assert!(!is_normalized(&w("Bmark bar_a hat_a Emark"), &v));
        let q = normalization_condition(&v);
        let free = |x: &SymString| q.iter().all(|f| !x.contains_subword(f.symbols()));
        assert!(free(&w("Bmark hat_a bar_a Emark")));
        assert!(!free(&w("Bmark hat_a hat_b Emark")));
    }
}
