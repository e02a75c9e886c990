//! Generators for the sample instance families.

use crate::alphabet::Alphabet;
use crate::dfa::{Dfa, PartialDfa};
use crate::error::{Error, Result};

/// DFA for `a* · (L ∩ {b, bbar}*) · abar^k` from a DFA for `L`.
///
/// `l` must be over the four-letter alphabet `a abar b bbar`. The states are
/// `s` (reading the `a` block), `l_<q>` for every state `q` of `l`, the
/// counters `c1..ck` and a trap state `dead`.
pub fn hardness_l1(l: &Dfa, k: usize) -> Result<Dfa> {
    if k == 0 {
        return Err(Error::UnsupportedStemLength(0));
    }
    let sigma = l.alphabet();
    let [a, abar, b, bbar] = ["a", "abar", "b", "bbar"].map(|t| sigma.letter(t));
    let (a, abar, b, bbar) = (a?, abar?, b?, bbar?);
    if sigma.len() != 4 || sigma.complement(a) != abar || sigma.complement(b) != bbar {
        return Err(Error::InvalidAlphabet(
            "the hardness family needs the alphabet a abar b bbar".into(),
        ));
    }

    let lname = |q: usize| format!("l_{}", l.name(q));
    let counter = |i: usize| format!("c{i}");
    let mut names = vec!["s".to_string()];
    names.extend(l.states().map(lname));
    names.extend((1..=k).map(counter));
    names.push("dead".into());

    let mut p = PartialDfa::new(sigma.clone(), &names, "s")?;
    p.set_final(&counter(k))?;
    let exit = |q: usize| {
        if l.is_final(q) {
            counter(1)
        } else {
            "dead".to_string()
        }
    };
    let tok = |x| sigma.token(x);

    let l0 = l.initial();
    p.add_arc("s", tok(a), "s")?;
    p.add_arc("s", tok(b), &lname(l.step(l0, b)))?;
    p.add_arc("s", tok(bbar), &lname(l.step(l0, bbar)))?;
    p.add_arc("s", tok(abar), &exit(l0))?;
    for q in l.states() {
        p.add_arc(&lname(q), tok(a), "dead")?;
        p.add_arc(&lname(q), tok(b), &lname(l.step(q, b)))?;
        p.add_arc(&lname(q), tok(bbar), &lname(l.step(q, bbar)))?;
        p.add_arc(&lname(q), tok(abar), &exit(q))?;
    }
    for i in 1..=k {
        let next = if i < k { counter(i + 1) } else { "dead".into() };
        for x in sigma.letters() {
            let dst = if x == abar { next.as_str() } else { "dead" };
            p.add_arc(&counter(i), tok(x), dst)?;
        }
    }
    for x in sigma.letters() {
        p.add_arc("dead", tok(x), "dead")?;
    }
    p.into_total()
}

/// One-state DFA for the empty language over `sigma`.
pub fn empty_language(sigma: &Alphabet) -> Dfa {
    let delta = vec![0; sigma.len()];
    Dfa::new(sigma.clone(), vec!["z".into()], delta, 0, vec![false]).expect("valid")
}

/// DFA accepting exactly the word `w` (plus a trap state).
pub fn singleton(sigma: &Alphabet, w: &[crate::alphabet::Letter]) -> Dfa {
    let n = w.len() + 2;
    let trap = n - 1;
    let mut delta = vec![trap; n * sigma.len()];
    for (i, &x) in w.iter().enumerate() {
        delta[i * sigma.len() + x.index()] = i + 1;
    }
    let names = (0..=w.len())
        .map(|i| format!("w{i}"))
        .chain(std::iter::once("trap".to_string()))
        .collect();
    let mut finals = vec![false; n];
    finals[w.len()] = true;
    Dfa::new(sigma.clone(), names, delta, 0, finals).expect("valid")
}
