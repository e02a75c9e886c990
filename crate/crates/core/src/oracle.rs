//! Brute-force reference procedures.
//!
//! Membership and enumeration work straight from the definition of the
//! hairpin completion and never look at the bridge automaton, so comparing
//! them against it is a genuine cross-check.

use std::collections::HashMap;
use std::sync::Arc;

use crate::alphabet::{Letter, Word};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::nfa::{HairpinNfa, Instance};
use crate::regularity::{y_word, FactorWitness, Orientation};
use crate::search::ShortlexTree;

/// Largest candidate count `|Σ|^max_len` enumerated without forcing.
pub const CANDIDATE_LIMIT: u128 = 1 << 24;

/// The canonical (shortest stem extension) split of a member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectSplit {
    /// `|γ|`.
    pub g: usize,
    /// `γ α β bar(α) ∈ L1`.
    pub in_l1: bool,
    /// `α β bar(α) bar(γ) ∈ L2`.
    pub in_l2: bool,
}

/// Membership in `H_k(L1, L2)` with `dfa1` accepting `L1` and `dfa2`
/// accepting `bar(L2)`. Splits are tried for `|γ| = 0, 1, ...` and the first
/// one that works is returned.
pub fn membership_direct(dfa1: &Dfa, dfa2: &Dfa, k: usize, w: &[Letter]) -> Option<DirectSplit> {
    let sigma = dfa1.alphabet();
    let len = w.len();
    if len < 2 * k {
        return None;
    }
    let mut matched = 0;
    for g in 0..=(len - 2 * k) / 2 {
        while matched < g + k {
            if w[len - 1 - matched] != sigma.complement(w[matched]) {
                return None;
            }
            matched += 1;
        }
        let in_l1 = dfa1.accepts(&w[..len - g]);
        // bar(α β bar(α) bar(γ)) has to be accepted by the automaton for bar(L2)
        let in_l2 = dfa2.accepts(&sigma.bar(&w[g..]));
        if in_l1 || in_l2 {
            return Some(DirectSplit { g, in_l1, in_l2 });
        }
    }
    None
}

pub fn is_member(dfa1: &Dfa, dfa2: &Dfa, k: usize, w: &[Letter]) -> bool {
    membership_direct(dfa1, dfa2, k, w).is_some()
}

fn guard(sigma_len: usize, max_len: usize, force: bool) -> Result<()> {
    let candidates = (sigma_len as u128)
        .checked_pow(max_len.try_into().unwrap_or(u32::MAX))
        .unwrap_or(u128::MAX);
    if candidates > CANDIDATE_LIMIT && !force {
        return Err(Error::TooManyCandidates {
            candidates,
            limit: CANDIDATE_LIMIT,
        });
    }
    Ok(())
}

/// Calls `f` on every word of length `<= max_len` in length-lexicographic
/// order.
pub fn for_each_word(sigma_len: usize, max_len: usize, mut f: impl FnMut(&[Letter])) {
    for len in 0..=max_len {
        let mut digits = vec![0usize; len];
        let mut word: Vec<Letter> = vec![Letter(0); len];
        loop {
            f(&word);
            // odometer increment, last position fastest
            let mut i = len;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < sigma_len {
                    word[i] = Letter(digits[i]);
                    break;
                }
                digits[i] = 0;
                word[i] = Letter(0);
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if len == 0 || i == usize::MAX {
                break;
            }
        }
    }
}

/// All members of length `<= max_len`, in length-lexicographic order.
pub fn enumerate_hairpin(
    dfa1: &Dfa,
    dfa2: &Dfa,
    k: usize,
    max_len: usize,
    force: bool,
) -> Result<Vec<Word>> {
    if dfa1.alphabet() != dfa2.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    guard(dfa1.alphabet().len(), max_len, force)?;
    let mut out = Vec::new();
    for_each_word(dfa1.alphabet().len(), max_len, |w| {
        if is_member(dfa1, dfa2, k, w) {
            out.push(Word(w.to_vec()));
        }
    });
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Direct and decomposed membership disagree.
    Mismatch { word: Word, direct: bool, decomposed: bool },
    /// A member with more than one factorization `(ρ, β, τ)`.
    Ambiguous { word: Word, factorizations: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DecompositionReport {
    pub words: usize,
    pub members: usize,
    pub violations: Vec<Violation>,
}

impl DecompositionReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares direct membership with the trimmed bridge automaton on every word
/// of length `<= max_len`.
pub fn check_decomposition(dfa1: &Dfa, dfa2: &Dfa, k: usize, max_len: usize) -> Result<DecompositionReport> {
    let inst = Arc::new(Instance::new(dfa1.clone(), dfa2.clone(), k)?);
    let nfa = HairpinNfa::build(inst)?.trim();
    check_decomposition_against(dfa1, dfa2, k, &nfa, max_len)
}

/// Like [`check_decomposition`] with a prebuilt automaton, which need not
/// come from the same pair of DFAs (used for fault injection).
pub fn check_decomposition_against(
    dfa1: &Dfa,
    dfa2: &Dfa,
    k: usize,
    nfa: &HairpinNfa,
    max_len: usize,
) -> Result<DecompositionReport> {
    guard(dfa1.alphabet().len(), max_len, false)?;
    let mut report = DecompositionReport::default();
    for_each_word(dfa1.alphabet().len(), max_len, |w| {
        report.words += 1;
        let direct = is_member(dfa1, dfa2, k, w);
        let found = nfa.factorizations(w);
        if direct {
            report.members += 1;
        }
        if direct != !found.is_empty() {
            report.violations.push(Violation::Mismatch {
                word: Word(w.to_vec()),
                direct,
                decomposed: !found.is_empty(),
            });
        } else if found.len() > 1 {
            report.violations.push(Violation::Ambiguous {
                word: Word(w.to_vec()),
                factorizations: found.len(),
            });
        }
    });
    Ok(report)
}

/// Largest number of distinct state sequences spelling one word between one
/// pair of states, over all words of length `<= max_len`.
///
/// Explores the word trie from every state at once with path counts, pruning
/// branches that no path follows.
pub fn max_path_multiplicity(nfa: &HairpinNfa, max_len: usize) -> u64 {
    let sigma_len = nfa.instance().dfa1.alphabet().len();
    let start: HashMap<(usize, usize), u64> = (0..nfa.len()).map(|s| ((s, s), 1)).collect();
    let mut best = u64::from(!start.is_empty());
    let mut stack = vec![(start, 0usize)];
    while let Some((counts, depth)) = stack.pop() {
        if depth == max_len {
            continue;
        }
        for a in 0..sigma_len {
            let mut next: HashMap<(usize, usize), u64> = HashMap::new();
            for (&(origin, s), &c) in &counts {
                for &(b, t) in nfa.arcs(s) {
                    if b.index() == a {
                        *next.entry((origin, t)).or_default() += c;
                    }
                }
            }
            if next.is_empty() {
                continue;
            }
            best = best.max(*next.values().max().unwrap());
            stack.push((next, depth + 1));
        }
    }
    best
}

/// The pumped words `W(s, t) = u v^s x y bar(α) bar(v)^t bar(u)` of a firing
/// factorization test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFamily {
    pub u: Word,
    pub v: Word,
    pub x: Word,
    pub y: Word,
    pub alpha: Word,
}

impl WitnessFamily {
    /// Recovers `u` and `y` for a witness of the given trimmed automaton.
    pub fn recover(nfa: &HairpinNfa, w: &FactorWitness) -> Result<Self> {
        let u = access_word(nfa, w.state)
            .ok_or_else(|| Error::Invariant(format!("{} is unreachable", nfa.label(w.state))))?;
        let y = match w.a {
            None => Word::empty(),
            Some(a) => {
                let inst = nfa.instance();
                let c1 = inst.dfa1.run(w.p1, &w.x);
                let c2 = inst.dfa2.run(w.p2, &w.alpha);
                y_word(inst, c1, c2, a, w.d1, w.d2).ok_or_else(|| {
                    Error::Invariant("no word realizes the witness bridge".into())
                })?
            }
        };
        Ok(WitnessFamily {
            u,
            v: w.v.clone(),
            x: w.x.clone(),
            y,
            alpha: w.alpha.clone(),
        })
    }

    pub fn word(&self, nfa_or_dfa: &Dfa, s: usize, t: usize) -> Word {
        let sigma = nfa_or_dfa.alphabet();
        Word::concat(&[
            &self.u,
            &Word::repeat(&self.v, s),
            &self.x,
            &self.y,
            &sigma.bar(&self.alpha),
            &Word::repeat(&sigma.bar(&self.v), t),
            &sigma.bar(&self.u),
        ])
    }
}

/// Shortlex-least label of a path from an initial state to `target`.
fn access_word(nfa: &HairpinNfa, target: usize) -> Option<Word> {
    let sigma = nfa.instance().dfa1.alphabet();
    let tree = ShortlexTree::explore(nfa.len(), nfa.initials(), sigma.letters(), |s, a, out| {
        out.extend(nfa.arcs(s).iter().filter(|&&(c, _)| c == a).map(|&(_, t)| t))
    });
    tree.reached(target).then(|| tree.word(target))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub orientation: Orientation,
    pub family: WitnessFamily,
    /// Pairs `(s, t)` with `t <= s <= s_max` whose word is not a member.
    pub lower_failures: Vec<(usize, usize)>,
    /// `(s, member?)` for `W(s, s + 1)`, `s` in `n..=n + 2`.
    pub upper: Vec<(usize, bool)>,
}

impl FamilyReport {
    pub fn lower_ok(&self) -> bool {
        self.lower_failures.is_empty()
    }

    pub fn upper_excluded(&self) -> bool {
        self.upper.iter().all(|&(_, member)| !member)
    }
}

/// Checks the membership pattern predicted by a factorization witness, on
/// the oriented instance the witness was found in.
pub fn witness_family_check(
    nfa: &HairpinNfa,
    orientation: Orientation,
    witness: &FactorWitness,
    s_max: usize,
) -> Result<FamilyReport> {
    let inst = nfa.instance();
    let family = WitnessFamily::recover(nfa, witness)?;
    let member = |s, t| is_member(&inst.dfa1, &inst.dfa2, inst.k, &family.word(&inst.dfa1, s, t));
    let mut lower_failures = Vec::new();
    for s in 0..=s_max {
        for t in 0..=s {
            if !member(s, t) {
                lower_failures.push((s, t));
            }
        }
    }
    let n = inst.n();
    let upper = (n..=n + 2).map(|s| (s, member(s, s + 1))).collect();
    Ok(FamilyReport {
        orientation,
        family,
        lower_failures,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_dfa;
    use crate::regularity::{decide_detailed, Witness};
    use crate::testing::{empty, fig2, FIG2_L1};

    #[test]
    fn direct_membership_on_the_example() {
        let (d1, d2) = fig2();
        let sigma = d1.alphabet().clone();
        let m = |t: &str| membership_direct(&d1, &d2, 1, &sigma.parse_word(t).unwrap());
        assert_eq!(
            m("a,b,abar"),
            Some(DirectSplit {
                g: 0,
                in_l1: true,
                in_l2: true
            })
        );
        assert_eq!(m("a,bbar,abar,abar"), None);
        assert_eq!(m("a"), None);
        assert_eq!(m("-"), None);
        let split = m("a,b,abar,abar").unwrap();
        assert_eq!((split.g, split.in_l1, split.in_l2), (0, false, true));
        let split = m("a,a,bbar,abar,abar").unwrap();
        assert_eq!((split.g, split.in_l1), (1, true));
    }

    #[test]
    fn word_order_is_length_lexicographic() {
        let mut seen = Vec::new();
        for_each_word(2, 2, |w| seen.push(w.iter().map(|l| l.index()).collect::<Vec<_>>()));
        assert_eq!(
            seen,
            vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn enumeration_up_to_three() {
        let (d1, d2) = fig2();
        let words = enumerate_hairpin(&d1, &d2, 1, 3, false).unwrap();
        let text: Vec<String> = words.iter().map(|w| d1.alphabet().format_word(w)).collect();
        assert_eq!(text, ["a,b,abar", "a,bbar,abar"]);
        let e = empty();
        assert!(enumerate_hairpin(&e, &e, 1, 6, false).unwrap().is_empty());
    }

    #[test]
    fn enumeration_guard() {
        let (d1, d2) = fig2();
        assert!(matches!(
            enumerate_hairpin(&d1, &d2, 1, 13, false),
            Err(Error::TooManyCandidates { .. })
        ));
        assert!(enumerate_hairpin(&d1, &d2, 1, 12, false).is_ok());
    }

    #[test]
    fn decomposition_agrees_on_the_example() {
        let (d1, d2) = fig2();
        let r = check_decomposition(&d1, &d2, 1, 8).unwrap();
        assert!(r.is_clean(), "{:?}", r.violations);
        assert_eq!(r.words, (0..=8).map(|i| 4usize.pow(i)).sum::<usize>());
        assert!(r.members > 0);
        let e = empty();
        let r = check_decomposition(&e, &e, 1, 5).unwrap();
        assert_eq!((r.members, r.violations.len()), (0, 0));
    }

    #[test]
    fn decomposition_detects_a_mutated_arc() {
        let (d1, d2) = fig2();
        let mutated = parse_dfa(&FIG2_L1.replace("arc p1 abar f1", "arc p1 abar t1")).unwrap();
        let nfa = HairpinNfa::build(Arc::new(Instance::new(mutated, d2.clone(), 1).unwrap()))
            .unwrap()
            .trim();
        let r = check_decomposition_against(&d1, &d2, 1, &nfa, 6).unwrap();
        assert!(!r.is_clean());
    }

    #[test]
    fn example_paths_are_unambiguous() {
        let (d1, d2) = fig2();
        let nfa = HairpinNfa::build(Arc::new(Instance::new(d1, d2, 1).unwrap())).unwrap();
        assert_eq!(max_path_multiplicity(&nfa, 8), 1);
    }

    #[test]
    fn example_witness_family() {
        let (d1, d2) = fig2();
        let decision = decide_detailed(&d1, &d2, 1).unwrap();
        let Some(Witness::Factor(w)) = &decision.verdict.witness else {
            panic!("expected a factorization witness");
        };
        let run = decision.run(Orientation::Forward).unwrap();
        let report = witness_family_check(&run.nfa, Orientation::Forward, w, 4).unwrap();
        let sigma = d1.alphabet();
        assert_eq!(report.family.u, Word::empty());
        assert_eq!(sigma.format_word(&report.family.y), "bbar");
        // W(s, t) = a^(s+1) bbar abar^(t+1)
        assert_eq!(
            sigma.format_word(&report.family.word(&d1, 1, 0)),
            "a,a,bbar,abar"
        );
        assert!(report.lower_ok());
        assert_eq!(report.upper.len(), 3);
        assert!(report.upper_excluded());
        let single = witness_family_check(&run.nfa, Orientation::Forward, w, 0).unwrap();
        assert!(single.lower_ok());
    }
}
