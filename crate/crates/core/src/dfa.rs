//! Complete deterministic automata, their product, and the reversal-complement
//! construction that turns a DFA for `L` into one for `bar(L)`.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

/// Name reserved for the state added by [`PartialDfa::complete`].
pub const SINK: &str = "__sink__";

/// A deterministic automaton whose transition map may have holes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialDfa {
    alphabet: Alphabet,
    names: Vec<String>,
    // row-major: arcs[state * |alphabet| + letter]
    arcs: Vec<Option<usize>>,
    initial: usize,
    finals: Vec<bool>,
}

impl PartialDfa {
    pub fn new<S: AsRef<str>>(alphabet: Alphabet, states: &[S], initial: &str) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidAutomaton("no states declared".into()));
        }
        let names: Vec<String> = states.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidAutomaton(format!("state {n} declared twice")));
            }
        }
        let initial = names
            .iter()
            .position(|n| n == initial)
            .ok_or_else(|| Error::InvalidAutomaton(format!("unknown initial state {initial}")))?;
        let m = alphabet.len();
        Ok(PartialDfa {
            alphabet,
            arcs: vec![None; names.len() * m],
            finals: vec![false; names.len()],
            names,
            initial,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::InvalidAutomaton(format!("unknown state {name}")))
    }

    pub fn set_final(&mut self, name: &str) -> Result<()> {
        let s = self.state(name)?;
        self.finals[s] = true;
        Ok(())
    }

    pub fn add_arc(&mut self, src: &str, letter: &str, dst: &str) -> Result<()> {
        let s = self.state(src)?;
        let d = self.state(dst)?;
        let a = self.alphabet.letter(letter)?;
        let slot = &mut self.arcs[s * self.alphabet.len() + a.index()];
        if slot.is_some() {
            return Err(Error::InvalidAutomaton(format!(
                "duplicate arc for state {src} and letter {letter}"
            )));
        }
        *slot = Some(d);
        Ok(())
    }

    pub fn is_total(&self) -> bool {
        self.arcs.iter().all(Option::is_some)
    }

    /// Converts to a [`Dfa`], failing on the first missing transition.
    pub fn into_total(self) -> Result<Dfa> {
        let m = self.alphabet.len();
        if let Some(i) = self.arcs.iter().position(Option::is_none) {
            return Err(Error::InvalidAutomaton(format!(
                "no arc for state {} and letter {}",
                self.names[i / m],
                self.alphabet.token(Letter(i % m))
            )));
        }
        let delta = self.arcs.into_iter().map(Option::unwrap).collect();
        Dfa::new(self.alphabet, self.names, delta, self.initial, self.finals)
    }

    /// Completes the transition map with a fresh non-final `__sink__` state,
    /// appended last. A total automaton is returned unchanged.
    pub fn complete(self) -> Result<Dfa> {
        if self.names.iter().any(|n| n == SINK) {
            return Err(Error::InvalidAutomaton(format!(
                "state name {SINK} is reserved"
            )));
        }
        if self.is_total() {
            return self.into_total();
        }
        let m = self.alphabet.len();
        let sink = self.names.len();
        let mut delta: Vec<usize> = self.arcs.iter().map(|t| t.unwrap_or(sink)).collect();
        delta.extend(std::iter::repeat_n(sink, m));
        let mut names = self.names;
        names.push(SINK.to_string());
        let mut finals = self.finals;
        finals.push(false);
        Dfa::new(self.alphabet, names, delta, self.initial, finals)
    }

    pub(crate) fn parts(&self) -> (&[String], &[Option<usize>], usize, &[bool]) {
        (&self.names, &self.arcs, self.initial, &self.finals)
    }
}

/// A complete deterministic finite automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    names: Vec<String>,
    delta: Vec<usize>,
    initial: usize,
    finals: Vec<bool>,
}

impl Dfa {
    /// `delta` is row-major: `delta[state * |alphabet| + letter]`.
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        delta: Vec<usize>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        if delta.len() != n * alphabet.len() || finals.len() != n {
            return Err(Error::InvalidAutomaton("transition table has the wrong shape".into()));
        }
        if initial >= n || delta.iter().any(|&t| t >= n) {
            return Err(Error::InvalidAutomaton("state index out of range".into()));
        }
        Ok(Dfa {
            alphabet,
            names,
            delta,
            initial,
            finals,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    #[inline]
    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.states().filter(|&s| self.finals[s])
    }

    #[inline]
    pub fn step(&self, s: usize, a: Letter) -> usize {
        self.delta[s * self.alphabet.len() + a.index()]
    }

    /// `s · w`.
    pub fn run(&self, s: usize, w: &[Letter]) -> usize {
        w.iter().fold(s, |q, &a| self.step(q, a))
    }

    /// States `s0 = start, s1, ..., s|w|` visited while reading `w`.
    pub fn run_trace(&self, start: usize, w: &[Letter]) -> Vec<usize> {
        let mut trace = Vec::with_capacity(w.len() + 1);
        trace.push(start);
        let mut q = start;
        for &a in w {
            q = self.step(q, a);
            trace.push(q);
        }
        trace
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.is_final(self.run(self.initial, w))
    }

    /// `pre[s][a]` lists the states `r` with `r · a = s`, in canonical order.
    pub fn preimages(&self) -> Preimages {
        let m = self.alphabet.len();
        let mut table = vec![Vec::new(); self.num_states() * m];
        for r in self.states() {
            for a in self.alphabet.letters() {
                table[self.step(r, a) * m + a.index()].push(r);
            }
        }
        Preimages { width: m, table }
    }

    /// Partial view with every arc present; used by the text printer.
    pub fn to_partial(&self) -> PartialDfa {
        PartialDfa {
            alphabet: self.alphabet.clone(),
            names: self.names.clone(),
            arcs: self.delta.iter().map(|&t| Some(t)).collect(),
            initial: self.initial,
            finals: self.finals.clone(),
        }
    }
}

/// Inverse transition relation of a [`Dfa`].
#[derive(Debug, Clone)]
pub struct Preimages {
    width: usize,
    table: Vec<Vec<usize>>,
}

impl Preimages {
    /// Number of states of the automaton the table was built from.
    pub fn rows(&self) -> usize {
        self.table.len() / self.width
    }

    #[inline]
    pub fn get(&self, s: usize, a: Letter) -> &[usize] {
        &self.table[s * self.width + a.index()]
    }
}

/// Product of two DFAs restricted to the pairs reachable from the initial pair.
#[derive(Debug, Clone)]
pub struct ProductDfa {
    n2: usize,
    width: usize,
    pairs: Vec<(usize, usize)>,
    index: Vec<Option<usize>>,
    delta: Vec<usize>,
    initial: usize,
}

impl ProductDfa {
    pub fn new(dfa1: &Dfa, dfa2: &Dfa) -> Result<Self> {
        if dfa1.alphabet() != dfa2.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let (n1, n2) = (dfa1.num_states(), dfa2.num_states());
        let mut seen = vec![false; n1 * n2];
        let start = (dfa1.initial(), dfa2.initial());
        seen[start.0 * n2 + start.1] = true;
        let mut queue = VecDeque::from([start]);
        while let Some((p1, p2)) = queue.pop_front() {
            for a in dfa1.alphabet().letters() {
                let t = (dfa1.step(p1, a), dfa2.step(p2, a));
                if !std::mem::replace(&mut seen[t.0 * n2 + t.1], true) {
                    queue.push_back(t);
                }
            }
        }
        // canonical order: lexicographic in (p1, p2)
        let pairs: Vec<(usize, usize)> = (0..n1 * n2)
            .filter(|&i| seen[i])
            .map(|i| (i / n2, i % n2))
            .collect();
        let mut index = vec![None; n1 * n2];
        for (i, &(p1, p2)) in pairs.iter().enumerate() {
            index[p1 * n2 + p2] = Some(i);
        }
        let width = dfa1.alphabet().len();
        let mut delta = Vec::with_capacity(pairs.len() * width);
        for &(p1, p2) in &pairs {
            for a in dfa1.alphabet().letters() {
                let t = (dfa1.step(p1, a), dfa2.step(p2, a));
                delta.push(index[t.0 * n2 + t.1].expect("product is closed"));
            }
        }
        let initial = index[start.0 * n2 + start.1].unwrap();
        Ok(ProductDfa {
            n2,
            width,
            pairs,
            index,
            delta,
            initial,
        })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair(&self, i: usize) -> (usize, usize) {
        self.pairs[i]
    }

    pub fn index_of(&self, p1: usize, p2: usize) -> Option<usize> {
        self.index.get(p1 * self.n2 + p2).copied().flatten()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    #[inline]
    pub fn step(&self, i: usize, a: Letter) -> usize {
        self.delta[i * self.width + a.index()]
    }
}

/// Builds a complete DFA accepting `{ bar(w) : w ∈ L(dfa) }`.
///
/// Arcs are read backwards with complemented labels and the result is
/// determinized by the subset construction. Subset states are named
/// `{s,t,...}` and numbered in breadth-first discovery order.
pub fn reverse_bar_dfa(dfa: &Dfa) -> Dfa {
    let sigma = dfa.alphabet();
    let m = sigma.len();
    let pre = dfa.preimages();
    let n = dfa.num_states();

    let start: Vec<bool> = (0..n).map(|s| dfa.is_final(s)).collect();
    let mut ids: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut subsets = vec![start.clone()];
    ids.insert(start, 0);
    let mut delta = Vec::new();
    let mut next = 0;
    while next < subsets.len() {
        let current = subsets[next].clone();
        next += 1;
        for a in sigma.letters() {
            // reversed arc q -ā-> p for every original arc p -a-> q,
            // so reading a moves to the a-bar preimages
            let abar = sigma.complement(a);
            let mut target = vec![false; n];
            for q in (0..n).filter(|&q| current[q]) {
                for &p in pre.get(q, abar) {
                    target[p] = true;
                }
            }
            let id = *ids.entry(target.clone()).or_insert_with(|| {
                subsets.push(target);
                subsets.len() - 1
            });
            delta.push(id);
        }
    }
    debug_assert_eq!(delta.len(), subsets.len() * m);
    let names = subsets
        .iter()
        .map(|set| {
            let members: Vec<&str> = (0..n).filter(|&s| set[s]).map(|s| dfa.name(s)).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let finals = subsets.iter().map(|set| set[dfa.initial()]).collect();
    Dfa::new(sigma.clone(), names, delta, 0, finals).expect("subset construction is complete")
}
