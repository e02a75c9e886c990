//! The layered bridge automaton.
//!
//! States are bridges `((p1, p2), q1, q2, level)` with `(p1, p2)` reachable in
//! the product automaton. Reading a letter `a` moves the pair forwards and the
//! two single components backwards along `bar(a)`. Level 0 is left on the
//! first letter read from a state whose single components contain a final
//! state; from then on every letter increments the level until it reaches `k`.
//!
//! A path labelled `ρ` from an initial bridge to a final bridge
//! `((d1, d2), e1, e2, k)`, followed by any `β ∈ B(d1, d2, e1, e2)`, spells the
//! hairpin `ρ β bar(ρ)`, and every hairpin arises this way exactly once.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::alphabet::{Letter, Word};
use crate::bridge::{bridge_membership, BridgeTable, Quad};
use crate::dfa::{Dfa, Preimages, ProductDfa};
use crate::error::{Error, Result};

/// The two automata of a decision instance together with everything derived
/// from them that does not depend on the orientation of later sweeps.
#[derive(Debug)]
pub struct Instance {
    pub dfa1: Dfa,
    pub dfa2: Dfa,
    pub k: usize,
    pub pre1: Preimages,
    pub pre2: Preimages,
    pub product: ProductDfa,
    pub bridges: BridgeTable,
}

impl Instance {
    /// `dfa1` accepts `L1`, `dfa2` accepts `bar(L2)`.
    pub fn new(dfa1: Dfa, dfa2: Dfa, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::UnsupportedStemLength(k));
        }
        if dfa1.alphabet() != dfa2.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let bridges = BridgeTable::compute(&dfa1, &dfa2)?;
        Ok(Instance {
            pre1: dfa1.preimages(),
            pre2: dfa2.preimages(),
            product: ProductDfa::new(&dfa1, &dfa2)?,
            bridges,
            dfa1,
            dfa2,
            k,
        })
    }

    /// `|Q1| + |Q2|`.
    pub fn n(&self) -> usize {
        self.dfa1.num_states() + self.dfa2.num_states()
    }

    /// The instance with the roles of the two automata exchanged. It decides
    /// the hairpin completion `H_k(bar(L2), bar(L1))`, the bar image of ours.
    pub fn mirrored(&self) -> Result<Self> {
        Instance::new(self.dfa2.clone(), self.dfa1.clone(), self.k)
    }
}

/// A state of the bridge automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BridgeState {
    /// Index into the product automaton.
    pub pair: usize,
    pub q1: usize,
    pub q2: usize,
    pub level: usize,
}

#[derive(Debug, Clone)]
pub struct HairpinNfa {
    inst: Arc<Instance>,
    states: Vec<BridgeState>,
    // out[i] is sorted by (letter, target)
    out: Vec<Vec<(Letter, usize)>>,
    inc: Vec<Vec<(Letter, usize)>>,
    is_initial: Vec<bool>,
    is_final: Vec<bool>,
    trimmed: bool,
}

/// A decomposition `w = ρ β bar(ρ)` through the pair `(initial, final)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub rho: Word,
    pub beta: Word,
    pub initial: usize,
    pub final_state: usize,
}

/// Two distinct paths with the same label, diverging after `diverge` and
/// meeting again at `converge`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambiguity {
    pub diverge: usize,
    pub converge: usize,
    pub len: usize,
}

struct DenseIndex {
    n1: usize,
    n2: usize,
    levels: usize,
    slots: Vec<u32>,
}

impl DenseIndex {
    const NONE: u32 = u32::MAX;

    fn offset(&self, s: BridgeState) -> usize {
        ((s.pair * self.n1 + s.q1) * self.n2 + s.q2) * self.levels + s.level
    }

    fn get(&self, s: BridgeState) -> Option<usize> {
        let v = self.slots[self.offset(s)];
        (v != Self::NONE).then_some(v as usize)
    }
}

impl HairpinNfa {
    /// Builds the untrimmed automaton.
    pub fn build(inst: Arc<Instance>) -> Result<Self> {
        let k = inst.k;
        let (n1, n2) = (inst.dfa1.num_states(), inst.dfa2.num_states());
        let product = &inst.product;
        let table = &inst.bridges;
        let mut index = DenseIndex {
            n1,
            n2,
            levels: k + 1,
            slots: vec![DenseIndex::NONE; product.len() * n1 * n2 * (k + 1)],
        };

        let mut states = Vec::new();
        for pair in 0..product.len() {
            let (p1, p2) = product.pair(pair);
            for q1 in 0..n1 {
                for q2 in 0..n2 {
                    if !table.is_bridge(Quad::new(p1, p2, q1, q2)) {
                        continue;
                    }
                    for level in 0..=k {
                        let s = BridgeState { pair, q1, q2, level };
                        let at = index.offset(s);
                        index.slots[at] = states.len() as u32;
                        states.push(s);
                    }
                }
            }
        }
        check_source_closure(&inst)?;

        let sigma = inst.dfa1.alphabet();
        let mut out = vec![Vec::new(); states.len()];
        for (i, s) in states.iter().enumerate() {
            if s.level == k {
                continue;
            }
            let crosses = inst.dfa1.is_final(s.q1) || inst.dfa2.is_final(s.q2);
            let level = match s.level {
                0 if !crosses => 0,
                l => l + 1,
            };
            for a in sigma.letters() {
                let abar = sigma.complement(a);
                let pair = product.step(s.pair, a);
                for &q1 in inst.pre1.get(s.q1, abar) {
                    for &q2 in inst.pre2.get(s.q2, abar) {
                        if let Some(t) = index.get(BridgeState { pair, q1, q2, level }) {
                            out[i].push((a, t));
                        }
                    }
                }
            }
        }

        let q0 = product.initial();
        let is_initial = states.iter().map(|s| s.pair == q0 && s.level == 0).collect();
        let is_final = states.iter().map(|s| s.level == k).collect();
        let inc = incoming(&out);
        Ok(HairpinNfa {
            inst,
            states,
            out,
            inc,
            is_initial,
            is_final,
            trimmed: false,
        })
    }

    /// Restriction to the states that are reachable from an initial state and
    /// co-reachable to a final state. State order is preserved.
    pub fn trim(&self) -> HairpinNfa {
        let forward = reach(&self.out, self.initials());
        let backward = reach(&self.inc, self.finals());
        let keep: Vec<bool> = forward.iter().zip(&backward).map(|(f, b)| *f && *b).collect();
        let mut remap = vec![usize::MAX; self.states.len()];
        let mut states = Vec::new();
        for (i, s) in self.states.iter().enumerate() {
            if keep[i] {
                remap[i] = states.len();
                states.push(*s);
            }
        }
        let out: Vec<Vec<(Letter, usize)>> = (0..self.states.len())
            .filter(|&i| keep[i])
            .map(|i| {
                self.out[i]
                    .iter()
                    .filter(|(_, t)| keep[*t])
                    .map(|&(a, t)| (a, remap[t]))
                    .collect()
            })
            .collect();
        let pick = |flags: &[bool]| -> Vec<bool> {
            flags.iter().zip(&keep).filter(|(_, k)| **k).map(|(f, _)| *f).collect()
        };
        HairpinNfa {
            inst: Arc::clone(&self.inst),
            is_initial: pick(&self.is_initial),
            is_final: pick(&self.is_final),
            inc: incoming(&out),
            out,
            states,
            trimmed: true,
        }
    }

    pub fn instance(&self) -> &Instance {
        &self.inst
    }

    pub fn shared_instance(&self) -> Arc<Instance> {
        Arc::clone(&self.inst)
    }

    pub fn k(&self) -> usize {
        self.inst.k
    }

    pub fn is_trimmed(&self) -> bool {
        self.trimmed
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[BridgeState] {
        &self.states
    }

    pub fn state(&self, i: usize) -> BridgeState {
        self.states[i]
    }

    pub fn index_of(&self, s: BridgeState) -> Option<usize> {
        self.states.binary_search(&s).ok()
    }

    pub fn arcs(&self, i: usize) -> &[(Letter, usize)] {
        &self.out[i]
    }

    pub fn incoming(&self, i: usize) -> &[(Letter, usize)] {
        &self.inc[i]
    }

    pub fn num_arcs(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn is_initial(&self, i: usize) -> bool {
        self.is_initial[i]
    }

    pub fn is_final(&self, i: usize) -> bool {
        self.is_final[i]
    }

    pub fn initials(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.is_initial[i])
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.is_final[i])
    }

    /// Targets of the `a`-arcs leaving state `i`, in canonical order.
    pub fn successors(&self, i: usize, a: Letter) -> Vec<usize> {
        self.out[i]
            .iter()
            .filter(|(b, _)| *b == a)
            .map(|&(_, t)| t)
            .collect()
    }

    /// `(p1, p2, q1, q2)` of state `i`.
    pub fn quad(&self, i: usize) -> Quad {
        let s = self.states[i];
        let (p1, p2) = self.inst.product.pair(s.pair);
        Quad::new(p1, p2, s.q1, s.q2)
    }

    /// `<p1>,<p2>|<q1>,<q2>|<level>`.
    pub fn label(&self, i: usize) -> String {
        let q = self.quad(i);
        let (d1, d2) = (&self.inst.dfa1, &self.inst.dfa2);
        format!(
            "{},{}|{},{}|{}",
            d1.name(q.p1),
            d2.name(q.p2),
            d1.name(q.q1),
            d2.name(q.q2),
            self.states[i].level
        )
    }

    /// Finds the state with the given component names.
    pub fn find(&self, p1: &str, p2: &str, q1: &str, q2: &str, level: usize) -> Option<usize> {
        let (d1, d2) = (&self.inst.dfa1, &self.inst.dfa2);
        let pair = self.inst.product.index_of(d1.state(p1)?, d2.state(p2)?)?;
        self.index_of(BridgeState {
            pair,
            q1: d1.state(q1)?,
            q2: d2.state(q2)?,
            level,
        })
    }

    /// Graphviz rendering: initial nodes are diamonds, final nodes are
    /// double-circled, arcs are labelled by letter token.
    pub fn to_dot(&self) -> String {
        let sigma = self.inst.dfa1.alphabet();
        let mut dot = String::from("digraph hairpin {\n");
        for i in 0..self.len() {
            let mut attrs = Vec::new();
            if self.is_initial[i] {
                attrs.push("shape=diamond");
            }
            if self.is_final[i] {
                attrs.push("peripheries=2");
            }
            if attrs.is_empty() {
                writeln!(dot, "  \"{}\";", self.label(i)).unwrap();
            } else {
                writeln!(dot, "  \"{}\" [{}];", self.label(i), attrs.join(", ")).unwrap();
            }
        }
        for i in 0..self.len() {
            for &(a, t) in &self.out[i] {
                writeln!(
                    dot,
                    "  \"{}\" -> \"{}\" [label=\"{}\"];",
                    self.label(i),
                    self.label(t),
                    sigma.token(a)
                )
                .unwrap();
            }
        }
        dot.push_str("}\n");
        dot
    }

    /// Every factorization `w = ρ β bar(ρ)` with `|ρ| >= k`, `ρ` labelling a
    /// path from an initial to a final state `F` and `β ∈ B(F)`.
    ///
    /// The automaton is simulated on pairs `(initial, current)` over the
    /// prefixes of `w`; the suffix condition is tracked incrementally.
    pub fn factorizations(&self, w: &[Letter]) -> Vec<Factorization> {
        let sigma = self.inst.dfa1.alphabet();
        let k = self.k();
        let len = w.len();
        let mut found = Vec::new();
        // most words fail the outer suffix condition on the first letter
        if len < 2 * k || (0..k).any(|i| w[len - 1 - i] != sigma.complement(w[i])) {
            return found;
        }
        let mut current: Vec<(usize, usize)> = self.initials().map(|i| (i, i)).collect();
        let mut mirrored = true;
        for r in 1..=len / 2 {
            let a = w[r - 1];
            mirrored &= w[len - r] == sigma.complement(a);
            let mut next = Vec::new();
            for &(init, s) in &current {
                for &(b, t) in &self.out[s] {
                    if b == a {
                        next.push((init, t));
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            current = next;
            if current.is_empty() || !mirrored {
                // the suffix condition fails for every longer prefix as well
                break;
            }
            if r < k {
                continue;
            }
            let beta = &w[r..len - r];
            for &(init, s) in &current {
                if self.is_final[s]
                    && bridge_membership(&self.inst.dfa1, &self.inst.dfa2, self.quad(s), beta)
                {
                    found.push(Factorization {
                        rho: Word(w[..r].to_vec()),
                        beta: Word(beta.to_vec()),
                        initial: init,
                        final_state: s,
                    });
                }
            }
        }
        found
    }

    /// Hairpin membership through the automaton; returns the factorization
    /// when `w` is a member.
    pub fn membership_decomposed(&self, w: &[Letter]) -> Option<Factorization> {
        self.factorizations(w).into_iter().next()
    }

    /// Searches for two distinct equally labelled paths between the same pair
    /// of states, up to length `max_len` (unbounded when `None`).
    ///
    /// Works on the graph of state pairs `{X, Y}` read in lockstep: an
    /// ambiguity is a walk that leaves the diagonal and comes back to it.
    pub fn find_ambiguity(&self, max_len: Option<usize>) -> Option<Ambiguity> {
        let limit = max_len.unwrap_or(usize::MAX);
        if limit < 2 {
            return None;
        }
        let key = |x: usize, y: usize| ((x.min(y) as u64) << 32) | x.max(y) as u64;
        let mut seen: HashSet<u64> = HashSet::new();
        // (x, y, origin, depth)
        let mut queue = VecDeque::new();
        for z in 0..self.len() {
            let arcs = &self.out[z];
            for (i, &(a, x)) in arcs.iter().enumerate() {
                for &(b, y) in &arcs[i + 1..] {
                    if b != a {
                        break;
                    }
                    if x != y && seen.insert(key(x, y)) {
                        queue.push_back((x, y, z, 1usize));
                    }
                }
            }
        }
        while let Some((x, y, origin, depth)) = queue.pop_front() {
            if depth + 1 > limit {
                continue;
            }
            for &(a, x2) in &self.out[x] {
                for &(b, y2) in &self.out[y] {
                    if a != b {
                        continue;
                    }
                    if x2 == y2 {
                        return Some(Ambiguity {
                            diverge: origin,
                            converge: x2,
                            len: depth + 1,
                        });
                    }
                    if seen.insert(key(x2, y2)) {
                        queue.push_back((x2, y2, origin, depth + 1));
                    }
                }
            }
        }
        None
    }
}

fn incoming(out: &[Vec<(Letter, usize)>]) -> Vec<Vec<(Letter, usize)>> {
    let mut inc = vec![Vec::new(); out.len()];
    for (s, arcs) in out.iter().enumerate() {
        for &(a, t) in arcs {
            inc[t].push((a, s));
        }
    }
    inc
}

fn reach(adj: &[Vec<(Letter, usize)>], sources: impl Iterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<usize> = sources.collect();
    for &s in &stack {
        seen[s] = true;
    }
    while let Some(s) = stack.pop() {
        for &(_, t) in &adj[s] {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen
}

/// If `(P·a, q1, q2)` is a bridge then so is `(P, q1·bar(a), q2·bar(a))`,
/// witnessed by `a β bar(a)`. Checked over every source quadruple.
fn check_source_closure(inst: &Instance) -> Result<()> {
    let sigma = inst.dfa1.alphabet();
    let (n1, n2) = (inst.dfa1.num_states(), inst.dfa2.num_states());
    for pair in 0..inst.product.len() {
        let (p1, p2) = inst.product.pair(pair);
        for s1 in 0..n1 {
            for s2 in 0..n2 {
                if inst.bridges.is_bridge(Quad::new(p1, p2, s1, s2)) {
                    continue;
                }
                for a in sigma.letters() {
                    let abar = sigma.complement(a);
                    let (t1, t2) = inst.product.pair(inst.product.step(pair, a));
                    for &q1 in inst.pre1.get(s1, abar) {
                        for &q2 in inst.pre2.get(s2, abar) {
                            if inst.bridges.is_bridge(Quad::new(t1, t2, q1, q2)) {
                                return Err(Error::Invariant(format!(
                                    "({p1},{p2},{q1},{q2}) is a bridge after letter {} but its source is not",
                                    sigma.token(a)
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
