//! The regularity decision.
//!
//! 1. Finiteness: if the trimmed bridge automaton accepts a finite language
//!    the hairpin completion is a finite union of regular pieces.
//! 2. Periodic labels: in a regular completion every non-trivial strongly
//!    connected component is a simple cycle and every path leaving one of its
//!    states keeps following the cycle label.
//! 3. Factorization tests: for every cycle state `A` with label `v`, search a
//!    prefix `x` of `v α` and states `(d1, d2)` that would force a word of the
//!    completion to be completed from the right, while no factorization of
//!    `x y bar(α) bar(v)` admits that.
//!
//! The sweeps run in canonical order on the given orientation and on the
//! mirrored one; the first firing test is reported.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use petgraph::algo::kosaraju_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::alphabet::{shortlex_cmp, Alphabet, Letter, Word};
use crate::bridge::Quad;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::nfa::{HairpinNfa, Instance};
use crate::search::ShortlexTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Regular,
    NotRegular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    Finite,
    TestsPassed,
    Test1,
    Test2,
    Test3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `(DFA for L1, DFA for bar(L2))` as given.
    Forward,
    /// The two automata swapped.
    Mirrored,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Regular => "regular",
            Outcome::NotRegular => "not-regular",
        })
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::Finite => "finite",
            Reason::TestsPassed => "tests-passed",
            Reason::Test1 => "test1",
            Reason::Test2 => "test2",
            Reason::Test3 => "test3",
        })
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Forward => "forward",
            Orientation::Mirrored => "mirrored",
        })
    }
}

/// A path from the cycle state that leaves the cycle label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodWitness {
    /// Index of the cycle state in the trimmed automaton.
    pub state: usize,
    pub state_label: String,
    /// Shortest loop label at the state.
    pub v: Word,
    /// 1-based position inside `v` where the path deviates.
    pub m: usize,
    pub expected: Letter,
    pub found: Letter,
    /// Label of the offending path, ending with the deviating letter.
    pub path: Word,
}

/// Data of a firing factorization test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorWitness {
    pub state: usize,
    pub state_label: String,
    pub p1: usize,
    pub p2: usize,
    pub v: Word,
    pub alpha: Word,
    pub x: Word,
    /// First letter of `y`; absent when `y` is empty.
    pub a: Option<Letter>,
    pub d1: usize,
    pub d2: usize,
    pub d1_name: String,
    pub d2_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Period(PeriodWitness),
    Factor(FactorWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub result: Outcome,
    pub reason: Reason,
    /// Present iff a test fired.
    pub orientation: Option<Orientation>,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn regular(reason: Reason) -> Self {
        Verdict {
            result: Outcome::Regular,
            reason,
            orientation: None,
            witness: None,
        }
    }

    pub fn is_regular(&self) -> bool {
        self.result == Outcome::Regular
    }

    /// `key=value` lines, one fact per line.
    pub fn render(&self, sigma: &Alphabet) -> String {
        let mut out = String::new();
        let w = |x: &[Letter]| sigma.format_word(x);
        writeln!(out, "verdict={}", self.result).unwrap();
        writeln!(out, "reason={}", self.reason).unwrap();
        if let Some(o) = self.orientation {
            writeln!(out, "orientation={o}").unwrap();
        }
        match &self.witness {
            Some(Witness::Period(p)) => {
                writeln!(out, "witness.state={}", p.state_label).unwrap();
                writeln!(out, "witness.v={}", w(&p.v)).unwrap();
                writeln!(out, "witness.m={}", p.m).unwrap();
                writeln!(out, "witness.expected={}", sigma.token(p.expected)).unwrap();
                writeln!(out, "witness.found={}", sigma.token(p.found)).unwrap();
                writeln!(out, "witness.path={}", w(&p.path)).unwrap();
            }
            Some(Witness::Factor(f)) => {
                writeln!(out, "witness.state={}", f.state_label).unwrap();
                writeln!(out, "witness.v={}", w(&f.v)).unwrap();
                writeln!(out, "witness.x={}", w(&f.x)).unwrap();
                if let Some(a) = f.a {
                    writeln!(out, "witness.a={}", sigma.token(a)).unwrap();
                }
                writeln!(out, "witness.d1={}", f.d1_name).unwrap();
                writeln!(out, "witness.d2={}", f.d2_name).unwrap();
            }
            None => {}
        }
        out
    }
}

/// A non-trivial strongly connected component of the trimmed automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Member states in canonical order.
    pub members: Vec<usize>,
    /// `labels[i]` is the cycle label at `members[i]`; empty until the
    /// periodicity test has passed.
    pub labels: Vec<Word>,
}

impl Component {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SccInfo {
    pub components: Vec<Component>,
}

impl SccInfo {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `(state, label)` over all components, in canonical state order.
    pub fn labelled_states(&self) -> Vec<(usize, &Word)> {
        let mut all: Vec<_> = self
            .components
            .iter()
            .flat_map(|c| c.members.iter().copied().zip(c.labels.iter()))
            .collect();
        all.sort_unstable_by_key(|&(s, _)| s);
        all
    }
}

/// Components with at least one internal arc; members must all sit on level 0.
pub fn nontrivial_sccs(nfa: &HairpinNfa) -> Result<SccInfo> {
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(nfa.len(), nfa.num_arcs());
    for _ in 0..nfa.len() {
        graph.add_node(());
    }
    for s in 0..nfa.len() {
        for &(_, t) in nfa.arcs(s) {
            graph.add_edge(NodeIndex::new(s), NodeIndex::new(t), ());
        }
    }
    let mut comp_of = vec![usize::MAX; nfa.len()];
    let mut components = Vec::new();
    for scc in kosaraju_scc(&graph) {
        let mut members: Vec<usize> = scc.into_iter().map(NodeIndex::index).collect();
        members.sort_unstable();
        let id = components.len();
        for &m in &members {
            comp_of[m] = id;
        }
        components.push(members);
    }
    let mut nontrivial: Vec<Vec<usize>> = components
        .into_iter()
        .enumerate()
        .filter(|(id, members)| {
            members
                .iter()
                .any(|&s| nfa.arcs(s).iter().any(|&(_, t)| comp_of[t] == *id))
        })
        .map(|(_, m)| m)
        .collect();
    nontrivial.sort_by_key(|m| m[0]);
    for members in &nontrivial {
        if let Some(&s) = members.iter().find(|&&s| nfa.state(s).level != 0) {
            return Err(Error::Invariant(format!(
                "cycle through {} above level 0",
                nfa.label(s)
            )));
        }
    }
    Ok(SccInfo {
        components: nontrivial
            .into_iter()
            .map(|members| Component {
                members,
                labels: Vec::new(),
            })
            .collect(),
    })
}

/// `true` iff the trimmed automaton accepts a finite language, i.e. has no
/// cycle.
pub fn test0_is_finite(nfa: &HairpinNfa) -> Result<bool> {
    Ok(nontrivial_sccs(nfa)?.is_empty())
}

pub enum PeriodOutcome {
    Pass(SccInfo),
    Fail(PeriodWitness),
}

/// Shortest, length-lexicographically least loop at `start` inside its
/// component, with the states it visits (starting at `start`).
fn shortest_loop(nfa: &HairpinNfa, start: usize, inside: &[bool]) -> (Word, Vec<usize>) {
    let sigma = nfa.instance().dfa1.alphabet();
    let tree = ShortlexTree::explore(nfa.len(), [start], sigma.letters(), |b, a, out| {
        out.extend(
            nfa.arcs(b)
                .iter()
                .filter(|&&(c, t)| c == a && inside[t])
                .map(|&(_, t)| t),
        )
    });
    let mut best: Option<(Word, usize)> = None;
    for b in (0..nfa.len()).filter(|&b| inside[b] && tree.reached(b)) {
        for &(c, t) in nfa.arcs(b) {
            if t != start {
                continue;
            }
            let word = Word::concat(&[&tree.word(b), &[c]]);
            if best.as_ref().is_none_or(|(w, _)| shortlex_cmp(&word, w).is_lt()) {
                best = Some((word, b));
            }
        }
    }
    let (word, last) = best.unwrap_or_else(|| panic!("state {start} is not on a cycle"));
    (word, tree.path(last))
}

/// Searches, for every cycle state `A` in canonical order, a path from `A`
/// that deviates from the periodic continuation of the shortest loop label
/// `v_A`. Without such a path the components are simple cycles and the
/// labels are attached.
pub fn test1_periodic_labels(nfa: &HairpinNfa, scc: &SccInfo) -> Result<PeriodOutcome> {
    let mut labelled = scc.clone();
    for comp in &mut labelled.components {
        let mut inside = vec![false; nfa.len()];
        for &m in &comp.members {
            inside[m] = true;
        }
        let mut labels = Vec::with_capacity(comp.size());
        for &a_state in &comp.members {
            let (v, loop_states) = shortest_loop(nfa, a_state, &inside);
            if let Some(fail) = periodic_deviation(nfa, a_state, &v) {
                return Ok(PeriodOutcome::Fail(fail));
            }
            let mut distinct = loop_states.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if v.len() != comp.size() || distinct.len() != comp.size() {
                return Err(Error::Invariant(format!(
                    "component of {} is not a simple cycle (|v| = {}, size {})",
                    nfa.label(a_state),
                    v.len(),
                    comp.size()
                )));
            }
            labels.push(v);
        }
        comp.labels = labels;
    }
    Ok(PeriodOutcome::Pass(labelled))
}

/// Breadth-first search over `(state, offset in v)` following the letters of
/// `v v v ...` from `start`; reports the first arc whose letter differs.
fn periodic_deviation(nfa: &HairpinNfa, start: usize, v: &Word) -> Option<PeriodWitness> {
    let period = v.len();
    let mut parent: HashMap<(usize, usize), ((usize, usize), Letter)> = HashMap::new();
    let mut queue = VecDeque::from([(start, 0usize)]);
    parent.insert((start, 0), ((start, 0), v[0]));
    while let Some((b, j)) = queue.pop_front() {
        for &(c, t) in nfa.arcs(b) {
            if c != v[j] {
                let mut path = vec![c];
                let mut node = (b, j);
                while node != (start, 0) {
                    let (prev, a) = parent[&node];
                    path.push(a);
                    node = prev;
                }
                path.reverse();
                return Some(PeriodWitness {
                    state: start,
                    state_label: nfa.label(start),
                    v: v.clone(),
                    m: j + 1,
                    expected: v[j],
                    found: c,
                    path: Word(path),
                });
            }
            let next = (t, (j + 1) % period);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(((b, j), c));
                queue.push_back(next);
            }
        }
    }
    None
}

/// No state of `dfa` is final at steps `1..` of reading `w` `times` times
/// from `start`; the start itself is exempt.
fn avoids_finals(dfa: &Dfa, start: usize, w: &[Letter], times: usize) -> bool {
    let mut q = start;
    for _ in 0..times {
        for &a in w {
            q = dfa.step(q, a);
            if dfa.is_final(q) {
                return false;
            }
        }
    }
    true
}

/// Conditions 3 and 4 on `(d1, d2)` for the loop label `v` and the prefix
/// `x` of `v α`:
///
/// * `e1 = d1 · bar(α)` is final and `e1 · bar(v)^n` never enters a final
///   state after its start;
/// * `e2 = d2 · bar(x)` and `e2 · bar(v)^n` never enters a final state after
///   its start (`e2` itself may be final).
#[allow(clippy::too_many_arguments)]
pub fn pumping_conditions(
    dfa1: &Dfa,
    dfa2: &Dfa,
    n: usize,
    k: usize,
    v: &[Letter],
    x: &[Letter],
    d1: usize,
    d2: usize,
) -> bool {
    let sigma = dfa1.alphabet();
    let alpha = Word::periodic_prefix(v, k);
    let vbar = sigma.bar(v);
    let e1 = dfa1.run(d1, &sigma.bar(&alpha));
    if !dfa1.is_final(e1) || !avoids_finals(dfa1, e1, &vbar, n) {
        return false;
    }
    let e2 = dfa2.run(d2, &sigma.bar(x));
    avoids_finals(dfa2, e2, &vbar, n)
}

/// Is there a factorization `z = μ δ β bar(δ) bar(μ)` with `|δ| = k` and
/// `p2 · μ δ bar(β) bar(δ)` final in `dfa2`?
///
/// `μ δ bar(β) bar(δ)` is the prefix of `bar(z)` of length `|z| - |μ|`.
pub fn factorization_hits_final(z: &[Letter], p2: usize, dfa2: &Dfa, k: usize) -> bool {
    let sigma = dfa2.alphabet();
    let len = z.len();
    if len < 2 * k {
        return false;
    }
    let zbar = sigma.bar(z);
    let trace = dfa2.run_trace(p2, &zbar);
    let mut matched = 0;
    for m in 0..=(len - 2 * k) / 2 {
        // last m + k letters of z must equal bar of the first m + k letters
        while matched < m + k {
            if z[len - 1 - matched] != sigma.complement(z[matched]) {
                return false;
            }
            matched += 1;
        }
        if dfa2.is_final(trace[len - m]) {
            return true;
        }
    }
    false
}

/// Everything the factorization tests need about one cycle state.
struct CycleContext<'a> {
    inst: &'a Instance,
    nfa: &'a HairpinNfa,
    state: usize,
    p1: usize,
    p2: usize,
    v: &'a Word,
    alpha: Word,
    v_alpha: Word,
    /// cond3[d1]
    cond3: Vec<bool>,
    /// walk_ok2[e2]: `e2 · bar(v)^n` avoids finals after its start
    walk_ok2: Vec<bool>,
}

impl<'a> CycleContext<'a> {
    fn new(nfa: &'a HairpinNfa, state: usize, v: &'a Word) -> Self {
        let inst = nfa.instance();
        let (dfa1, dfa2) = (&inst.dfa1, &inst.dfa2);
        let sigma = dfa1.alphabet();
        let k = inst.k;
        let n = inst.n();
        let Quad { p1, p2, .. } = nfa.quad(state);
        let alpha = Word::periodic_prefix(v, k);
        let v_alpha = Word::concat(&[v, &alpha]);
        let vbar = sigma.bar(v);
        let alpha_bar = sigma.bar(&alpha);
        let cond3 = dfa1
            .states()
            .map(|d1| {
                let e1 = dfa1.run(d1, &alpha_bar);
                dfa1.is_final(e1) && avoids_finals(dfa1, e1, &vbar, n)
            })
            .collect();
        let walk_ok2 = dfa2.states().map(|e| avoids_finals(dfa2, e, &vbar, n)).collect();
        CycleContext {
            inst,
            nfa,
            state,
            p1,
            p2,
            v,
            alpha,
            v_alpha,
            cond3,
            walk_ok2,
        }
    }

    /// Prefixes `x` of `v α` with `k <= |x| < |v| + k`.
    fn xs(&self) -> impl Iterator<Item = &[Letter]> + '_ {
        let k = self.inst.k;
        (k..self.v.len() + k).map(move |len| &self.v_alpha[..len])
    }

    fn witness(&self, x: &[Letter], a: Option<Letter>, d1: usize, d2: usize) -> FactorWitness {
        FactorWitness {
            state: self.state,
            state_label: self.nfa.label(self.state),
            p1: self.p1,
            p2: self.p2,
            v: self.v.clone(),
            alpha: self.alpha.clone(),
            x: Word(x.to_vec()),
            a,
            d1,
            d2,
            d1_name: self.inst.dfa1.name(d1).to_string(),
            d2_name: self.inst.dfa2.name(d2).to_string(),
        }
    }

    fn cond4(&self, d2: usize, x: &[Letter]) -> bool {
        let sigma = self.inst.dfa2.alphabet();
        let e2 = self.inst.dfa2.run(d2, &sigma.bar(x));
        self.walk_ok2[e2]
    }

    /// Empty `y`: then `d1 = p1 · x` and `d2 = p2 · α`.
    fn test2(&self) -> Option<FactorWitness> {
        let (dfa1, dfa2) = (&self.inst.dfa1, &self.inst.dfa2);
        let sigma = dfa1.alphabet();
        let k = self.inst.k;
        let vbar = sigma.bar(self.v);
        let alpha_bar = sigma.bar(&self.alpha);
        let d2 = dfa2.run(self.p2, &self.alpha);
        for x in self.xs() {
            let d1 = dfa1.run(self.p1, x);
            if !self.cond3[d1] || !self.cond4(d2, x) {
                continue;
            }
            debug_assert!(pumping_conditions(
                dfa1,
                dfa2,
                self.inst.n(),
                k,
                self.v,
                x,
                d1,
                d2
            ));
            let z = Word::concat(&[x, &alpha_bar, &vbar]);
            if !factorization_hits_final(&z, self.p2, dfa2, k) {
                return Some(self.witness(x, None, d1, d2));
            }
        }
        None
    }

    /// Non-empty `y` starting with a letter that leaves `v α` right after `x`.
    fn test3(&self) -> Option<FactorWitness> {
        let inst = self.inst;
        let (dfa1, dfa2) = (&inst.dfa1, &inst.dfa2);
        let sigma = dfa1.alphabet();
        let k = inst.k;
        let c2 = dfa2.run(self.p2, &self.alpha);
        for x in self.xs() {
            let c1 = dfa1.run(self.p1, x);
            let next = self.v_alpha[x.len()];
            let xbar = sigma.bar(x);
            // d2 · bar(x) must avoid finals at steps k..=|x|
            let d2_ok: Vec<bool> = dfa2
                .states()
                .map(|d2| {
                    let trace = dfa2.run_trace(d2, &xbar);
                    self.cond4(d2, x) && trace[k..].iter().all(|&q| !dfa2.is_final(q))
                })
                .collect();
            for a in sigma.letters().filter(|&a| a != next) {
                let start1 = dfa1.step(c1, a);
                let abar = sigma.complement(a);
                for d1 in dfa1.states().filter(|&d1| self.cond3[d1]) {
                    for d2 in dfa2.states().filter(|&d2| d2_ok[d2]) {
                        let y_exists = inst
                            .pre2
                            .get(d2, abar)
                            .iter()
                            .any(|&r2| inst.bridges.is_bridge(Quad::new(start1, c2, d1, r2)));
                        if y_exists {
                            debug_assert!(self.right_factorizations_miss(x, a, d1, d2));
                            return Some(self.witness(x, Some(a), d1, d2));
                        }
                    }
                }
            }
        }
        None
    }

    // With a concrete y, the factorization search on x y bar(α) bar(v) agrees
    // with the shortcut used by test3.
    fn right_factorizations_miss(&self, x: &[Letter], a: Letter, d1: usize, d2: usize) -> bool {
        let inst = self.inst;
        let sigma = inst.dfa1.alphabet();
        let c1 = inst.dfa1.run(self.p1, x);
        let c2 = inst.dfa2.run(self.p2, &self.alpha);
        let Some(y) = y_word(inst, c1, c2, a, d1, d2) else {
            return false;
        };
        let z = Word::concat(&[x, &y, &sigma.bar(&self.alpha), &sigma.bar(self.v)]);
        !factorization_hits_final(&z, self.p2, &inst.dfa2, inst.k)
    }
}

/// Shortest `y ∈ a Σ*` with `c1 · y = d1` and `c2 · bar(y) = d2`.
pub fn y_word(inst: &Instance, c1: usize, c2: usize, a: Letter, d1: usize, d2: usize) -> Option<Word> {
    let sigma = inst.dfa1.alphabet();
    let start1 = inst.dfa1.step(c1, a);
    inst.pre2
        .get(d2, sigma.complement(a))
        .iter()
        .filter_map(|&r2| {
            crate::bridge::shortest_bridge_witness_with(
                &inst.dfa1,
                &inst.pre2,
                Quad::new(start1, c2, d1, r2),
            )
        })
        .min_by(|x, y| shortlex_cmp(x, y))
        .map(|rest| Word::concat(&[&[a], &rest]))
}

/// Test 2 at one cycle state with label `v`.
pub fn test2(nfa: &HairpinNfa, state: usize, v: &Word) -> Option<FactorWitness> {
    CycleContext::new(nfa, state, v).test2()
}

/// Test 3 at one cycle state with label `v`.
pub fn test3(nfa: &HairpinNfa, state: usize, v: &Word) -> Option<FactorWitness> {
    CycleContext::new(nfa, state, v).test3()
}

/// One orientation's trimmed automaton and its cycle analysis.
#[derive(Debug, Clone)]
pub struct OrientedRun {
    pub orientation: Orientation,
    pub nfa: HairpinNfa,
    /// Labels are populated when the periodicity test passed.
    pub scc: SccInfo,
}

#[derive(Debug, Clone)]
pub struct Decision {
    pub verdict: Verdict,
    pub runs: Vec<OrientedRun>,
}

impl Decision {
    pub fn run(&self, orientation: Orientation) -> Option<&OrientedRun> {
        self.runs.iter().find(|r| r.orientation == orientation)
    }
}

/// Decides regularity of `H_k(L1, L2)` from DFAs for `L1` and `bar(L2)`.
pub fn decide(dfa1: &Dfa, dfa2: &Dfa, k: usize) -> Result<Verdict> {
    Ok(decide_detailed(dfa1, dfa2, k)?.verdict)
}

/// Like [`decide`], also returning the automata the verdict was read from.
pub fn decide_detailed(dfa1: &Dfa, dfa2: &Dfa, k: usize) -> Result<Decision> {
    let forward = Arc::new(Instance::new(dfa1.clone(), dfa2.clone(), k)?);
    let mirrored = Arc::new(forward.mirrored()?);
    let mut runs = Vec::new();
    for (orientation, inst) in [
        (Orientation::Forward, forward),
        (Orientation::Mirrored, mirrored),
    ] {
        let nfa = HairpinNfa::build(inst)?.trim();
        let scc = nontrivial_sccs(&nfa)?;
        if orientation == Orientation::Forward && scc.is_empty() {
            runs.push(OrientedRun {
                orientation,
                nfa,
                scc,
            });
            return Ok(Decision {
                verdict: Verdict::regular(Reason::Finite),
                runs,
            });
        }
        let labelled = match test1_periodic_labels(&nfa, &scc)? {
            PeriodOutcome::Fail(w) => {
                runs.push(OrientedRun {
                    orientation,
                    nfa,
                    scc,
                });
                return Ok(Decision {
                    verdict: Verdict {
                        result: Outcome::NotRegular,
                        reason: Reason::Test1,
                        orientation: Some(orientation),
                        witness: Some(Witness::Period(w)),
                    },
                    runs,
                });
            }
            PeriodOutcome::Pass(labelled) => labelled,
        };
        let mut fired = None;
        for (state, v) in labelled.labelled_states() {
            let ctx = CycleContext::new(&nfa, state, v);
            if let Some(w) = ctx.test2() {
                fired = Some((Reason::Test2, w));
                break;
            }
            if let Some(w) = ctx.test3() {
                fired = Some((Reason::Test3, w));
                break;
            }
        }
        runs.push(OrientedRun {
            orientation,
            nfa,
            scc: labelled,
        });
        if let Some((reason, w)) = fired {
            return Ok(Decision {
                verdict: Verdict {
                    result: Outcome::NotRegular,
                    reason,
                    orientation: Some(orientation),
                    witness: Some(Witness::Factor(w)),
                },
                runs,
            });
        }
    }
    Ok(Decision {
        verdict: Verdict::regular(Reason::TestsPassed),
        runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{empty_language, hardness_l1, singleton};
    use crate::format::parse_dfa;
    use crate::testing::{empty, fig2, fig2_states, twosided};

    fn fig2_nfa() -> HairpinNfa {
        let (d1, d2) = fig2();
        HairpinNfa::build(Arc::new(Instance::new(d1, d2, 1).unwrap()))
            .unwrap()
            .trim()
    }

    #[test]
    fn example_has_one_self_loop_component() {
        let nfa = fig2_nfa();
        assert!(!test0_is_finite(&nfa).unwrap());
        let scc = nontrivial_sccs(&nfa).unwrap();
        assert_eq!(scc.components.len(), 1);
        let c = &scc.components[0];
        assert_eq!(c.size(), 1);
        assert_eq!(nfa.label(c.members[0]), "q01,q02|t1,t2|0");
    }

    #[test]
    fn example_passes_the_periodicity_test() {
        let nfa = fig2_nfa();
        let scc = nontrivial_sccs(&nfa).unwrap();
        let PeriodOutcome::Pass(labelled) = test1_periodic_labels(&nfa, &scc).unwrap() else {
            panic!("test 1 fired");
        };
        let sigma = nfa.instance().dfa1.alphabet();
        assert_eq!(sigma.format_word(&labelled.components[0].labels[0]), "a");
    }

    #[test]
    fn empty_automaton_is_finite_and_passes_vacuously() {
        let e = empty();
        let nfa = HairpinNfa::build(Arc::new(Instance::new(e.clone(), e, 1).unwrap()))
            .unwrap()
            .trim();
        assert!(test0_is_finite(&nfa).unwrap());
        let scc = nontrivial_sccs(&nfa).unwrap();
        assert!(matches!(
            test1_periodic_labels(&nfa, &scc).unwrap(),
            PeriodOutcome::Pass(s) if s.is_empty()
        ));
    }

    #[test]
    fn pumping_conditions_on_the_example() {
        let (d1, d2) = fig2();
        let s = fig2_states(&d1, &d2);
        let sigma = d1.alphabet();
        let a = sigma.parse_word("a").unwrap();
        let n = 8;
        assert!(pumping_conditions(&d1, &d2, n, 1, &a, &a, s.p1, s.t2));
        assert!(!pumping_conditions(&d1, &d2, n, 1, &a, &a, s.q01, s.q02));
    }

    #[test]
    fn pumping_rejects_a_final_reentered_on_the_walk() {
        // two states: d -abar-> f, f -abar-> f, f final
        let sigma = Alphabet::with_pairs(1);
        let delta = vec![0, 1, 1, 1];
        let d1 = Dfa::new(sigma.clone(), vec!["d".into(), "f".into()], delta, 0, vec![false, true]).unwrap();
        let d2 = empty_language(&sigma);
        let a = sigma.parse_word("a").unwrap();
        assert!(!pumping_conditions(&d1, &d2, 3, 1, &a, &a, 0, 0));
    }

    #[test]
    fn factorization_on_the_example() {
        let (d1, d2) = fig2();
        let s = fig2_states(&d1, &d2);
        let sigma = d1.alphabet();
        let z = sigma.parse_word("a,bbar,abar,abar").unwrap();
        assert!(!factorization_hits_final(&z, s.q02, &d2, 1));
        assert!(!factorization_hits_final(&z[..1], s.q02, &d2, 1));
        // a b abar: m = 0 gives q02 · (a bbar abar) = f2
        let z = sigma.parse_word("a,b,abar").unwrap();
        assert!(factorization_hits_final(&z, s.q02, &d2, 1));
    }

    #[test]
    fn example_fires_test3_with_bbar() {
        let nfa = fig2_nfa();
        let scc = nontrivial_sccs(&nfa).unwrap();
        let a_state = scc.components[0].members[0];
        let sigma = nfa.instance().dfa1.alphabet().clone();
        let v = sigma.parse_word("a").unwrap();
        assert_eq!(test2(&nfa, a_state, &v), None);
        let w = test3(&nfa, a_state, &v).unwrap();
        assert_eq!(sigma.format_word(&w.x), "a");
        assert_eq!(w.a.map(|a| sigma.token(a).to_string()).as_deref(), Some("bbar"));
        assert_eq!((w.d1_name.as_str(), w.d2_name.as_str()), ("p1", "t2"));
    }

    #[test]
    fn decide_on_the_example() {
        let (d1, d2) = fig2();
        let v = decide(&d1, &d2, 1).unwrap();
        assert_eq!(v.result, Outcome::NotRegular);
        assert_eq!(v.reason, Reason::Test3);
        assert_eq!(v.orientation, Some(Orientation::Forward));
        let text = v.render(d1.alphabet());
        assert_eq!(
            text,
            "verdict=not-regular\nreason=test3\norientation=forward\n\
             witness.state=q01,q02|t1,t2|0\nwitness.v=a\nwitness.x=a\nwitness.a=bbar\n\
             witness.d1=p1\nwitness.d2=t2\n"
        );
    }

    #[test]
    fn empty_languages_are_regular_by_finiteness() {
        let e = empty();
        let v = decide(&e, &e, 1).unwrap();
        assert_eq!(v, Verdict::regular(Reason::Finite));
        assert_eq!(v.render(e.alphabet()), "verdict=regular\nreason=finite\n");
    }

    #[test]
    fn finite_l1_is_regular() {
        let sigma = Alphabet::with_pairs(2);
        let l1 = singleton(&sigma, &sigma.parse_word("b,abar").unwrap());
        let v = decide(&l1, &empty_language(&sigma), 1).unwrap();
        assert_eq!(v.reason, Reason::Finite);
    }

    #[test]
    fn hardness_family() {
        let sigma = Alphabet::with_pairs(2);
        let none = empty_language(&sigma);
        let b = singleton(&sigma, &sigma.parse_word("b").unwrap());
        for k in [1, 2] {
            let v = decide(&hardness_l1(&none, k).unwrap(), &none, k).unwrap();
            assert_eq!(v.reason, Reason::Finite);
            let v = decide(&hardness_l1(&b, k).unwrap(), &none, k).unwrap();
            assert_eq!(v.result, Outcome::NotRegular, "k = {k}");
        }
    }

    const ENDS_WITH_ABAR: &str = "alphabet a abar\ncomplement a abar\nstates s f\ninitial s\nfinal f\n\
        arc s a s\narc s abar f\narc f a s\narc f abar f\n";
    const A_STAR_ABAR: &str = "alphabet a abar\ncomplement a abar\nstates s f d\ninitial s\nfinal f\n\
        arc s a s\narc s abar f\narc f a d\narc f abar d\narc d a d\narc d abar d\n";

    #[test]
    fn deviating_path_fires_test1() {
        // membership compares the outer abar^j ... a^j blocks: not regular
        let l1 = parse_dfa(ENDS_WITH_ABAR).unwrap();
        let none = empty_language(l1.alphabet());
        let v = decide(&l1, &none, 1).unwrap();
        assert_eq!(v.reason, Reason::Test1);
        let Some(Witness::Period(w)) = &v.witness else {
            panic!("expected a period witness");
        };
        let sigma = l1.alphabet();
        assert_eq!(w.state_label, "f,z|s,z|0");
        assert_eq!((w.m, sigma.token(w.expected), sigma.token(w.found)), (1, "abar", "a"));
        assert_eq!(sigma.format_word(&w.path), "abar,a");
        assert!(v.render(sigma).contains("witness.m=1\nwitness.expected=abar\n"));
    }

    #[test]
    fn empty_y_fires_test2() {
        // H = { a^s abar^t : s >= t >= 1 }
        let l1 = parse_dfa(A_STAR_ABAR).unwrap();
        let none = empty_language(l1.alphabet());
        let v = decide(&l1, &none, 1).unwrap();
        assert_eq!(v.reason, Reason::Test2);
        let Some(Witness::Factor(w)) = &v.witness else {
            panic!("expected a factorization witness");
        };
        assert_eq!(w.a, None);
        assert_eq!((w.d1_name.as_str(), w.d2_name.as_str()), ("s", "z"));
        // a stem of two letters never fits a single abar
        assert_eq!(decide(&l1, &none, 2).unwrap().reason, Reason::Finite);
    }

    #[test]
    fn swapping_the_inputs_keeps_the_result() {
        let (d1, d2) = fig2();
        let v = decide(&d2, &d1, 1).unwrap();
        assert_eq!(v.result, Outcome::NotRegular);
        assert_eq!(v.orientation, Some(Orientation::Mirrored));
    }

    #[test]
    fn two_sided_instance_is_finite() {
        // the trailing abar block keeps the first automaton final, so the
        // stem is always the shortest possible one
        let (d1, d2) = twosided();
        let v = decide(&d1, &d2, 1).unwrap();
        assert_eq!(v, Verdict::regular(Reason::Finite));
    }
}
