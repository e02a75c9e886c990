//! Bridges: quadruples `(p1, p2, q1, q2)` for which some word `β` satisfies
//! `p1 · β = q1` in the first automaton and `p2 · bar(β) = q2` in the second.
//!
//! Nonemptiness is reachability in the bridge graph on `Q1 × Q2`: a node
//! `(s, t)` steps on letter `a` to `(s · a, r)` for every `r` with
//! `r · bar(a) = t`. A word `β` leads from `(p1, q2)` to `(q1, p2)` exactly
//! when it belongs to `B(p1, p2, q1, q2)`.

use crate::alphabet::{Letter, Word};
use crate::dfa::{Dfa, Preimages};
use crate::error::{Error, Result};
use crate::search::ShortlexTree;

/// A quadruple `(p1, p2, q1, q2)` over `Q1 × Q2 × Q1 × Q2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quad {
    pub p1: usize,
    pub p2: usize,
    pub q1: usize,
    pub q2: usize,
}

impl Quad {
    pub fn new(p1: usize, p2: usize, q1: usize, q2: usize) -> Self {
        Quad { p1, p2, q1, q2 }
    }
}

/// The set of all bridges of a pair of automata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeTable {
    n1: usize,
    n2: usize,
    bits: Vec<bool>,
}

fn bridge_bfs(dfa1: &Dfa, pre2: &Preimages, start: (usize, usize)) -> ShortlexTree {
    let sigma = dfa1.alphabet();
    let n2 = pre2.rows();
    let nodes = dfa1.num_states() * n2;
    ShortlexTree::explore(nodes, [start.0 * n2 + start.1], sigma.letters(), |node, a, out| {
        let (s, t) = (node / n2, node % n2);
        let s2 = dfa1.step(s, a);
        out.extend(pre2.get(t, sigma.complement(a)).iter().map(|&r| s2 * n2 + r));
    })
}

impl BridgeTable {
    /// Materializes the bridge relation by one breadth-first search per
    /// source node of the bridge graph.
    pub fn compute(dfa1: &Dfa, dfa2: &Dfa) -> Result<Self> {
        if dfa1.alphabet() != dfa2.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let (n1, n2) = (dfa1.num_states(), dfa2.num_states());
        let pre2 = dfa2.preimages();
        let mut table = BridgeTable {
            n1,
            n2,
            bits: vec![false; n1 * n2 * n1 * n2],
        };
        for p1 in 0..n1 {
            for q2 in 0..n2 {
                let search = bridge_bfs(dfa1, &pre2, (p1, q2));
                for node in (0..n1 * n2).filter(|&v| search.reached(v)) {
                    let (q1, p2) = (node / n2, node % n2);
                    let i = table.offset(Quad::new(p1, p2, q1, q2));
                    table.bits[i] = true;
                }
            }
        }
        Ok(table)
    }

    #[inline]
    fn offset(&self, q: Quad) -> usize {
        ((q.p1 * self.n2 + q.p2) * self.n1 + q.q1) * self.n2 + q.q2
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    #[inline]
    pub fn is_bridge(&self, q: Quad) -> bool {
        q.p1 < self.n1
            && q.q1 < self.n1
            && q.p2 < self.n2
            && q.q2 < self.n2
            && self.bits[self.offset(q)]
    }

    /// All bridges in canonical (lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = Quad> + '_ {
        let (n1, n2) = (self.n1, self.n2);
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(move |(i, _)| {
            let q2 = i % n2;
            let q1 = (i / n2) % n1;
            let p2 = (i / (n2 * n1)) % n2;
            let p1 = i / (n2 * n1 * n2);
            Quad::new(p1, p2, q1, q2)
        })
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every bridge together with its shortest, length-lexicographically
    /// least witness.
    pub fn witnesses(&self, dfa1: &Dfa, dfa2: &Dfa) -> Vec<(Quad, Word)> {
        let pre2 = dfa2.preimages();
        let n2 = self.n2;
        let mut out = Vec::with_capacity(self.len());
        for p1 in 0..self.n1 {
            for q2 in 0..n2 {
                let search = bridge_bfs(dfa1, &pre2, (p1, q2));
                for node in (0..self.n1 * n2).filter(|&v| search.reached(v)) {
                    let (q1, p2) = (node / n2, node % n2);
                    out.push((Quad::new(p1, p2, q1, q2), search.word(node)));
                }
            }
        }
        out.sort_by_key(|(q, _)| *q);
        out
    }
}

/// `β ∈ B(p1, p2, q1, q2)`.
pub fn bridge_membership(dfa1: &Dfa, dfa2: &Dfa, quad: Quad, beta: &[Letter]) -> bool {
    dfa1.run(quad.p1, beta) == quad.q1
        && dfa2.run(quad.p2, &dfa2.alphabet().bar(beta)) == quad.q2
}

/// Shortest member of `B(quad)`, ties broken length-lexicographically;
/// `None` when `quad` is not a bridge.
pub fn shortest_bridge_witness(dfa1: &Dfa, dfa2: &Dfa, quad: Quad) -> Option<Word> {
    let pre2 = dfa2.preimages();
    shortest_bridge_witness_with(dfa1, &pre2, quad)
}

pub(crate) fn shortest_bridge_witness_with(dfa1: &Dfa, pre2: &Preimages, quad: Quad) -> Option<Word> {
    let n2 = pre2.rows();
    let search = bridge_bfs(dfa1, pre2, (quad.p1, quad.q2));
    let target = quad.q1 * n2 + quad.p2;
    search.reached(target).then(|| search.word(target))
}
