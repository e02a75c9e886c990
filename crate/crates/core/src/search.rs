//! Breadth-first search that labels every node with its length-lexicographically
//! least access word.
//!
//! Plain BFS with parent pointers gets this wrong when several nodes of one
//! layer share the same least word: their children are then enqueued node by
//! node instead of letter by letter. Here each layer is a list of groups of
//! nodes with equal words, and a group is expanded one letter at a time.

use crate::alphabet::{Letter, Word};

pub(crate) struct ShortlexTree {
    parent: Vec<Option<(usize, Letter)>>,
    seen: Vec<bool>,
}

impl ShortlexTree {
    /// `succ(node, a, out)` pushes the `a`-successors of `node`. All roots get
    /// the empty word.
    pub(crate) fn explore(
        nodes: usize,
        roots: impl IntoIterator<Item = usize>,
        letters: impl Iterator<Item = Letter> + Clone,
        mut succ: impl FnMut(usize, Letter, &mut Vec<usize>),
    ) -> Self {
        let mut tree = ShortlexTree {
            parent: vec![None; nodes],
            seen: vec![false; nodes],
        };
        let mut first = Vec::new();
        for r in roots {
            if !tree.seen[r] {
                tree.seen[r] = true;
                first.push(r);
            }
        }
        let mut groups: Vec<Vec<usize>> = vec![first];
        let mut buf = Vec::new();
        while !groups.is_empty() {
            let mut next = Vec::new();
            for group in &groups {
                for a in letters.clone() {
                    let mut fresh = Vec::new();
                    for &node in group {
                        buf.clear();
                        succ(node, a, &mut buf);
                        for &t in &buf {
                            if !tree.seen[t] {
                                tree.seen[t] = true;
                                tree.parent[t] = Some((node, a));
                                fresh.push(t);
                            }
                        }
                    }
                    if !fresh.is_empty() {
                        next.push(fresh);
                    }
                }
            }
            groups = next;
        }
        tree
    }

    pub(crate) fn reached(&self, node: usize) -> bool {
        self.seen[node]
    }

    pub(crate) fn word(&self, mut node: usize) -> Word {
        let mut letters = Vec::new();
        while let Some((prev, a)) = self.parent[node] {
            letters.push(a);
            node = prev;
        }
        letters.reverse();
        Word(letters)
    }

    /// Nodes on the tree path from a root to `node`, root first.
    pub(crate) fn path(&self, mut node: usize) -> Vec<usize> {
        let mut nodes = vec![node];
        while let Some((prev, _)) = self.parent[node] {
            nodes.push(prev);
            node = prev;
        }
        nodes.reverse();
        nodes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_between_nodes_are_broken_by_the_next_letter() {
        // 0 -x-> 1, 0 -x-> 2, 1 -y-> 3, 2 -x-> 3: 3 must get "x x", not "x y"
        let arcs = [(0, 0, 1), (0, 0, 2), (1, 1, 3), (2, 0, 3)];
        let tree = ShortlexTree::explore(4, [0], [Letter(0), Letter(1)].into_iter(), |n, a, out| {
            out.extend(arcs.iter().filter(|&&(s, b, _)| s == n && b == a.0).map(|&(_, _, t)| t))
        });
        assert_eq!(tree.word(3), Word(vec![Letter(0), Letter(0)]));
        assert_eq!(tree.path(3), vec![0, 2, 3]);
        assert!(tree.reached(2));
    }
}
