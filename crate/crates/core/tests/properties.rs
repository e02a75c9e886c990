//! Randomized cross-checks of the structural properties against brute force.

mod common;

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use common::{corpus, fixture, random_dfa, Case};
use hairpin::family::{empty_language, hardness_l1, singleton};
use hairpin::format::print_dfa;
use hairpin::oracle::{enumerate_hairpin, for_each_word, is_member};
use hairpin::regularity::{nontrivial_sccs, test0_is_finite};
use hairpin::{reverse_bar_dfa, Alphabet, HairpinNfa, Instance, ProductDfa, Quad, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn built(c: &Case) -> HairpinNfa {
    HairpinNfa::build(Arc::new(Instance::new(c.dfa1.clone(), c.dfa2.clone(), c.k).unwrap())).unwrap()
}

#[test]
fn reverse_bar_accepts_the_bar_images() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..60 {
        let sigma = Alphabet::with_pairs(1 + i % 2);
        let d = random_dfa(&mut rng, &sigma, 4);
        let r = reverse_bar_dfa(&d);
        for_each_word(sigma.len(), 6, |w| {
            assert_eq!(r.accepts(w), d.accepts(&sigma.bar(w)), "{}", sigma.format_word(w));
        });
    }
}

#[test]
fn product_states_have_short_access_words() {
    for c in corpus() {
        let p = ProductDfa::new(&c.dfa1, &c.dfa2).unwrap();
        let bound = c.dfa1.num_states() * c.dfa2.num_states();
        assert!(p.len() <= bound);
        let mut dist = vec![usize::MAX; p.len()];
        dist[p.initial()] = 0;
        let mut queue = VecDeque::from([p.initial()]);
        while let Some(i) = queue.pop_front() {
            for a in c.dfa1.alphabet().letters() {
                let j = p.step(i, a);
                if dist[j] == usize::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        assert!(dist.iter().all(|&d| d < bound), "case {}", c.id);
    }
}

#[test]
fn successors_follow_the_arc_rules() {
    for c in corpus().iter().take(40) {
        let nfa = built(c);
        let inst = nfa.instance();
        let sigma = inst.dfa1.alphabet();
        for x in 0..nfa.len() {
            let sx = nfa.state(x);
            for a in sigma.letters() {
                let got: HashSet<usize> = nfa.successors(x, a).into_iter().collect();
                let want: HashSet<usize> = (0..nfa.len())
                    .filter(|&y| {
                        let sy = nfa.state(y);
                        let abar = sigma.complement(a);
                        let level_ok = if sx.level == 0 {
                            let hit = inst.dfa1.is_final(sx.q1) || inst.dfa2.is_final(sx.q2);
                            sy.level == usize::from(hit)
                        } else {
                            sx.level < c.k && sy.level == sx.level + 1
                        };
                        inst.product.step(sx.pair, a) == sy.pair
                            && inst.dfa1.step(sy.q1, abar) == sx.q1
                            && inst.dfa2.step(sy.q2, abar) == sx.q2
                            && level_ok
                    })
                    .collect();
                assert_eq!(got, want, "case {} state {}", c.id, nfa.label(x));
            }
        }
    }
}

#[test]
fn states_are_bridges_and_cycles_stay_on_level_zero() {
    for c in corpus() {
        let nfa = built(&c);
        let inst = nfa.instance();
        for i in 0..nfa.len() {
            let q: Quad = nfa.quad(i);
            assert!(inst.bridges.is_bridge(q));
        }
        let t = nfa.trim();
        let scc = nontrivial_sccs(&t).unwrap();
        for comp in &scc.components {
            assert!(comp.members.iter().all(|&m| t.state(m).level == 0));
        }
        assert!(nfa.len() <= (c.k + 1) * inst.n().pow(4));
    }
}

/// Reflexive-transitive closure by Floyd–Warshall.
fn closure(nfa: &HairpinNfa) -> Vec<Vec<bool>> {
    let n = nfa.len();
    let mut r = vec![vec![false; n]; n];
    for s in 0..n {
        for &(_, t) in nfa.arcs(s) {
            r[s][t] = true;
        }
    }
    for m in 0..n {
        for i in 0..n {
            if r[i][m] {
                for j in 0..n {
                    if r[m][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

#[test]
fn components_match_the_transitive_closure() {
    for c in corpus() {
        let t = built(&c).trim();
        let r = closure(&t);
        let scc = nontrivial_sccs(&t).unwrap();
        let mut on_cycle: Vec<Option<usize>> = vec![None; t.len()];
        for (id, comp) in scc.components.iter().enumerate() {
            for &m in &comp.members {
                on_cycle[m] = Some(id);
            }
        }
        for i in 0..t.len() {
            assert_eq!(on_cycle[i].is_some(), r[i][i], "case {}", c.id);
            for j in 0..t.len() {
                if let (Some(a), Some(b)) = (on_cycle[i], on_cycle[j]) {
                    assert_eq!(a == b, r[i][j] && r[j][i], "case {}", c.id);
                }
            }
        }
    }
}

#[test]
fn finiteness_matches_accepting_path_lengths() {
    for c in corpus() {
        let t = built(&c).trim();
        // infinite iff some accepting path has length in [N, 2N)
        let n = t.len();
        let mut current: HashSet<usize> = t.initials().collect();
        let mut long_accepting = false;
        for len in 1..2 * n.max(1) {
            current = current.iter().flat_map(|&s| t.arcs(s).iter().map(|&(_, x)| x)).collect();
            if len >= n && current.iter().any(|&s| t.is_final(s)) {
                long_accepting = true;
            }
        }
        assert_eq!(test0_is_finite(&t).unwrap(), !long_accepting, "case {}", c.id);
    }
}

#[test]
fn direct_membership_commutes_with_the_mirror() {
    for c in corpus().iter().take(60) {
        let sigma = c.dfa1.alphabet();
        let max = if sigma.len() == 2 { 9 } else { 6 };
        for_each_word(sigma.len(), max, |w| {
            assert_eq!(
                is_member(&c.dfa1, &c.dfa2, c.k, w),
                is_member(&c.dfa2, &c.dfa1, c.k, &sigma.bar(w)),
                "case {}",
                c.id
            );
        });
    }
}

#[test]
fn enumeration_is_monotone_and_well_formed() {
    for c in corpus().iter().take(40) {
        let sigma = c.dfa1.alphabet();
        let short = enumerate_hairpin(&c.dfa1, &c.dfa2, c.k, 5, false).unwrap();
        let long = enumerate_hairpin(&c.dfa1, &c.dfa2, c.k, 7, false).unwrap();
        let long_set: HashSet<&Word> = long.iter().collect();
        assert!(short.iter().all(|w| long_set.contains(w)));
        for w in &long {
            assert!(w.len() >= 2 * c.k);
            let tail = &w[w.len() - c.k..];
            assert_eq!(tail, &sigma.bar(&w[..c.k])[..]);
        }
    }
}

#[test]
fn hardness_fixtures_match_the_generator() {
    let sigma = Alphabet::with_pairs(2);
    let b = singleton(&sigma, &sigma.parse_word("b").unwrap());
    for (tag, l, desc) in [("empty", empty_language(&sigma), "the empty set"), ("b", b, "{b}")] {
        for k in [1, 2] {
            let text = format!(
                "# L1 = a* L abar^{k} with L = {desc}\n{}",
                print_dfa(&hardness_l1(&l, k).unwrap())
            );
            assert_eq!(fixture(&format!("hardness_{tag}_k{k}.aut")), text);
        }
    }
}

#[test]
fn decisions_are_deterministic_across_rebuilds() {
    for c in corpus().iter().take(30) {
        let a = hairpin::decide(&c.dfa1, &c.dfa2, c.k).unwrap();
        let b = hairpin::decide(&c.dfa1.clone(), &c.dfa2.clone(), c.k).unwrap();
        assert_eq!(a, b);
    }
}
