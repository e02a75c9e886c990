#![allow(dead_code)]

use hairpin::format::parse_dfa;
use hairpin::{Alphabet, Dfa, PartialDfa};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x0068_6169_7270_696e;
pub const CORPUS_SIZE: usize = 120;

pub struct Case {
    pub id: usize,
    pub dfa1: Dfa,
    pub dfa2: Dfa,
    pub k: usize,
}

fn random_partial(rng: &mut ChaCha8Rng, sigma: &Alphabet, n: usize, arc_p: f64, final_p: f64) -> Dfa {
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut p = PartialDfa::new(sigma.clone(), &names, "s0").unwrap();
    for name in &names {
        if rng.gen_bool(final_p) {
            p.set_final(name).unwrap();
        }
    }
    for src in &names {
        for a in sigma.letters() {
            if rng.gen_bool(arc_p) {
                let dst = &names[rng.gen_range(0..n)];
                p.add_arc(src, sigma.token(a), dst).unwrap();
            }
        }
    }
    p.complete().unwrap()
}

/// Random partial DFA with `1..=max_states` states, completed with a sink
/// when needed.
pub fn random_dfa(rng: &mut ChaCha8Rng, sigma: &Alphabet, max_states: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    random_partial(rng, sigma, n, 0.75, 0.4)
}

/// Like [`random_dfa`] with fewer arcs and more final states.
pub fn sparse_dfa(rng: &mut ChaCha8Rng, sigma: &Alphabet, max_states: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    random_partial(rng, sigma, n, 0.4, 0.5)
}

/// Total DFA with exactly `n` states.
pub fn dense_dfa(rng: &mut ChaCha8Rng, sigma: &Alphabet, n: usize) -> Dfa {
    random_partial(rng, sigma, n, 1.0, 0.3)
}

/// The seeded corpus: alphabets of one or two complementary pairs, at most
/// four states per automaton before completion, `k` in `{1, 2}`.
pub fn corpus() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..CORPUS_SIZE)
        .map(|id| {
            let sigma = Alphabet::with_pairs(if id % 2 == 0 { 1 } else { 2 });
            let dfa1 = random_dfa(&mut rng, &sigma, 4);
            let dfa2 = random_dfa(&mut rng, &sigma, 4);
            let k = 1 + (id / 2) % 2;
            Case { id, dfa1, dfa2, k }
        })
        .collect()
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture_dfa(name: &str) -> Dfa {
    parse_dfa(&fixture(name)).unwrap()
}
