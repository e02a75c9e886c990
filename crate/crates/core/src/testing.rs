//! Shared fixtures for unit tests.

use crate::dfa::Dfa;
use crate::format::parse_dfa;

pub const FIG2_L1: &str = include_str!("../../../fixtures/fig2_l1.aut");
pub const FIG2_L2BAR: &str = include_str!("../../../fixtures/fig2_l2bar.aut");
pub const TWOSIDED_L1: &str = include_str!("../../../fixtures/twosided_l1.aut");
pub const TWOSIDED_L2BAR: &str = include_str!("../../../fixtures/twosided_l2bar.aut");
pub const EMPTY: &str = include_str!("../../../fixtures/empty.aut");

pub fn fig2() -> (Dfa, Dfa) {
    (parse_dfa(FIG2_L1).unwrap(), parse_dfa(FIG2_L2BAR).unwrap())
}

pub fn twosided() -> (Dfa, Dfa) {
    (parse_dfa(TWOSIDED_L1).unwrap(), parse_dfa(TWOSIDED_L2BAR).unwrap())
}

pub fn empty() -> Dfa {
    parse_dfa(EMPTY).unwrap()
}

#[allow(dead_code)]
pub struct Fig2States {
    pub q01: usize,
    pub p1: usize,
    pub f1: usize,
    pub t1: usize,
    pub q02: usize,
    pub p2: usize,
    pub f2: usize,
    pub t2: usize,
}

pub fn fig2_states(d1: &Dfa, d2: &Dfa) -> Fig2States {
    let s1 = |n| d1.state(n).unwrap();
    let s2 = |n| d2.state(n).unwrap();
    Fig2States {
        q01: s1("q01"),
        p1: s1("p1"),
        f1: s1("f1"),
        t1: s1("t1"),
        q02: s2("q02"),
        p2: s2("p2"),
        f2: s2("f2"),
        t2: s2("t2"),
    }
}
