//! Decides whether the hairpin completion of two regular languages is
//! regular.
//!
//! The inputs are complete DFAs for `L1` and for `bar(L2)` over an alphabet
//! with a complement involution, and a stem length `k >= 1`. The hairpin
//! completion `H_k(L1, L2)` is the set of words `γ α β bar(α) bar(γ)` with
//! `|α| = k` such that `γ α β bar(α) ∈ L1` or `α β bar(α) bar(γ) ∈ L2`.
//!
//! [`regularity::decide`] builds the bridge automaton of [`nfa`], checks
//! finiteness, analyses its cycles and runs the factorization tests in both
//! orientations. The [`oracle`] module recomputes hairpin membership straight
//! from the definition so that every structural claim can be cross-checked.

pub mod alphabet;
pub mod bridge;
pub mod dfa;
pub mod error;
pub mod family;
pub mod format;
pub mod nfa;
pub mod oracle;
pub mod regularity;
mod search;

#[cfg(test)]
mod testing;

pub use alphabet::{Alphabet, Letter, Word};
pub use bridge::{bridge_membership, shortest_bridge_witness, BridgeTable, Quad};
pub use dfa::{reverse_bar_dfa, Dfa, PartialDfa, ProductDfa};
pub use error::{Error, Result};
pub use nfa::{BridgeState, HairpinNfa, Instance};
pub use regularity::{decide, decide_detailed, Decision, Orientation, Outcome, Reason, Verdict, Witness};
