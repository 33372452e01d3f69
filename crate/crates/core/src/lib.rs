//! Alternating plane-walking automata over the lattice ℤ².
//!
//! The crate is `no_std` (it needs `alloc`) and has no IO. It covers:
//!
//! - automata, patterns and periodic configurations ([`automaton`], [`pattern`]),
//! - the quantifier-alternation classifier ([`hierarchy`]),
//! - acceptance by alternating safety-game solving plus independent oracles
//!   ([`semantics`]),
//! - recogniser/SFT conversions, block coding, SFT guards, the powerset cover and
//!   lift/flatten ([`constructions`]),
//! - the worked example automata and direct subshift deciders ([`gallery`]).
//!
//! Coordinates follow the usual convention: `x` grows to the right and `y` grows
//! upwards, so `↑` is `(0, 1)`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod alphabet;
pub mod automaton;
pub mod constructions;
mod error;
pub mod gallery;
pub mod generate;
pub mod geometry;
pub mod hierarchy;
pub mod pattern;
pub mod semantics;
pub mod sft;

pub use alphabet::{Alphabet, Sym};
pub use automaton::{
    validate_automaton, Automaton, AutomatonBuilder, AutomatonDef, Edge, EdgeDef, EdgeId, Effective, Quantifier, State,
    StateDef, StateId, Violation,
};
pub use error::Error;
pub use geometry::{Cell, Direction};
pub use hierarchy::{classify, HierarchyLevel};
pub use pattern::{Domain, FinitePattern, Torus};
pub use sft::SftSpec;
