//! Acceptance of automata on periodic configurations and finite patterns.
//!
//! [`build_arena`] forms the product of an automaton with a domain and
//! [`solve`] computes its winning region. The remaining functions are
//! independent deciders used to cross-check the solver, recognising-run
//! search, and branch manipulation.

mod arena;
mod branch;
mod oracle;
mod recognise;
mod solve;

pub use arena::{build_arena, Arena, Move, NodeId, NodeKind};
pub use branch::{
    extract_branch, find_pumping_pairs, footprint, pump_branch, replay, Branch, Lasso, Mismatch, PumpingPair, Step,
};
pub use oracle::{brute_force_accepts, exists_only_oracle, forall_only_oracle, ORACLE_ARENA_LIMIT};
pub use recognise::{recognising_run_exists, recognising_run_on_torus, recognising_run_transfer, RecognisingRun};
pub use solve::{fixpoint_violation, solve, strategy_violation, WinningSet};

use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Sym};
use crate::automaton::Automaton;
use crate::geometry::Cell;
use crate::pattern::{Domain, FinitePattern, Torus};
use crate::Error;

/// True iff every start `(c, i_{x_c})` of the domain has an accepting run.
pub fn accepts<'a>(a: &Automaton, x: impl Into<Domain<'a>>) -> Result<bool, Error> {
    let ar = build_arena(a, x)?;
    let w = solve(&ar);
    Ok(ar.accepted(&w))
}

pub fn accepts_torus(a: &Automaton, t: &Torus) -> Result<bool, Error> {
    accepts(a, t)
}

pub fn accepts_pattern(a: &Automaton, p: &FinitePattern) -> Result<bool, Error> {
    accepts(a, p)
}

/// A domain re-expressed over the automaton's alphabet, with cells indexed
/// densely.
#[derive(Clone, Debug)]
pub(crate) enum Space {
    Torus(Torus),
    /// Support cells in increasing `(x, y)` order.
    Pattern {
        cells: Vec<Cell>,
        syms: Vec<Sym>,
    },
}

impl Space {
    pub(crate) fn new(alphabet: &Alphabet, x: Domain<'_>) -> Result<Space, Error> {
        Ok(match x {
            Domain::Torus(t) => Space::Torus(t.with_alphabet(alphabet)?),
            Domain::Pattern(p) => {
                let p = p.with_alphabet(alphabet)?;
                let (cells, syms) = p.iter().unzip();
                Space::Pattern { cells, syms }
            }
        })
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            Space::Torus(t) => t.cell_count(),
            Space::Pattern { cells, .. } => cells.len(),
        }
    }

    pub(crate) fn cell(&self, i: usize) -> Cell {
        match self {
            Space::Torus(t) => t.cell_at(i),
            Space::Pattern { cells, .. } => cells[i],
        }
    }

    pub(crate) fn sym(&self, i: usize) -> Sym {
        match self {
            Space::Torus(t) => t.grid()[i],
            Space::Pattern { syms, .. } => syms[i],
        }
    }

    /// Index of the cell holding `c`; `None` off the support of a pattern.
    pub(crate) fn locate(&self, c: Cell) -> Option<usize> {
        match self {
            Space::Torus(t) => Some(t.index_of(c)),
            Space::Pattern { cells, .. } => cells.binary_search(&c).ok(),
        }
    }

    pub(crate) fn is_torus(&self) -> bool {
        matches!(self, Space::Torus(_))
    }
}
