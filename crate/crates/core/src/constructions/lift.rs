//! Vertically constant configurations and automata that ignore vertical moves.

use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Sym};
use crate::automaton::{Automaton, Edge};
use crate::geometry::Direction;
use crate::pattern::Torus;
use crate::Error;

/// Torus of width `|w|` and height `q` whose column `i` is constant `w[i]`.
pub fn lift_word(alphabet: &Alphabet, w: &[Sym], q: u32) -> Result<Torus, Error> {
    let p = w.len() as u32;
    let grid: Vec<Sym> = (0..q).flat_map(|_| w.iter().copied()).collect();
    Torus::new(alphabet.clone(), p, q, grid)
}

/// Every edge `(dx, dy)` becomes `(dx, 0)`.
pub fn flatten_automaton(a: &Automaton) -> Automaton {
    let edges = a.edges().iter().map(|e| Edge { dir: Direction::new(e.dir.dx, 0), ..*e }).collect();
    Automaton::from_parts(a.alphabet().clone(), a.states().to_vec(), edges, a.initial_states().to_vec())
}
