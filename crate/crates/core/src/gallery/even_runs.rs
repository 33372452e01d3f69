use crate::automaton::{Automaton, AutomatonBuilder, Quantifier};
use crate::pattern::Torus;
use crate::Error;

/// Horizontal and vertical runs of 1s have even length or are infinite.
///
/// From a 0 the universal state `g` looks right and up; a 1 there starts a
/// run that must close after an even number of cells.
pub fn even_runs_automaton() -> Automaton {
    AutomatonBuilder::new(["0", "1"])
        .state("a", "1", None)
        .state("g", "0", Some(Quantifier::Forall))
        .state("b", "1", None)
        .state("c", "1", None)
        .state("d", "0", None)
        .state("e", "1", None)
        .state("f", "1", None)
        .initial("1", "a")
        .initial("0", "g")
        .edge("g", "b", 1, 0)
        .edge("g", "f", 0, 1)
        .edge("g", "d", 0, 1)
        .edge("g", "d", 1, 0)
        .edge("b", "c", 1, 0)
        .edge("c", "b", 1, 0)
        .edge("c", "d", 1, 0)
        .edge("f", "e", 0, 1)
        .edge("e", "f", 0, 1)
        .edge("e", "d", 0, 1)
        .edge("a", "a", 0, 0)
        .edge("d", "d", 0, 0)
        .build()
        .expect("static automaton")
}

/// Every row and column, read cyclically, is all 1s or has only even
/// maximal runs of 1s.
pub fn in_even_runs(t: &Torus) -> Result<bool, Error> {
    let t = t.with_alphabet(&super::binary())?;
    let (p, q) = (t.width() as usize, t.height() as usize);
    let g = t.grid();
    let rows = (0..q).map(|y| (0..p).map(|x| g[y * p + x].0).collect::<alloc::vec::Vec<_>>());
    let cols = (0..p).map(|x| (0..q).map(|y| g[y * p + x].0).collect::<alloc::vec::Vec<_>>());
    Ok(rows.chain(cols).all(|line| cyclic_runs_even(&line)))
}

fn cyclic_runs_even(line: &[u16]) -> bool {
    let Some(zero) = line.iter().position(|&s| s == 0) else { return true };
    let n = line.len();
    let mut run = 0usize;
    for k in 1..=n {
        if line[(zero + k) % n] == 1 {
            run += 1;
        } else {
            if run % 2 == 1 {
                return false;
            }
            run = 0;
        }
    }
    true
}
