use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Sym};
use crate::automaton::{Automaton, AutomatonBuilder, Quantifier};
use crate::constructions::intersect_with_sft;
use crate::geometry::{Cell, Direction};
use crate::pattern::{Domain, FinitePattern, Torus};
use crate::sft::SftSpec;
use crate::Error;

const ZERO: Sym = Sym(0);
const ONE: Sym = Sym(1);
const WALL: Sym = Sym(2);

pub fn cone_labyrinth_alphabet() -> Alphabet {
    Alphabet::new(["0", "1", "#"]).expect("static alphabet")
}

/// The walker without the local rules. From an entrance `1` right of a wall,
/// the existential state `c` walks right through 0s, drifting at most one row
/// per column, until it meets a `1`.
pub fn cone_labyrinth_core() -> Automaton {
    AutomatonBuilder::new(["0", "1", "#"])
        .state("i0", "0", None)
        .state("i1", "1", None)
        .state("a", "#", None)
        .state("dH", "#", None)
        .state("d0", "0", None)
        .state("b", "1", None)
        .state("c", "0", Some(Quantifier::Exists))
        .state("f", "0", None)
        .state("e", "1", None)
        .state("g", "#", None)
        .initial("0", "i0")
        .initial("1", "i1")
        .initial("#", "a")
        .edge("i0", "i0", 0, 0)
        .edge("i1", "i1", 0, 0)
        .edge("a", "b", 1, 0)
        .edge("a", "dH", 1, 0)
        .edge("a", "d0", 1, 0)
        .edge("dH", "dH", 0, 0)
        .edge("d0", "d0", 0, 0)
        .edge("b", "c", 1, 0)
        .edge("c", "f", 0, 1)
        .edge("c", "f", 0, 0)
        .edge("c", "f", 0, -1)
        .edge("c", "e", 0, 1)
        .edge("c", "e", 0, -1)
        .edge("f", "c", 1, 0)
        .edge("f", "e", 1, 0)
        .edge("f", "g", 1, 0)
        .edge("e", "e", 0, 0)
        .build()
        .expect("static automaton")
}

/// Horizontal `010`, `11`, `#1#`, and every vertical domino mixing `#` with
/// a non-wall symbol.
pub fn cone_labyrinth_forbidden() -> SftSpec {
    let al = cone_labyrinth_alphabet();
    let row = |w: &[Sym]| FinitePattern::rectangle(al.clone(), &[w.to_vec()]).expect("static pattern");
    let col = |bottom: Sym, top: Sym| {
        FinitePattern::rectangle(al.clone(), &[vec![bottom], vec![top]]).expect("static pattern")
    };
    let pats = vec![
        row(&[ZERO, ONE, ZERO]),
        row(&[ONE, ONE]),
        row(&[WALL, ONE, WALL]),
        col(WALL, ZERO),
        col(ZERO, WALL),
        col(WALL, ONE),
        col(ONE, WALL),
    ];
    SftSpec::explicit(al, pats).expect("static sft")
}

/// The walker intersected with the local rules.
pub fn cone_labyrinth_automaton() -> Automaton {
    intersect_with_sft(&cone_labyrinth_core(), &cone_labyrinth_forbidden()).expect("static composition")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    ForbiddenPattern,
    /// An entrance whose cone reaches no exit.
    UnmatchedEntrance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabyrinthVerdict {
    pub in_subshift: bool,
    pub violations: Vec<(ViolationKind, Cell)>,
    /// Entrances on a finite pattern whose cone leaves the support before
    /// deciding anything.
    pub escaped: Vec<Cell>,
}

/// Direct membership test: the local rules hold, and from every entrance a
/// path through 0s, one column right and at most one row up or down per
/// step, reaches a `1` followed by a wall.
pub fn in_cone_labyrinth<'a>(x: impl Into<Domain<'a>>) -> Result<LabyrinthVerdict, Error> {
    let al = cone_labyrinth_alphabet();
    let f = cone_labyrinth_forbidden();
    let (grid, occurrences) = match x.into() {
        Domain::Torus(t) => {
            let t = t.with_alphabet(&al)?;
            let occ = f.torus_occurrences(&t)?;
            (Grid::Torus(t), occ)
        }
        Domain::Pattern(p) => {
            let p = p.with_alphabet(&al)?;
            let occ = f.pattern_occurrences(&p)?;
            (Grid::Pattern(p), occ)
        }
    };
    let mut violations: Vec<(ViolationKind, Cell)> =
        occurrences.into_iter().map(|(_, c)| (ViolationKind::ForbiddenPattern, c)).collect();
    let mut escaped = Vec::new();
    for c in grid.cells() {
        if grid.get(c) != Some(ONE) || grid.get(c + Direction::LEFT) != Some(WALL) {
            continue;
        }
        match grid.cone_search(c) {
            Cone::Exit => {}
            Cone::Escaped => escaped.push(c),
            Cone::Blocked => violations.push((ViolationKind::UnmatchedEntrance, c)),
        }
    }
    violations.sort();
    violations.dedup();
    Ok(LabyrinthVerdict { in_subshift: violations.is_empty(), violations, escaped })
}

enum Grid {
    Torus(Torus),
    Pattern(FinitePattern),
}

enum Cone {
    Exit,
    Escaped,
    Blocked,
}

impl Grid {
    fn cells(&self) -> Vec<Cell> {
        match self {
            Grid::Torus(t) => t.cells().collect(),
            Grid::Pattern(p) => p.support().collect(),
        }
    }

    fn get(&self, c: Cell) -> Option<Sym> {
        match self {
            Grid::Torus(t) => Some(t.get(c)),
            Grid::Pattern(p) => p.get(c),
        }
    }

    fn canon(&self, c: Cell) -> Cell {
        match self {
            Grid::Torus(t) => t.wrap(c),
            Grid::Pattern(_) => c,
        }
    }

    fn cone_search(&self, entrance: Cell) -> Cone {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([entrance]);
        let mut escaped = false;
        while let Some(z) = queue.pop_front() {
            for dy in [1, 0, -1] {
                let w = z + Direction::new(1, dy);
                match self.get(w) {
                    None => escaped = true,
                    Some(ONE) if self.get(w + Direction::RIGHT) == Some(WALL) => return Cone::Exit,
                    Some(ZERO) if seen.insert(self.canon(w)) => queue.push_back(w),
                    _ => {}
                }
            }
        }
        if escaped {
            Cone::Escaped
        } else {
            Cone::Blocked
        }
    }
}

/// The blocked labyrinth: a wall column, then `n + 1` zero columns with a
/// single entrance at the origin, then a wall column, on rows `-n-1..=n+1`.
pub fn labyrinth_xn(n: u32) -> FinitePattern {
    let n = n as i32;
    let mut cells = BTreeMap::new();
    for y in -n - 1..=n + 1 {
        for x in -1..=n + 1 {
            let s = if x == 0 && y == 0 {
                ONE
            } else if (0..=n).contains(&x) {
                ZERO
            } else {
                WALL
            };
            cells.insert(Cell::new(x, y), s);
        }
    }
    FinitePattern::new(cone_labyrinth_alphabet(), cells).expect("static pattern")
}

/// Periodic version of [`labyrinth_xn`]: width `n + 2` with the wall at
/// `x = 0` and the entrance at `(1, 0)`.
pub fn labyrinth_xn_torus(n: u32, height: u32) -> Result<Torus, Error> {
    let w = n + 2;
    let grid = (0..height)
        .flat_map(|y| {
            (0..w).map(move |x| {
                if x == 0 {
                    WALL
                } else if x == 1 && y == 0 {
                    ONE
                } else {
                    ZERO
                }
            })
        })
        .collect();
    Torus::new(cone_labyrinth_alphabet(), w, height, grid)
}

/// A torus built to lie in the subshift. `pick(k)` must return a value in
/// `0..k`; it drives every random choice.
///
/// One or two corridors, each between walls and at least two columns wide.
/// Entrances sit in the first corridor column, and each gets an exit in the
/// last column within its cone.
pub fn planted_labyrinth(mut pick: impl FnMut(u32) -> u32) -> Torus {
    let height = 1 + pick(5);
    let corridors = 1 + pick(2);
    let widths: Vec<u32> = (0..corridors).map(|_| 2 + pick(3)).collect();
    let total: u32 = widths.iter().map(|w| w + 1).sum();
    let h = height as usize;
    let mut grid = vec![ZERO; total as usize * h];
    let set = |x: u32, y: usize, s: Sym, grid: &mut Vec<Sym>| grid[y * total as usize + x as usize] = s;
    let mut x0 = 0;
    for &w in &widths {
        for y in 0..h {
            set(x0, y, WALL, &mut grid);
        }
        let first = x0 + 1;
        let last = x0 + w;
        let entrances: Vec<usize> = (0..h).filter(|_| pick(3) == 0).collect();
        let mut exits = BTreeSet::new();
        let mut kept = Vec::new();
        for &y in &entrances {
            let reach = (w - 1) as i64;
            let candidates: Vec<usize> = (-reach..=reach)
                .map(|d| (y as i64 + d).rem_euclid(h as i64) as usize)
                .filter(|r| w > 2 || !entrances.contains(r))
                .collect();
            if candidates.is_empty() {
                continue;
            }
            kept.push(y);
            exits.insert(candidates[pick(candidates.len() as u32) as usize]);
        }
        for y in 0..h {
            if pick(4) == 0 && (w > 2 || !entrances.contains(&y)) {
                exits.insert(y);
            }
        }
        for y in kept {
            set(first, y, ONE, &mut grid);
        }
        for y in exits {
            set(last, y, ONE, &mut grid);
        }
        x0 += w + 1;
    }
    Torus::new(cone_labyrinth_alphabet(), total, height, grid).expect("planted torus")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::lcg;
    use crate::semantics::accepts;

    #[test]
    fn core_shape() {
        let a = cone_labyrinth_core();
        assert_eq!(a.states().len(), 10);
        assert_eq!(a.edges().len(), 17);
        assert!(a.quantifier_violations().is_empty());
    }

    #[test]
    fn xn_pattern_is_outside() {
        let v = in_cone_labyrinth(&labyrinth_xn(0)).unwrap();
        assert_eq!(v.violations[0], (ViolationKind::ForbiddenPattern, Cell::new(-1, 0)));
        for n in 1..4 {
            let v = in_cone_labyrinth(&labyrinth_xn(n)).unwrap();
            assert!(!v.in_subshift, "n = {n}");
            assert_eq!(v.violations, vec![(ViolationKind::UnmatchedEntrance, Cell::ORIGIN)]);
        }
    }

    #[test]
    fn xn_torus_is_outside() {
        for n in 1..4 {
            let t = labyrinth_xn_torus(n, 3).unwrap();
            let v = in_cone_labyrinth(&t).unwrap();
            assert_eq!(v.violations, vec![(ViolationKind::UnmatchedEntrance, Cell::new(1, 0))]);
        }
    }

    #[test]
    fn planted_tori_are_inside() {
        for seed in 0..200 {
            let t = planted_labyrinth(lcg(seed));
            let v = in_cone_labyrinth(&t).unwrap();
            assert!(v.in_subshift, "seed {seed}: {:?}", v.violations);
        }
    }

    #[test]
    fn automaton_agrees_on_planted_and_blocked() {
        let a = cone_labyrinth_automaton();
        for seed in 0..40 {
            let t = planted_labyrinth(lcg(seed));
            assert!(accepts(&a, &t).unwrap(), "seed {seed}");
        }
        for n in 1..3 {
            assert!(!accepts(&a, &labyrinth_xn_torus(n, 3).unwrap()).unwrap());
        }
    }

    #[test]
    fn forbidden_domino_reported() {
        let al = cone_labyrinth_alphabet();
        let t = Torus::from_rows(al, &[vec![ONE, ONE, WALL]]).unwrap();
        let v = in_cone_labyrinth(&t).unwrap();
        assert!(v.violations.iter().any(|(k, _)| *k == ViolationKind::ForbiddenPattern));
    }

    #[test]
    fn open_cone_escapes() {
        let al = cone_labyrinth_alphabet();
        let p = FinitePattern::rectangle(al, &[vec![WALL, ONE, ZERO]]).unwrap();
        let v = in_cone_labyrinth(&p).unwrap();
        assert!(v.in_subshift);
        assert_eq!(v.escaped, vec![Cell::new(1, 0)]);
    }
}
