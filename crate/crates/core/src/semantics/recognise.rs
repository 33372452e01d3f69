//! Recognising runs: state annotations whose `→` and `↑` neighbours are
//! joined by edges.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::Sym;
use crate::automaton::{Automaton, StateId};
use crate::geometry::{Cell, Direction};
use crate::pattern::{FinitePattern, Torus};
use crate::Error;

pub type RecognisingRun = BTreeMap<Cell, StateId>;

struct Adjacency {
    n: usize,
    right: Vec<bool>,
    up: Vec<bool>,
    by_sym: Vec<Vec<StateId>>,
}

impl Adjacency {
    fn new(a: &Automaton) -> Result<Adjacency, Error> {
        a.check_recognising_mode()?;
        let n = a.states().len();
        let mut right = vec![false; n * n];
        let mut up = vec![false; n * n];
        for e in a.edges() {
            let m = if e.dir == Direction::RIGHT { &mut right } else { &mut up };
            m[e.from.index() * n + e.to.index()] = true;
        }
        let mut by_sym = vec![Vec::new(); a.alphabet().len()];
        for v in a.state_ids() {
            by_sym[a.symbol(v).index()].push(v);
        }
        Ok(Adjacency { n, right, up, by_sym })
    }

    fn right(&self, v: StateId, w: StateId) -> bool {
        self.right[v.index() * self.n + w.index()]
    }

    fn up(&self, v: StateId, w: StateId) -> bool {
        self.up[v.index() * self.n + w.index()]
    }
}

/// Arc consistency over the four neighbours followed by backtracking in
/// row-major order.
pub fn recognising_run_exists(a: &Automaton, p: &FinitePattern) -> Result<Option<RecognisingRun>, Error> {
    let adj = Adjacency::new(a)?;
    let p = p.with_alphabet(a.alphabet())?;
    let mut cells: Vec<Cell> = p.support().collect();
    cells.sort_by_key(|c| c.row_major());
    let index: BTreeMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let at = |c: Cell| index.get(&c).copied();
    let left: Vec<Option<usize>> = cells.iter().map(|&c| at(c + Direction::LEFT)).collect();
    let below: Vec<Option<usize>> = cells.iter().map(|&c| at(c + Direction::DOWN)).collect();
    let right: Vec<Option<usize>> = cells.iter().map(|&c| at(c + Direction::RIGHT)).collect();
    let above: Vec<Option<usize>> = cells.iter().map(|&c| at(c + Direction::UP)).collect();

    let mut dom: Vec<Vec<StateId>> =
        cells.iter().map(|&c| adj.by_sym[p.get(c).expect("support").index()].clone()).collect();
    loop {
        let mut changed = false;
        for i in 0..cells.len() {
            let before = dom[i].len();
            let keep: Vec<StateId> = dom[i]
                .iter()
                .copied()
                .filter(|&v| {
                    left[i].is_none_or(|j| dom[j].iter().any(|&w| adj.right(w, v)))
                        && right[i].is_none_or(|j| dom[j].iter().any(|&w| adj.right(v, w)))
                        && below[i].is_none_or(|j| dom[j].iter().any(|&w| adj.up(w, v)))
                        && above[i].is_none_or(|j| dom[j].iter().any(|&w| adj.up(v, w)))
                })
                .collect();
            if keep.len() != before {
                changed = true;
                dom[i] = keep;
            }
        }
        if dom.iter().any(Vec::is_empty) {
            return Ok(None);
        }
        if !changed {
            break;
        }
    }

    let mut run: Vec<StateId> = Vec::with_capacity(cells.len());
    let mut choice = vec![0usize; cells.len()];
    let mut i = 0usize;
    loop {
        if i == cells.len() {
            return Ok(Some(cells.iter().copied().zip(run).collect()));
        }
        let mut placed = false;
        while choice[i] < dom[i].len() {
            let v = dom[i][choice[i]];
            choice[i] += 1;
            if left[i].is_none_or(|j| adj.right(run[j], v)) && below[i].is_none_or(|j| adj.up(run[j], v)) {
                run.push(v);
                placed = true;
                break;
            }
        }
        if placed {
            i += 1;
        } else {
            choice[i] = 0;
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            run.pop();
        }
    }
}

/// Row-by-row search for rectangular supports: keeps every distinct row
/// annotation compatible with some annotation of the rows below.
pub fn recognising_run_transfer(a: &Automaton, p: &FinitePattern) -> Result<Option<RecognisingRun>, Error> {
    let adj = Adjacency::new(a)?;
    let p = p.with_alphabet(a.alphabet())?;
    if !p.is_rectangular() {
        return Err(Error::InvalidPattern("transfer search needs a rectangular support".into()));
    }
    let (lo, hi) = p.bounding_box();
    let w = (hi.x - lo.x + 1) as usize;
    let row_syms =
        |y: i32| -> Vec<Sym> { (0..w).map(|x| p.get(Cell::new(lo.x + x as i32, y)).expect("rectangle")).collect() };

    // layers[k] = (row annotation, index of a compatible row in layers[k-1])
    let mut layers: Vec<Vec<(Vec<StateId>, usize)>> = Vec::new();
    for y in lo.y..=hi.y {
        let syms = row_syms(y);
        let rows = horizontal_rows(&adj, &syms);
        let mut layer = Vec::new();
        for r in rows {
            match layers.last() {
                None => layer.push((r, 0)),
                Some(prev) => {
                    if let Some(k) = prev.iter().position(|(q, _)| q.iter().zip(&r).all(|(&s, &t)| adj.up(s, t))) {
                        layer.push((r, k));
                    }
                }
            }
        }
        if layer.is_empty() {
            return Ok(None);
        }
        layers.push(layer);
    }
    let mut run = RecognisingRun::new();
    let mut k = 0usize;
    for (dy, layer) in layers.iter().enumerate().rev() {
        let (row, parent) = &layer[k];
        for (x, &v) in row.iter().enumerate() {
            run.insert(Cell::new(lo.x + x as i32, lo.y + dy as i32), v);
        }
        k = *parent;
    }
    Ok(Some(run))
}

/// All annotations of one row that respect `→` edges.
fn horizontal_rows(adj: &Adjacency, syms: &[Sym]) -> Vec<Vec<StateId>> {
    let mut out = Vec::new();
    let mut cur: Vec<StateId> = Vec::new();
    fn go(adj: &Adjacency, syms: &[Sym], cur: &mut Vec<StateId>, out: &mut Vec<Vec<StateId>>) {
        if cur.len() == syms.len() {
            out.push(cur.clone());
            return;
        }
        for &v in &adj.by_sym[syms[cur.len()].index()] {
            if cur.last().is_none_or(|&u| adj.right(u, v)) {
                cur.push(v);
                go(adj, syms, cur, out);
                cur.pop();
            }
        }
    }
    go(adj, syms, &mut cur, &mut out);
    out
}

/// A run with the same periods as `t`, as a grid in `t`'s cell order.
/// Finding none does not prove that the configuration has no run.
pub fn recognising_run_on_torus(a: &Automaton, t: &Torus) -> Result<Option<Vec<StateId>>, Error> {
    let adj = Adjacency::new(a)?;
    let t = t.with_alphabet(a.alphabet())?;
    let n = t.cell_count();
    let idx = |i: usize, d: Direction| t.index_of(t.cell_at(i) + d);
    let nb: Vec<[usize; 4]> = (0..n)
        .map(|i| [idx(i, Direction::LEFT), idx(i, Direction::RIGHT), idx(i, Direction::DOWN), idx(i, Direction::UP)])
        .collect();
    let cands: Vec<&[StateId]> = (0..n).map(|i| adj.by_sym[t.grid()[i].index()].as_slice()).collect();

    let mut run: Vec<Option<StateId>> = vec![None; n];
    let mut choice = vec![0usize; n];
    let mut i = 0usize;
    let fits = |run: &[Option<StateId>], i: usize, v: StateId| {
        let [l, r, d, u] = nb[i];
        let get = |j: usize| if j == i { Some(v) } else { run[j] };
        get(l).is_none_or(|w| adj.right(w, v))
            && get(r).is_none_or(|w| adj.right(v, w))
            && get(d).is_none_or(|w| adj.up(w, v))
            && get(u).is_none_or(|w| adj.up(v, w))
    };
    loop {
        if i == n {
            return Ok(Some(run.into_iter().map(|v| v.expect("assigned")).collect()));
        }
        let mut placed = false;
        while choice[i] < cands[i].len() {
            let v = cands[i][choice[i]];
            choice[i] += 1;
            if fits(&run, i, v) {
                run[i] = Some(v);
                placed = true;
                break;
            }
        }
        if placed {
            i += 1;
        } else {
            choice[i] = 0;
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            run[i] = None;
        }
    }
}
