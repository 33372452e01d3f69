//! Deterministic scan for forbidden patterns anchored at the start cell,
//! composed in front of another automaton.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::recogniser::shape_box;
use crate::alphabet::{Alphabet, Sym};
use crate::automaton::{Automaton, Edge, State, StateId};
use crate::geometry::{Cell, Direction};
use crate::sft::{SftSpec, WindowTest};
use crate::Error;

/// Largest window, in cells per side, the guard will scan.
pub const GUARD_MAX_EXTENT: i32 = 3;

/// A guard automaton and the states that hand control over, one per symbol.
#[derive(Clone, Debug)]
pub struct Guard {
    pub automaton: Automaton,
    pub handoff: Vec<StateId>,
}

/// Walks every cell used by an anchored forbidden window (rows bottom to top,
/// unit steps, horizontal first), remembering the symbols still needed. A
/// fully matched window sends it to a state without moves. Once no window can
/// match it retraces its path and ends in the handoff state of the start
/// symbol, which loops on `•`.
pub fn guard_automaton(f: &SftSpec, alphabet: &Alphabet) -> Result<Automaton, Error> {
    Ok(build_guard(f, alphabet, "guard")?.automaton)
}

/// The guard of `f` followed by `a`: each handoff state moves by `•` to the
/// initial state of `a` for the same symbol.
pub fn intersect_with_sft(a: &Automaton, f: &SftSpec) -> Result<Automaton, Error> {
    let mut prefix = String::from("guard");
    while a.states().iter().any(|s| s.id.starts_with(prefix.as_str())) {
        prefix.push('\'');
    }
    let g = build_guard(f, a.alphabet(), &prefix)?;
    let offset = g.automaton.states().len() as u32;
    let mut states: Vec<State> = g.automaton.states().to_vec();
    states.extend(a.states().iter().cloned());
    let mut edges: Vec<Edge> = g.automaton.edges().iter().copied().filter(|e| !g.handoff.contains(&e.from)).collect();
    for (s, &h) in g.handoff.iter().enumerate() {
        let target = StateId(a.initial(Sym(s as u16)).0 + offset);
        edges.push(Edge { from: h, to: target, dir: Direction::STAY });
    }
    edges.extend(a.edges().iter().map(|e| Edge {
        from: StateId(e.from.0 + offset),
        to: StateId(e.to.0 + offset),
        dir: e.dir,
    }));
    Ok(Automaton::from_parts(a.alphabet().clone(), states, edges, g.automaton.initial_states().to_vec()))
}

struct Plan<'f> {
    path: Vec<Cell>,
    /// Slot first read at each path position.
    slot_at: Vec<Option<usize>>,
    windows: Vec<(Vec<usize>, WindowTest<'f>)>,
    slots: usize,
}

fn plan(f: &SftSpec) -> Result<Plan<'_>, Error> {
    let raw = f.windows();
    for w in &raw {
        let (lo, hi) = shape_box(&w.shape);
        if hi.dx - lo.dx >= GUARD_MAX_EXTENT || hi.dy - lo.dy >= GUARD_MAX_EXTENT {
            return Err(Error::PatternTooLarge(format!(
                "window {:?} exceeds {GUARD_MAX_EXTENT}×{GUARD_MAX_EXTENT}",
                w.shape
            )));
        }
    }
    let mut cells: Vec<Cell> = vec![Cell::ORIGIN];
    for w in &raw {
        cells.extend(w.shape.iter().map(|&d| Cell::ORIGIN + d));
    }
    cells.sort_by_key(|c| c.row_major());
    cells.dedup();
    let slot_of = |c: Cell| cells.iter().position(|&u| u == c).expect("slot");

    let mut path = vec![Cell::ORIGIN];
    for &u in &cells {
        let here = *path.last().expect("nonempty");
        for step in (u - here).unit_path() {
            let next = *path.last().expect("nonempty") + step;
            path.push(next);
        }
    }
    let mut seen = vec![false; cells.len()];
    let slot_at = path
        .iter()
        .map(|&c| {
            // cells crossed on the way to a window cell hold no slot
            let s = cells.iter().position(|&u| u == c)?;
            (!core::mem::replace(&mut seen[s], true)).then_some(s)
        })
        .collect();
    let windows =
        raw.into_iter().map(|w| (w.shape.iter().map(|&d| slot_of(Cell::ORIGIN + d)).collect(), w.test)).collect();
    Ok(Plan { path, slot_at, windows, slots: cells.len() })
}

enum Status {
    Dead,
    Done,
    Continue,
}

/// Forward state: path position, which windows may still match, the symbols
/// those windows still need, and the symbol under the head.
type Key = (usize, Vec<bool>, Vec<Option<Sym>>, Sym);

struct Builder<'p, 'f> {
    plan: &'p Plan<'f>,
    alphabet: Alphabet,
    /// Guard symbol index → index in the SFT's alphabet.
    to_f: Vec<Sym>,
    prefix: &'p str,
    states: Vec<State>,
    edges: Vec<Edge>,
    forward: BTreeMap<Key, StateId>,
    back: BTreeMap<(usize, Sym), StateId>,
    dead: Vec<Option<StateId>>,
    queue: VecDeque<Key>,
}

impl Builder<'_, '_> {
    fn add(&mut self, id: String, symbol: Sym) -> StateId {
        self.states.push(State { id, symbol, quant: None });
        StateId(self.states.len() as u32 - 1)
    }

    fn status(&self, alive: &mut [bool], mem: &mut [Option<Sym>]) -> Status {
        for (k, (slots, test)) in self.plan.windows.iter().enumerate() {
            if !alive[k] {
                continue;
            }
            let read: Vec<Option<Sym>> = slots.iter().map(|&s| mem[s].map(|t| self.to_f[t.index()])).collect();
            if read.iter().all(Option::is_some) {
                let read: Vec<Sym> = read.into_iter().map(|s| s.expect("read")).collect();
                if test.matches(&read) {
                    return Status::Dead;
                }
                alive[k] = false;
            } else if let WindowTest::Pattern(p) = test {
                if read.iter().zip(p).any(|(r, &q)| r.is_some_and(|r| r != q)) {
                    alive[k] = false;
                }
            }
        }
        let mut needed = vec![false; self.plan.slots];
        for (k, (slots, _)) in self.plan.windows.iter().enumerate() {
            if alive[k] {
                for &s in slots {
                    needed[s] = true;
                }
            }
        }
        for (m, keep) in mem.iter_mut().zip(needed) {
            if !keep {
                *m = None;
            }
        }
        if alive.iter().any(|&b| b) {
            Status::Continue
        } else {
            Status::Done
        }
    }

    fn dead(&mut self, s: Sym) -> StateId {
        if let Some(v) = self.dead[s.index()] {
            return v;
        }
        let id = format!("{}/dead/{}", self.prefix, s.0);
        let v = self.add(id, s);
        self.dead[s.index()] = Some(v);
        v
    }

    /// Retracing state at path position `j` over symbol `s`; position 0 is
    /// the handoff state.
    fn back(&mut self, j: usize, s: Sym) -> StateId {
        if let Some(&v) = self.back.get(&(j, s)) {
            return v;
        }
        let id = if j == 0 { format!("{}/h/{}", self.prefix, s.0) } else { format!("{}/r{}/{}", self.prefix, j, s.0) };
        let v = self.add(id, s);
        self.back.insert((j, s), v);
        if j == 0 {
            self.edges.push(Edge { from: v, to: v, dir: Direction::STAY });
        } else {
            let dir = self.plan.path[j - 1] - self.plan.path[j];
            for t in 0..self.alphabet.len() {
                let w = self.back(j - 1, Sym(t as u16));
                self.edges.push(Edge { from: v, to: w, dir });
            }
        }
        v
    }

    /// The state entered after reading `s` at path position `k`.
    fn enter(&mut self, k: usize, mut alive: Vec<bool>, mut mem: Vec<Option<Sym>>, s: Sym) -> StateId {
        if let Some(slot) = self.plan.slot_at[k] {
            mem[slot] = Some(s);
        }
        match self.status(&mut alive, &mut mem) {
            Status::Dead => self.dead(s),
            Status::Continue if k + 1 < self.plan.path.len() => {
                let key: Key = (k, alive, mem, s);
                if let Some(&v) = self.forward.get(&key) {
                    return v;
                }
                let id = format!("{}/f{}/{}/{}", self.prefix, k, memory_tag(&key.2), s.0);
                let v = self.add(id, s);
                self.forward.insert(key.clone(), v);
                self.queue.push_back(key);
                v
            }
            _ => self.back(k, s),
        }
    }
}

fn memory_tag(mem: &[Option<Sym>]) -> String {
    let mut out = String::new();
    for (i, m) in mem.iter().enumerate() {
        if i > 0 {
            out.push('.');
        }
        match m {
            Some(s) => out.push_str(&format!("{}", s.0)),
            None => out.push('_'),
        }
    }
    out
}

pub(crate) fn build_guard(f: &SftSpec, alphabet: &Alphabet, prefix: &str) -> Result<Guard, Error> {
    if !f.alphabet().same_set(alphabet) {
        return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", f.alphabet(), alphabet)));
    }
    let to_f = alphabet.translation_to(f.alphabet()).unwrap_or_else(|| alphabet.iter().collect());
    let plan = plan(f)?;
    let mut b = Builder {
        plan: &plan,
        alphabet: alphabet.clone(),
        to_f,
        prefix,
        states: Vec::new(),
        edges: Vec::new(),
        forward: BTreeMap::new(),
        back: BTreeMap::new(),
        dead: vec![None; alphabet.len()],
        queue: VecDeque::new(),
    };
    let n = plan.windows.len();
    let initial: Vec<StateId> = alphabet.iter().map(|s| b.enter(0, vec![true; n], vec![None; plan.slots], s)).collect();
    while let Some(key) = b.queue.pop_front() {
        let v = b.forward[&key];
        let (k, alive, mem, _) = key;
        let dir = plan.path[k + 1] - plan.path[k];
        for t in 0..alphabet.len() {
            let w = b.enter(k + 1, alive.clone(), mem.clone(), Sym(t as u16));
            b.edges.push(Edge { from: v, to: w, dir });
        }
    }
    let handoff = alphabet.iter().map(|s| b.back(0, s)).collect();
    let automaton = Automaton::from_parts(alphabet.clone(), b.states, b.edges, initial);
    Ok(Guard { automaton, handoff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::AutomatonBuilder;
    use crate::pattern::{FinitePattern, Torus};
    use crate::semantics::accepts_torus;

    fn bin() -> Alphabet {
        Alphabet::new(["0", "1"]).unwrap()
    }

    fn forbid_11() -> SftSpec {
        let p = FinitePattern::rectangle(bin(), &[vec![Sym(1), Sym(1)]]).unwrap();
        SftSpec::explicit(bin(), vec![p]).unwrap()
    }

    #[test]
    fn guard_states_are_deterministic() {
        let g = guard_automaton(&forbid_11(), &bin()).unwrap();
        assert!(g.state_ids().all(|v| g.is_syntactically_deterministic(v)));
        assert!(g.quantifier_violations().is_empty());
    }

    #[test]
    fn empty_sft_hands_off_immediately() {
        let g = build_guard(&SftSpec::full(bin()), &bin(), "guard").unwrap();
        assert_eq!(g.automaton.initial_states(), g.handoff.as_slice());
    }

    #[test]
    fn guard_alone_decides_the_sft() {
        let g = guard_automaton(&forbid_11(), &bin()).unwrap();
        let row = |r: &[u16]| Torus::from_rows(bin(), &[r.iter().map(|&s| Sym(s)).collect()]).unwrap();
        assert!(accepts_torus(&g, &row(&[1, 0, 1, 0])).unwrap());
        assert!(!accepts_torus(&g, &row(&[1, 0, 1])).unwrap());
        assert!(!accepts_torus(&g, &row(&[0, 1, 1])).unwrap());
    }

    #[test]
    fn oversized_window_is_refused() {
        let p = FinitePattern::rectangle(bin(), &[vec![Sym(1); 4]]).unwrap();
        let f = SftSpec::explicit(bin(), vec![p]).unwrap();
        assert!(matches!(guard_automaton(&f, &bin()), Err(Error::PatternTooLarge(_))));
    }

    #[test]
    fn composition_redirects_handoff() {
        let a = AutomatonBuilder::new(["0", "1"])
            .state("z", "0", None)
            .state("o", "1", None)
            .initial("0", "z")
            .initial("1", "o")
            .edge("z", "z", 0, 0)
            .edge("o", "o", 0, 0)
            .build()
            .unwrap();
        let c = intersect_with_sft(&a, &forbid_11()).unwrap();
        let h = c.state_by_id("guard/h/1").unwrap();
        let out: Vec<_> = c.out_edges(h).iter().map(|&e| c.edge(e)).collect();
        assert_eq!(out.len(), 1);
        assert_eq!(c.state(out[0].to).id, "o");
        assert_eq!(out[0].dir, Direction::STAY);
    }
}
