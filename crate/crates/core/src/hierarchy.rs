//! Quantifier-alternation levels Δₙ, Σₙ, Πₙ.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::automaton::{Automaton, Effective, StateId};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HierarchyLevel {
    Delta(u32),
    Sigma(u32),
    Pi(u32),
    AltUnbounded,
}

impl HierarchyLevel {
    /// Position on the chain `Δ1 < Σ1,Π1 < Δ2 < Σ2,Π2 < … < unbounded`.
    fn rank(self) -> (u64, u8) {
        match self {
            HierarchyLevel::Delta(n) => (2 * n as u64, 0),
            HierarchyLevel::Sigma(n) => (2 * n as u64 + 1, 1),
            HierarchyLevel::Pi(n) => (2 * n as u64 + 1, 2),
            HierarchyLevel::AltUnbounded => (u64::MAX, 0),
        }
    }

    /// `self ≤ other` in the inclusion order of the hierarchy.
    pub fn le(self, other: HierarchyLevel) -> bool {
        self.partial_cmp(&other).is_some_and(|o| o != Ordering::Greater)
    }
}

impl PartialOrd for HierarchyLevel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let (a, ka) = self.rank();
        let (b, kb) = other.rank();
        if a == b && ka != kb {
            // Σₙ and Πₙ are incomparable
            return None;
        }
        Some(a.cmp(&b))
    }
}

impl fmt::Display for HierarchyLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HierarchyLevel::Delta(n) => write!(f, "Delta({n})"),
            HierarchyLevel::Sigma(n) => write!(f, "Sigma({n})"),
            HierarchyLevel::Pi(n) => write!(f, "Pi({n})"),
            HierarchyLevel::AltUnbounded => write!(f, "AltUnbounded"),
        }
    }
}

/// Block-word bookkeeping: `(first, last, blocks)` for paths ending somewhere.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Letter {
    E,
    A,
}

fn letter(q: Effective) -> Option<Letter> {
    match q {
        Effective::Exists => Some(Letter::E),
        Effective::Forall => Some(Letter::A),
        Effective::Wildcard => None,
    }
}

/// Minimal level whose block pattern covers every quantifier word read along
/// paths from the initial states. Deterministic states match any block; a
/// cycle mixing `∃` and `∀` makes the level unbounded.
pub fn classify(a: &Automaton) -> Result<HierarchyLevel, Error> {
    let eff = a.effective_quantifiers()?;
    let reach = a.reachable();
    let n = a.states().len();
    let sccs = tarjan(a, &reach);

    let mut comp_of = vec![usize::MAX; n];
    for (ci, comp) in sccs.iter().enumerate() {
        for &v in comp {
            comp_of[v.index()] = ci;
        }
    }

    // Component type: the single non-wildcard letter, if any.
    let mut comp_letter: Vec<Option<Letter>> = vec![None; sccs.len()];
    for (ci, comp) in sccs.iter().enumerate() {
        let cyclic = comp.len() > 1 || a.out_edges(comp[0]).iter().any(|&e| a.edge(e).to == comp[0]);
        let mut has_e = false;
        let mut has_a = false;
        for &v in comp {
            match letter(eff[v.index()]) {
                Some(Letter::E) => has_e = true,
                Some(Letter::A) => has_a = true,
                None => {}
            }
        }
        if has_e && has_a {
            debug_assert!(cyclic);
            return Ok(HierarchyLevel::AltUnbounded);
        }
        comp_letter[ci] = if has_e {
            Some(Letter::E)
        } else if has_a {
            Some(Letter::A)
        } else {
            None
        };
    }

    // Tarjan emits components in reverse topological order, so walk backwards.
    // best[c][first][last] = max number of blocks over paths from an initial
    // state ending in component c; index 2 stands for "no letter yet".
    const NONE: usize = 2;
    let idx = |l: Option<Letter>| match l {
        Some(Letter::E) => 0,
        Some(Letter::A) => 1,
        None => NONE,
    };
    let mut best = vec![[[None::<u32>; 3]; 3]; sccs.len()];
    let entry = |best: &mut Vec<[[Option<u32>; 3]; 3]>, c: usize, f: usize, l: usize, b: u32| {
        let slot = &mut best[c][f][l];
        if slot.is_none_or(|old| old < b) {
            *slot = Some(b);
        }
    };
    let extend = |f: usize, l: usize, b: u32, t: Option<Letter>| -> (usize, usize, u32) {
        match t {
            None => (f, l, b),
            Some(t) => {
                let ti = idx(Some(t));
                if l == NONE {
                    (ti, ti, 1)
                } else if l == ti {
                    (f, l, b)
                } else {
                    (f, ti, b + 1)
                }
            }
        }
    };
    for &i in a.initial_states() {
        let c = comp_of[i.index()];
        let (f, l, b) = extend(NONE, NONE, 0, comp_letter[c]);
        entry(&mut best, c, f, l, b);
    }
    for c in (0..sccs.len()).rev() {
        let here = best[c];
        let mut succ: Vec<usize> = sccs[c]
            .iter()
            .flat_map(|&v| a.out_edges(v).iter().map(|&e| comp_of[a.edge(e).to.index()]))
            .filter(|&d| d != c)
            .collect();
        succ.sort_unstable();
        succ.dedup();
        for d in succ {
            for f in 0..3 {
                for l in 0..3 {
                    if let Some(b) = here[f][l] {
                        let (f2, l2, b2) = extend(f, l, b, comp_letter[d]);
                        entry(&mut best, d, f2, l2, b2);
                    }
                }
            }
        }
    }

    let mut max_e = 0u32;
    let mut max_a = 0u32;
    for row in &best {
        for l in 0..3 {
            if let Some(b) = row[0][l] {
                max_e = max_e.max(b);
            }
            if let Some(b) = row[1][l] {
                max_a = max_a.max(b);
            }
        }
    }
    Ok(level_from_blocks(max_e, max_a))
}

/// Minimal level given the longest block counts of words starting with `∃`
/// and with `∀`.
pub(crate) fn level_from_blocks(max_e: u32, max_a: u32) -> HierarchyLevel {
    let m = max_e.max(max_a);
    if m == 0 {
        HierarchyLevel::Delta(1)
    } else if max_e == max_a {
        HierarchyLevel::Delta(m + 1)
    } else if max_e > max_a {
        HierarchyLevel::Sigma(m)
    } else {
        HierarchyLevel::Pi(m)
    }
}

/// Strongly connected components of the reachable part, in reverse
/// topological order (sinks first).
fn tarjan(a: &Automaton, reach: &[bool]) -> Vec<Vec<StateId>> {
    let n = a.states().len();
    let mut index = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<StateId> = Vec::new();
    let mut out: Vec<Vec<StateId>> = Vec::new();
    let mut counter = 0u32;
    // explicit call stack: (state, next edge position)
    let mut calls: Vec<(StateId, usize)> = Vec::new();
    for root in a.state_ids().filter(|v| reach[v.index()]) {
        if index[root.index()] != u32::MAX {
            continue;
        }
        calls.push((root, 0));
        index[root.index()] = counter;
        low[root.index()] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root.index()] = true;
        while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
            let edges = a.out_edges(v);
            if *pos < edges.len() {
                let w = a.edge(edges[*pos]).to;
                *pos += 1;
                if index[w.index()] == u32::MAX {
                    index[w.index()] = counter;
                    low[w.index()] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w.index()] = true;
                    calls.push((w, 0));
                } else if on_stack[w.index()] {
                    low[v.index()] = low[v.index()].min(index[w.index()]);
                }
            } else {
                calls.pop();
                if let Some(&(parent, _)) = calls.last() {
                    low[parent.index()] = low[parent.index()].min(low[v.index()]);
                }
                if low[v.index()] == index[v.index()] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w.index()] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{AutomatonBuilder, Quantifier::*};
    use crate::gallery;
    use HierarchyLevel::*;

    #[test]
    fn order() {
        assert!(Delta(1).le(Sigma(1)));
        assert!(Delta(1).le(Pi(1)));
        assert!(Sigma(1).le(Delta(2)));
        assert!(!Sigma(1).le(Pi(1)));
        assert!(!Pi(1).le(Sigma(1)));
        assert!(Pi(3).le(AltUnbounded));
        assert!(Sigma(2).le(Sigma(2)));
    }

    #[test]
    fn all_exists_is_sigma1() {
        let a = AutomatonBuilder::new(["0"])
            .state("s", "0", Some(Exists))
            .initial("0", "s")
            .edge("s", "s", 1, 0)
            .edge("s", "s", 0, 1)
            .build()
            .unwrap();
        assert_eq!(classify(&a).unwrap(), Sigma(1));
    }

    #[test]
    fn exists_feeding_forall_is_sigma2() {
        let a = AutomatonBuilder::new(["0"])
            .state("e", "0", Some(Exists))
            .state("f", "0", Some(Forall))
            .initial("0", "e")
            .edge("e", "e", 0, 0)
            .edge("e", "f", 0, 0)
            .edge("f", "f", 1, 0)
            .edge("f", "f", 0, 1)
            .build()
            .unwrap();
        assert_eq!(classify(&a).unwrap(), Sigma(2));
    }

    #[test]
    fn mixed_cycle_is_unbounded() {
        let a = AutomatonBuilder::new(["0"])
            .state("e", "0", Some(Exists))
            .state("f", "0", Some(Forall))
            .initial("0", "e")
            .edge("e", "e", 0, 0)
            .edge("e", "f", 0, 0)
            .edge("f", "e", 1, 0)
            .edge("f", "f", 0, 1)
            .build()
            .unwrap();
        assert_eq!(classify(&a).unwrap(), AltUnbounded);
    }

    #[test]
    fn all_wildcard_is_delta1() {
        let a = AutomatonBuilder::new(["0", "1"])
            .state("a", "0", None)
            .state("b", "1", None)
            .initial("0", "a")
            .initial("1", "b")
            .edge("a", "a", 1, 0)
            .edge("a", "b", 1, 0)
            .build()
            .unwrap();
        assert_eq!(classify(&a).unwrap(), Delta(1));
    }

    #[test]
    fn separate_exists_and_forall_paths_is_delta2() {
        let a = AutomatonBuilder::new(["0", "1"])
            .state("a", "0", Some(Exists))
            .state("b", "1", Some(Forall))
            .initial("0", "a")
            .initial("1", "b")
            .edge("a", "a", 1, 0)
            .edge("a", "a", 0, 1)
            .edge("b", "b", 1, 0)
            .edge("b", "b", 0, 1)
            .build()
            .unwrap();
        assert_eq!(classify(&a).unwrap(), Delta(2));
    }

    #[test]
    fn unreachable_states_are_ignored() {
        let a = AutomatonBuilder::new(["0"])
            .state("s", "0", None)
            .state("x", "0", Some(Exists))
            .initial("0", "s")
            .edge("s", "s", 0, 0)
            .edge("x", "x", 1, 0)
            .edge("x", "x", 0, 1)
            .build()
            .unwrap();
        assert_eq!(classify(&a).unwrap(), Delta(1));
    }

    #[test]
    fn gallery_levels() {
        assert_eq!(classify(&gallery::even_runs_automaton()).unwrap(), Pi(1));
        assert_eq!(classify(&gallery::ssu_automaton()).unwrap(), Pi(1));
        assert_eq!(classify(&gallery::cone_labyrinth_automaton()).unwrap(), Sigma(1));
    }

    /// Block words by breadth-first search over `(state, first, last,
    /// blocks)` with blocks capped, mixed cycles by transitive closure; the
    /// answer is the first level on the chain covering every word.
    fn oracle(a: &Automaton) -> HierarchyLevel {
        let eff = a.effective_quantifiers().unwrap();
        let n = a.states().len();
        let lt = |v: usize| match eff[v] {
            Effective::Exists => 1u8,
            Effective::Forall => 2,
            Effective::Wildcard => 0,
        };
        let mut r = vec![vec![false; n]; n];
        for e in a.edges() {
            r[e.from.index()][e.to.index()] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if r[i][k] && r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
        let mut reach = vec![false; n];
        let mut todo: Vec<usize> = a.initial_states().iter().map(|v| v.index()).collect();
        while let Some(v) = todo.pop() {
            if !core::mem::replace(&mut reach[v], true) {
                todo.extend(a.out_edges(StateId(v as u32)).iter().map(|&e| a.edge(e).to.index()));
            }
        }
        for u in 0..n {
            for w in 0..n {
                if reach[u] && lt(u) == 1 && lt(w) == 2 && r[u][w] && r[w][u] {
                    return AltUnbounded;
                }
            }
        }
        let cap = n as u32 + 2;
        let mut seen = alloc::collections::BTreeSet::new();
        let mut todo: Vec<(usize, u8, u8, u32)> = Vec::new();
        for v in a.initial_states() {
            let l = lt(v.index());
            todo.push((v.index(), l, l, u32::from(l != 0)));
        }
        let mut words = Vec::new();
        while let Some(st) = todo.pop() {
            if !seen.insert(st) {
                continue;
            }
            let (v, first, last, count) = st;
            assert!(count < cap);
            words.push((first, count));
            for &e in a.out_edges(StateId(v as u32)) {
                let w = a.edge(e).to.index();
                let l = lt(w);
                let next = match (l, last) {
                    (0, _) => (w, first, last, count),
                    (l, 0) => (w, l, l, 1),
                    (l, p) if l == p => (w, first, last, count),
                    (l, _) => (w, first, l, count + 1),
                };
                todo.push(next);
            }
        }
        let covers = |lv: HierarchyLevel, first: u8, c: u32| match lv {
            Delta(m) => c < m,
            Sigma(m) => c <= m && (first != 2 || c < m),
            Pi(m) => c <= m && (first != 1 || c < m),
            AltUnbounded => true,
        };
        for m in 1.. {
            for lv in [Delta(m), Sigma(m), Pi(m)] {
                if words.iter().all(|&(f, c)| covers(lv, f, c)) {
                    return lv;
                }
            }
        }
        unreachable!()
    }

    fn renamed(a: &Automaton, salt: u32) -> Automaton {
        let mut d = a.to_def();
        let name = |id: &str| alloc::format!("r{salt}_{}", id.chars().rev().collect::<alloc::string::String>());
        for s in &mut d.states {
            s.id = name(&s.id);
        }
        for e in &mut d.edges {
            e.from = name(&e.from);
            e.to = name(&e.to);
        }
        for (_, v) in &mut d.initial {
            *v = name(v);
        }
        d.states.reverse();
        d.edges.reverse();
        Automaton::from_def(&d).unwrap()
    }

    #[test]
    fn agrees_with_path_oracle() {
        use crate::generate::{lcg, random_automaton, AutomatonShape};
        let shape = AutomatonShape { max_states: 6, ..AutomatonShape::default() };
        let mut levels = alloc::collections::BTreeSet::new();
        for seed in 0..400 {
            let a = random_automaton(&mut lcg(seed), &shape);
            let lv = classify(&a).unwrap();
            levels.insert(alloc::format!("{lv}"));
            assert_eq!(lv, oracle(&a), "seed {seed}");
            assert_eq!(classify(&renamed(&a, seed as u32)).unwrap(), lv, "seed {seed}");
        }
        assert!(levels.len() >= 4, "{levels:?}");
    }

    #[test]
    fn gallery_levels_survive_normalization() {
        for name in gallery::NAMES {
            let a = gallery::by_name(name).unwrap();
            assert_eq!(classify(&a.normalize_directions()).unwrap(), classify(&a).unwrap(), "{name}");
        }
    }
}
