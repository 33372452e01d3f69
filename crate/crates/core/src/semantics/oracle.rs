//! Deciders that share no code with the arena solver.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::Space;
use crate::automaton::{Automaton, Effective, StateId};
use crate::pattern::{Domain, Torus};
use crate::Error;

pub const ORACLE_ARENA_LIMIT: usize = 4000;

/// `None` is the exterior of a pattern.
type Node = (Option<usize>, StateId);

struct Game<'a> {
    a: &'a Automaton,
    space: Space,
    eff: Vec<Effective>,
}

impl Game<'_> {
    fn new<'a>(a: &'a Automaton, x: Domain<'_>) -> Result<Game<'a>, Error> {
        Ok(Game { a, space: Space::new(a.alphabet(), x)?, eff: a.effective_quantifiers()? })
    }

    fn node_count(&self) -> usize {
        let mut per_sym = vec![0usize; self.a.alphabet().len()];
        for s in self.a.states() {
            per_sym[s.symbol.index()] += 1;
        }
        let inner: usize = (0..self.space.len()).map(|i| per_sym[self.space.sym(i).index()]).sum();
        inner + usize::from(!self.space.is_torus())
    }

    fn start(&self, i: usize) -> Node {
        (Some(i), self.a.initial(self.space.sym(i)))
    }

    /// Applicable successors, one per matching edge.
    fn successors(&self, (cell, v): Node) -> Vec<Node> {
        let Some(i) = cell else { return Vec::new() };
        let here = self.space.cell(i);
        let mut out = Vec::new();
        for &e in self.a.out_edges(v) {
            let edge = self.a.edge(e);
            match self.space.locate(here + edge.dir) {
                None => out.push((None, edge.to)),
                Some(j) if self.space.sym(j) == self.a.symbol(edge.to) => out.push((Some(j), edge.to)),
                Some(_) => {}
            }
        }
        out
    }
}

/// Coinductive search: a node on the current path counts as accepting and a
/// node outside the assumption set as rejecting. The assumption set shrinks
/// to the nodes the search confirms until it no longer changes.
pub fn brute_force_accepts<'a>(a: &Automaton, x: impl Into<Domain<'a>>) -> Result<bool, Error> {
    let g = Game::new(a, x.into())?;
    let nodes = g.node_count();
    if nodes > ORACLE_ARENA_LIMIT {
        return Err(Error::ArenaTooLarge { nodes, limit: ORACLE_ARENA_LIMIT });
    }
    let mut assumed: BTreeSet<Node> = BTreeSet::new();
    for i in 0..g.space.len() {
        for v in a.state_ids().filter(|&v| a.symbol(v) == g.space.sym(i)) {
            assumed.insert((Some(i), v));
        }
    }
    loop {
        let mut search = Search { g: &g, assumed: &assumed, memo: BTreeMap::new(), path: BTreeSet::new() };
        let kept: BTreeSet<Node> = assumed.iter().copied().filter(|&n| search.run(n)).collect();
        if kept.len() == assumed.len() {
            break;
        }
        assumed = kept;
    }
    Ok((0..g.space.len()).all(|i| assumed.contains(&g.start(i))))
}

struct Search<'g, 'a> {
    g: &'g Game<'a>,
    assumed: &'g BTreeSet<Node>,
    memo: BTreeMap<Node, bool>,
    path: BTreeSet<Node>,
}

impl Search<'_, '_> {
    fn run(&mut self, n: Node) -> bool {
        if n.0.is_none() {
            return true;
        }
        if !self.assumed.contains(&n) {
            return false;
        }
        if self.path.contains(&n) {
            return true;
        }
        if let Some(&r) = self.memo.get(&n) {
            return r;
        }
        self.path.insert(n);
        let succ = self.g.successors(n);
        let r = match self.g.eff[n.1.index()] {
            Effective::Forall => !succ.is_empty() && succ.iter().all(|&s| self.run(s)),
            _ => succ.iter().any(|&s| self.run(s)),
        };
        self.path.remove(&n);
        self.memo.insert(n, r);
        r
    }
}

/// For automata without universal states: every start must reach a cycle of
/// the applicable-move graph.
pub fn exists_only_oracle(a: &Automaton, t: &Torus) -> Result<bool, Error> {
    let g = Game::new(a, t.into())?;
    if let Some(v) = a.state_ids().find(|v| g.eff[v.index()] == Effective::Forall) {
        return Err(Error::NotExistential { state: a.state(v).id.clone() });
    }
    for i in 0..g.space.len() {
        if !reaches_cycle(&g, g.start(i)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Depth-first search from `root` looking for a back edge.
fn reaches_cycle(g: &Game<'_>, root: Node) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum Colour {
        Grey,
        Black,
    }
    let mut colour: BTreeMap<Node, Colour> = BTreeMap::new();
    let mut stack: Vec<(Node, Vec<Node>)> = Vec::new();
    colour.insert(root, Colour::Grey);
    stack.push((root, g.successors(root)));
    while let Some((n, succ)) = stack.last_mut() {
        match succ.pop() {
            Some(s) => match colour.get(&s) {
                Some(Colour::Grey) => return true,
                Some(Colour::Black) => {}
                None => {
                    colour.insert(s, Colour::Grey);
                    let next = g.successors(s);
                    stack.push((s, next));
                }
            },
            None => {
                colour.insert(*n, Colour::Black);
                stack.pop();
            }
        }
    }
    false
}

/// For automata without existential choices: no node reachable from a start
/// may be stuck.
pub fn forall_only_oracle(a: &Automaton, t: &Torus) -> Result<bool, Error> {
    let g = Game::new(a, t.into())?;
    if let Some(v) = a.state_ids().find(|v| g.eff[v.index()] == Effective::Exists) {
        return Err(Error::NotUniversal { state: a.state(v).id.clone() });
    }
    let mut seen: BTreeSet<Node> = BTreeSet::new();
    let mut queue: VecDeque<Node> = VecDeque::new();
    for i in 0..g.space.len() {
        if seen.insert(g.start(i)) {
            queue.push_back(g.start(i));
        }
    }
    while let Some(n) = queue.pop_front() {
        let succ = g.successors(n);
        if succ.is_empty() {
            return Ok(false);
        }
        for s in succ {
            if seen.insert(s) {
                queue.push_back(s);
            }
        }
    }
    Ok(true)
}
