use alloc::vec;
use alloc::vec::Vec;

use super::{Space, WinningSet};
use crate::automaton::{Automaton, EdgeId, Effective, StateId};
use crate::geometry::{Cell, Direction};
use crate::pattern::Domain;
use crate::Error;

pub type NodeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Position {
        cell: Cell,
        state: StateId,
    },
    /// Reached by any move that leaves the support of a pattern.
    Exterior,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Move {
    pub edge: EdgeId,
    pub to: NodeId,
}

/// Product of an automaton with a torus or a pattern. Node `(c, v)` exists
/// only when `D(v)` is the symbol at `c`.
#[derive(Clone, Debug)]
pub struct Arena {
    kinds: Vec<NodeKind>,
    owners: Vec<Effective>,
    move_start: Vec<u32>,
    moves: Vec<Move>,
    starts: Vec<NodeId>,
    exterior: Option<NodeId>,
    edge_dirs: Vec<Direction>,
    offsets: Vec<u32>,
    rank: Vec<u32>,
    torus: bool,
}

/// Builds the arena of `a` on a torus (modular cells) or a finite pattern
/// (off-support moves go to the exterior node whatever the target state).
pub fn build_arena<'a>(a: &Automaton, x: impl Into<Domain<'a>>) -> Result<Arena, Error> {
    let space = Space::new(a.alphabet(), x.into())?;
    Arena::build(a, &space)
}

impl Arena {
    pub(crate) fn build(a: &Automaton, space: &Space) -> Result<Arena, Error> {
        let eff = a.effective_quantifiers()?;
        let mut by_sym: Vec<Vec<StateId>> = vec![Vec::new(); a.alphabet().len()];
        let mut rank = vec![0u32; a.states().len()];
        for v in a.state_ids() {
            let list = &mut by_sym[a.symbol(v).index()];
            rank[v.index()] = list.len() as u32;
            list.push(v);
        }

        let mut offsets = Vec::with_capacity(space.len() + 1);
        let mut kinds = Vec::new();
        let mut owners = Vec::new();
        for i in 0..space.len() {
            offsets.push(kinds.len() as u32);
            let cell = space.cell(i);
            for &v in &by_sym[space.sym(i).index()] {
                kinds.push(NodeKind::Position { cell, state: v });
                owners.push(eff[v.index()]);
            }
        }
        offsets.push(kinds.len() as u32);
        let exterior = if space.is_torus() {
            None
        } else {
            kinds.push(NodeKind::Exterior);
            owners.push(Effective::Wildcard);
            Some(kinds.len() as NodeId - 1)
        };

        let node_of = |i: usize, v: StateId| offsets[i] + rank[v.index()];
        let mut move_start = Vec::with_capacity(kinds.len() + 1);
        let mut moves = Vec::new();
        for i in 0..space.len() {
            let cell = space.cell(i);
            for &v in &by_sym[space.sym(i).index()] {
                move_start.push(moves.len() as u32);
                for &e in a.out_edges(v) {
                    let edge = a.edge(e);
                    match space.locate(cell + edge.dir) {
                        Some(j) if space.sym(j) == a.symbol(edge.to) => {
                            moves.push(Move { edge: e, to: node_of(j, edge.to) });
                        }
                        Some(_) => {}
                        None => moves.push(Move { edge: e, to: exterior.expect("pattern mode") }),
                    }
                }
            }
        }
        if exterior.is_some() {
            move_start.push(moves.len() as u32);
        }
        move_start.push(moves.len() as u32);

        let starts = (0..space.len()).map(|i| node_of(i, a.initial(space.sym(i)))).collect();
        Ok(Arena {
            kinds,
            owners,
            move_start,
            moves,
            starts,
            exterior,
            edge_dirs: a.edges().iter().map(|e| e.dir).collect(),
            offsets,
            rank,
            torus: space.is_torus(),
        })
    }

    pub fn node_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn move_count(&self) -> usize {
        self.moves.len()
    }

    pub fn kind(&self, n: NodeId) -> NodeKind {
        self.kinds[n as usize]
    }

    /// `Wildcard` for deterministic states and for the exterior node.
    pub fn owner(&self, n: NodeId) -> Effective {
        self.owners[n as usize]
    }

    /// Applicable moves, in increasing edge id order.
    pub fn moves(&self, n: NodeId) -> &[Move] {
        let n = n as usize;
        &self.moves[self.move_start[n] as usize..self.move_start[n + 1] as usize]
    }

    pub fn exterior(&self) -> Option<NodeId> {
        self.exterior
    }

    pub fn is_exterior(&self, n: NodeId) -> bool {
        self.exterior == Some(n)
    }

    pub fn is_torus(&self) -> bool {
        self.torus
    }

    /// The start node of every domain cell, in the domain's cell order.
    pub fn starts(&self) -> &[NodeId] {
        &self.starts
    }

    /// Node of state `v` at the `i`-th domain cell, if `v` reads that symbol.
    pub fn node_at(&self, i: usize, v: StateId) -> Option<NodeId> {
        let n = self.offsets[i] + self.rank[v.index()];
        (n < self.offsets[i + 1] && matches!(self.kinds[n as usize], NodeKind::Position { state, .. } if state == v))
            .then_some(n)
    }

    pub fn edge_dir(&self, e: EdgeId) -> Direction {
        self.edge_dirs[e.index()]
    }

    pub fn accepted(&self, w: &WinningSet) -> bool {
        self.starts.iter().all(|&n| w.contains(n))
    }

    /// Domain cell indices whose start node loses.
    pub fn rejecting_starts(&self, w: &WinningSet) -> Vec<usize> {
        (0..self.starts.len()).filter(|&i| !w.contains(self.starts[i])).collect()
    }
}
