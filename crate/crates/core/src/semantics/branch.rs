//! Single branches of a run tree, their footprints and pumping.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::arena::{Arena, Move, NodeId, NodeKind};
use super::solve::WinningSet;
use super::Space;
use crate::automaton::{Automaton, EdgeId, Effective, StateId};
use crate::geometry::{Cell, Direction};
use crate::pattern::Domain;
use crate::Error;

/// One visited position. `edge` is the edge taken to the next step; on the
/// last step it may point out of the support, or back into the cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub cell: Cell,
    pub state: StateId,
    pub edge: Option<EdgeId>,
}

/// After the last step the branch continues with `steps[start..]` translated
/// by `shift`, forever.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lasso {
    pub start: usize,
    pub shift: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Branch {
    pub steps: Vec<Step>,
    pub cycle: Option<Lasso>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PumpingPair {
    pub i: usize,
    pub j: usize,
    pub vector: Direction,
}

pub fn footprint(b: &Branch) -> BTreeSet<Cell> {
    b.steps.iter().map(|s| s.cell).collect()
}

/// Every `i < j` with the same state, ordered by `(i, j)`.
pub fn find_pumping_pairs(b: &Branch) -> Vec<PumpingPair> {
    let mut out = Vec::new();
    for i in 0..b.steps.len() {
        for j in i + 1..b.steps.len() {
            if b.steps[i].state == b.steps[j].state {
                out.push(PumpingPair { i, j, vector: b.steps[j].cell - b.steps[i].cell });
            }
        }
    }
    out
}

/// Repeats `steps[i..j]` `k` times, each copy shifted by the pumping vector,
/// and shifts the tail accordingly. A lasso survives only when its cycle lies
/// in the tail.
pub fn pump_branch(b: &Branch, pair: PumpingPair, k: usize) -> Branch {
    let PumpingPair { i, j, vector } = pair;
    let mut steps: Vec<Step> = b.steps[..i].to_vec();
    for r in 0..k {
        let d = vector.scale(r as i32);
        steps.extend(b.steps[i..j].iter().map(|s| Step { cell: s.cell + d, ..*s }));
    }
    let tail = vector.scale(k as i32 - 1);
    steps.extend(b.steps[j..].iter().map(|s| Step { cell: s.cell + tail, ..*s }));
    let cycle = b
        .cycle
        .and_then(|l| (l.start >= j).then(|| Lasso { start: l.start + (k * (j - i)) - (j - i), shift: l.shift }));
    Branch { steps, cycle }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mismatch {
    /// The state's symbol differs from the configuration.
    Symbol { index: usize },
    /// The step lies outside the support of a pattern.
    OffSupport { index: usize },
    /// The recorded edge does not join this step to the next one.
    Edge { index: usize },
    /// A step other than the last has no edge.
    Gap { index: usize },
}

/// Checks a branch against an automaton and a domain.
pub fn replay<'a>(a: &Automaton, x: impl Into<Domain<'a>>, b: &Branch) -> Result<Vec<Mismatch>, Error> {
    let space = Space::new(a.alphabet(), x.into())?;
    let mut out = Vec::new();
    for (index, s) in b.steps.iter().enumerate() {
        match space.locate(s.cell) {
            None => out.push(Mismatch::OffSupport { index }),
            Some(c) if space.sym(c) != a.symbol(s.state) => out.push(Mismatch::Symbol { index }),
            Some(_) => {}
        }
        let next = b.steps.get(index + 1);
        match (s.edge, next) {
            (None, Some(_)) => out.push(Mismatch::Gap { index }),
            (None, None) => {}
            (Some(e), next) => {
                let edge = a.edges().get(e.index()).copied();
                let ok = edge.is_some_and(|edge| {
                    edge.from == s.state && next.is_none_or(|n| edge.to == n.state && n.cell - s.cell == edge.dir)
                });
                if !ok {
                    out.push(Mismatch::Edge { index });
                }
            }
        }
    }
    Ok(out)
}

/// Follows one branch from `start`. On winning nodes the existential player
/// uses the strategy and universal nodes take their first move; on losing
/// nodes the branch descends the attractor ranks to a stuck node. Stops at a
/// repeated node (lasso), at the exterior, or after `max_steps` steps.
pub fn extract_branch(ar: &Arena, w: &WinningSet, start: NodeId, max_steps: usize) -> Branch {
    let mut steps: Vec<Step> = Vec::new();
    let mut visited: Vec<Option<usize>> = vec![None; ar.node_count()];
    let mut node = start;
    let NodeKind::Position { mut cell, .. } = ar.kind(start) else { return Branch::default() };
    while steps.len() < max_steps {
        let NodeKind::Position { state, .. } = ar.kind(node) else { break };
        visited[node as usize] = Some(steps.len());
        steps.push(Step { cell, state, edge: None });
        let Some(m) = pick(ar, w, node) else { break };
        steps.last_mut().expect("pushed").edge = Some(m.edge);
        let next_cell = cell + ar.edge_dir(m.edge);
        if ar.is_exterior(m.to) {
            break;
        }
        if let Some(s) = visited[m.to as usize] {
            return Branch { cycle: Some(Lasso { start: s, shift: next_cell - steps[s].cell }), steps };
        }
        node = m.to;
        cell = next_cell;
    }
    Branch { steps, cycle: None }
}

fn pick(ar: &Arena, w: &WinningSet, n: NodeId) -> Option<Move> {
    if w.contains(n) {
        return match ar.owner(n) {
            Effective::Forall => ar.moves(n).first().copied(),
            _ => w.choice(n),
        };
    }
    ar.moves(n).iter().copied().filter(|m| !w.contains(m.to)).min_by_key(|m| (w.rank(m.to), m.edge))
}
