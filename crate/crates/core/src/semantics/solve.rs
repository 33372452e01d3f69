use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::arena::{Arena, Move, NodeId};
use crate::automaton::Effective;

/// Greatest fixpoint of the acceptance condition, with a positional strategy
/// for the existential player and removal ranks for losing nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningSet {
    win: Vec<bool>,
    choice: Vec<Option<Move>>,
    rank: Vec<Option<u32>>,
}

impl WinningSet {
    pub fn contains(&self, n: NodeId) -> bool {
        self.win[n as usize]
    }

    /// Chosen move of a winning non-universal node.
    pub fn choice(&self, n: NodeId) -> Option<Move> {
        self.choice[n as usize]
    }

    /// Attractor depth of a losing node: 0 for nodes without moves, then one
    /// more than the node whose removal caused it.
    pub fn rank(&self, n: NodeId) -> Option<u32> {
        self.rank[n as usize]
    }

    pub fn len(&self) -> usize {
        self.win.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Worklist deletion with per-node counters; linear in the number of moves.
pub fn solve(ar: &Arena) -> WinningSet {
    let n = ar.node_count();
    let mut pred_start = vec![0u32; n + 1];
    for v in 0..n as NodeId {
        for m in ar.moves(v) {
            pred_start[m.to as usize + 1] += 1;
        }
    }
    for i in 0..n {
        pred_start[i + 1] += pred_start[i];
    }
    let mut fill = pred_start.clone();
    let mut preds = vec![0 as NodeId; pred_start[n] as usize];
    for v in 0..n as NodeId {
        for m in ar.moves(v) {
            let slot = &mut fill[m.to as usize];
            preds[*slot as usize] = v;
            *slot += 1;
        }
    }

    let mut win = vec![true; n];
    let mut rank = vec![None; n];
    let mut count: Vec<u32> = (0..n as NodeId).map(|v| ar.moves(v).len() as u32).collect();
    let mut queue = VecDeque::new();
    for v in 0..n as NodeId {
        if count[v as usize] == 0 && !ar.is_exterior(v) {
            win[v as usize] = false;
            rank[v as usize] = Some(0);
            queue.push_back(v);
        }
    }
    while let Some(t) = queue.pop_front() {
        let r = rank[t as usize].unwrap_or(0) + 1;
        for &s in &preds[pred_start[t as usize] as usize..pred_start[t as usize + 1] as usize] {
            let si = s as usize;
            if !win[si] {
                continue;
            }
            let lost = match ar.owner(s) {
                Effective::Forall => true,
                Effective::Exists | Effective::Wildcard => {
                    count[si] -= 1;
                    count[si] == 0
                }
            };
            if lost {
                win[si] = false;
                rank[si] = Some(r);
                queue.push_back(s);
            }
        }
    }

    let choice = (0..n as NodeId)
        .map(|v| {
            if !win[v as usize] || ar.owner(v) == Effective::Forall {
                return None;
            }
            ar.moves(v).iter().copied().find(|m| win[m.to as usize])
        })
        .collect();
    WinningSet { win, choice, rank }
}

/// First node where `w` breaks the fixpoint equation, if any.
pub fn fixpoint_violation(ar: &Arena, w: &WinningSet) -> Option<NodeId> {
    (0..ar.node_count() as NodeId).find(|&v| {
        let expected = if ar.is_exterior(v) {
            true
        } else {
            let moves = ar.moves(v);
            match ar.owner(v) {
                Effective::Forall => !moves.is_empty() && moves.iter().all(|m| w.contains(m.to)),
                _ => moves.iter().any(|m| w.contains(m.to)),
            }
        };
        expected != w.contains(v)
    })
}

/// Plays the strategy from every winning node against all universal choices
/// and reports a reachable node that is losing or stuck.
pub fn strategy_violation(ar: &Arena, w: &WinningSet) -> Option<NodeId> {
    let n = ar.node_count();
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    for v in 0..n as NodeId {
        if w.contains(v) && !seen[v as usize] {
            seen[v as usize] = true;
            stack.push(v);
        }
        while let Some(u) = stack.pop() {
            if !w.contains(u) {
                return Some(u);
            }
            if ar.is_exterior(u) {
                continue;
            }
            let next: Vec<NodeId> = match ar.owner(u) {
                Effective::Forall => ar.moves(u).iter().map(|m| m.to).collect(),
                _ => w.choice(u).map(|m| m.to).into_iter().collect(),
            };
            if next.is_empty() {
                return Some(u);
            }
            for t in next {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
    }
    None
}
