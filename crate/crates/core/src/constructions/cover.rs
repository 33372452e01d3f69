//! The SFT cover over `Σ × ℘(V)` whose projection is the accepted subshift.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Sym};
use crate::automaton::{Automaton, Effective};
use crate::geometry::Direction;
use crate::pattern::Torus;
use crate::semantics::{build_arena, solve, NodeKind};
use crate::sft::{SftSpec, ShapePredicate};
use crate::Error;

pub const COVER_STATE_LIMIT: usize = 16;

/// Product symbol `base · 2^|V| + mask`, where bit `v` of the mask says that
/// state `v` has an accepting run from this cell.
#[derive(Clone, Debug)]
pub struct Cover {
    pub sft: SftSpec,
    pub base: Alphabet,
    pub state_count: usize,
    /// Window offsets: `•` first, then every other edge direction.
    pub shape: Vec<Direction>,
    rules: Arc<Rules>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// A state in the set reads another symbol.
    WrongSymbol,
    /// The set misses the initial state of its symbol.
    NoInitial,
    /// Some state in the set has no way to keep its run alive.
    Quantifier,
}

#[derive(Debug)]
struct Rules {
    n: usize,
    symbol: Vec<Sym>,
    initial: Vec<usize>,
    eff: Vec<Effective>,
    /// Per state: `(slot in shape, target state)` for every edge.
    edges: Vec<Vec<(usize, usize)>>,
}

impl Rules {
    fn split(&self, p: Sym) -> (Sym, u32) {
        let k = p.index();
        (Sym((k >> self.n) as u16), (k & ((1 << self.n) - 1)) as u32)
    }

    /// First violated clause for the window read at the shape's offsets.
    fn violation(&self, window: &[Sym]) -> Option<Clause> {
        let (s, set) = self.split(window[0]);
        let members = || (0..self.n).filter(move |&v| set >> v & 1 == 1);
        if members().any(|v| self.symbol[v] != s) {
            return Some(Clause::WrongSymbol);
        }
        if set >> self.initial[s.index()] & 1 == 0 {
            return Some(Clause::NoInitial);
        }
        let around: Vec<(Sym, u32)> = window.iter().map(|&p| self.split(p)).collect();
        for v in members() {
            let ok = match self.eff[v] {
                Effective::Forall => {
                    let mut applicable = false;
                    let mut all_in = true;
                    for &(slot, t) in &self.edges[v] {
                        let (ns, nset) = around[slot];
                        if self.symbol[t] == ns {
                            applicable = true;
                            all_in &= nset >> t & 1 == 1;
                        }
                    }
                    applicable && all_in
                }
                _ => self.edges[v].iter().any(|&(slot, t)| around[slot].1 >> t & 1 == 1),
            };
            if !ok {
                return Some(Clause::Quantifier);
            }
        }
        None
    }
}

/// Builds the cover of `a`. A window is forbidden when a state of the centre
/// set reads another symbol, when the set lacks the initial state of its
/// symbol, or when a state of the set fails its quantifier against the
/// neighbouring sets: an existential state needs an edge into the set at its
/// target, a universal state needs at least one edge whose target reads the
/// neighbour's symbol, and every such target in the neighbour's set.
pub fn alternating_to_cover(a: &Automaton) -> Result<Cover, Error> {
    let n = a.states().len();
    // product symbols must also fit the 16-bit symbol index
    let limit = COVER_STATE_LIMIT - (usize::BITS - (a.alphabet().len() - 1).leading_zeros()) as usize;
    if n > limit {
        return Err(Error::TooManyStates { states: n, limit });
    }
    let eff = a.effective_quantifiers()?;
    let base = a.alphabet().clone();
    let mut shape = vec![Direction::STAY];
    shape.extend(a.directions().into_iter().filter(|&d| d != Direction::STAY));
    let slot = |d: Direction| shape.iter().position(|&s| s == d).expect("direction in shape");
    let rules = Arc::new(Rules {
        n,
        symbol: a.states().iter().map(|s| s.symbol).collect(),
        initial: base.iter().map(|s| a.initial(s).index()).collect(),
        eff,
        edges: a
            .state_ids()
            .map(|v| a.out_edges(v).iter().map(|&e| (slot(a.edge(e).dir), a.edge(e).to.index())).collect())
            .collect(),
    });

    let tokens: Vec<String> = base
        .iter()
        .flat_map(|s| (0..1u32 << n).map(move |m| (s, m)))
        .map(|(s, m)| format!("{}:{m:x}", base.name(s)))
        .collect();
    let product = Alphabet::new(tokens.iter().map(String::as_str))?;
    let r = Arc::clone(&rules);
    let pred = ShapePredicate { shape: shape.clone(), forbids: Arc::new(move |w: &[Sym]| r.violation(w).is_some()) };
    Ok(Cover { sft: SftSpec::predicate(product, vec![pred])?, base, state_count: n, shape, rules })
}

impl Cover {
    pub fn product_size(&self) -> usize {
        self.base.len() << self.state_count
    }

    pub fn symbol(&self, s: Sym, mask: u32) -> Sym {
        Sym(((s.index() << self.state_count) | mask as usize) as u16)
    }

    pub fn projection(&self, p: Sym) -> Sym {
        self.rules.split(p).0
    }

    pub fn state_set(&self, p: Sym) -> u32 {
        self.rules.split(p).1
    }

    pub fn violation(&self, window: &[Sym]) -> Option<Clause> {
        self.rules.violation(window)
    }

    /// First violated clause at every cell of a product torus.
    pub fn check(&self, t: &Torus) -> Vec<Option<Clause>> {
        t.cells()
            .map(|c| {
                let w: Vec<Sym> = self.shape.iter().map(|&d| t.get(c + d)).collect();
                self.violation(&w)
            })
            .collect()
    }

    /// Centre symbols broken by the first two clauses alone, which need no
    /// neighbours: `(wrong symbol, no initial, neither)`.
    pub fn centre_statistics(&self) -> (usize, usize, usize) {
        let mut out = (0, 0, 0);
        for p in 0..self.product_size() {
            let (s, set) = self.rules.split(Sym(p as u16));
            if (0..self.state_count).any(|v| set >> v & 1 == 1 && self.rules.symbol[v] != s) {
                out.0 += 1;
            } else if set >> self.rules.initial[s.index()] & 1 == 0 {
                out.1 += 1;
            } else {
                out.2 += 1;
            }
        }
        out
    }

    /// Up to `cap` forbidden windows in lexicographic order, as product
    /// symbols at the shape's offsets, with the clause they break.
    pub fn forbidden_windows(&self, cap: usize) -> Vec<(Vec<Sym>, Clause)> {
        let k = self.product_size();
        let len = self.shape.len();
        let mut digits = vec![0usize; len];
        let mut out = Vec::new();
        while out.len() < cap {
            let w: Vec<Sym> = digits.iter().map(|&d| Sym(d as u16)).collect();
            if let Some(c) = self.violation(&w) {
                out.push((w, c));
            }
            let mut i = len;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < k {
                    break;
                }
                digits[i] = 0;
            }
        }
        out
    }
}

/// Pairs every cell with the set of states that have an accepting run there.
pub fn annotate(a: &Automaton, t: &Torus) -> Result<Torus, Error> {
    let cover = alternating_to_cover(a)?;
    annotate_with(&cover, a, t)
}

pub fn annotate_with(cover: &Cover, a: &Automaton, t: &Torus) -> Result<Torus, Error> {
    let ar = build_arena(a, t)?;
    let w = solve(&ar);
    let mut masks = vec![0u32; t.cell_count()];
    for n in 0..ar.node_count() as u32 {
        if let NodeKind::Position { cell, state } = ar.kind(n) {
            if w.contains(n) {
                masks[t.index_of(cell)] |= 1 << state.index();
            }
        }
    }
    let tt = t.with_alphabet(a.alphabet())?;
    let grid = tt.grid().iter().zip(&masks).map(|(&s, &m)| cover.symbol(s, m)).collect();
    Torus::new(cover.sft.alphabet().clone(), t.width(), t.height(), grid)
}

/// The annotation avoids every forbidden window.
pub fn cover_consistent(a: &Automaton, t: &Torus) -> Result<bool, Error> {
    let cover = alternating_to_cover(a)?;
    let y = annotate_with(&cover, a, t)?;
    Ok(cover.check(&y).iter().all(Option::is_none))
}
