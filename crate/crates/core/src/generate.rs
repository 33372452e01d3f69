//! Random instances driven by a caller-supplied source: `pick(k)` must
//! return a value in `0..k`. Keeping the generator here lets every consumer
//! reproduce the same instance from the same stream of draws.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Sym};
use crate::automaton::{Automaton, AutomatonBuilder, Quantifier};
use crate::geometry::{Cell, Direction};
use crate::pattern::{FinitePattern, Torus};
use crate::sft::SftSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantifierMix {
    Mixed,
    ExistsOnly,
    ForallOnly,
}

#[derive(Clone, Debug)]
pub struct AutomatonShape {
    pub symbols: usize,
    pub max_states: usize,
    pub max_out: usize,
    pub directions: Vec<Direction>,
    pub mix: QuantifierMix,
}

impl Default for AutomatonShape {
    fn default() -> Self {
        AutomatonShape {
            symbols: 2,
            max_states: 4,
            max_out: 3,
            directions: Direction::UNIT.to_vec(),
            mix: QuantifierMix::Mixed,
        }
    }
}

pub fn symbol_tokens(k: usize) -> Vec<alloc::string::String> {
    (0..k).map(|i| format!("{i}")).collect()
}

/// States `q0..q{k-1}` are the initial states of symbols `0..k-1`; every
/// state carries a quantifier so nondeterminism is always declared.
pub fn random_automaton(pick: &mut impl FnMut(u32) -> u32, shape: &AutomatonShape) -> Automaton {
    let k = shape.symbols;
    let lo = k.max(1);
    let n = lo + pick((shape.max_states.max(lo) - lo + 1) as u32) as usize;
    let tokens = symbol_tokens(k);
    let mut b = AutomatonBuilder::new(tokens.clone());
    let mut symbols = Vec::with_capacity(n);
    for v in 0..n {
        let s = if v < k { v } else { pick(k as u32) as usize };
        symbols.push(s);
        let q = match shape.mix {
            QuantifierMix::Mixed => [Quantifier::Exists, Quantifier::Forall][pick(2) as usize],
            QuantifierMix::ExistsOnly => Quantifier::Exists,
            QuantifierMix::ForallOnly => Quantifier::Forall,
        };
        b = b.state(&format!("q{v}"), &tokens[s], Some(q));
    }
    for (s, t) in tokens.iter().enumerate() {
        b = b.initial(t, &format!("q{s}"));
    }
    for v in 0..n {
        for _ in 0..pick(shape.max_out as u32 + 1) {
            let to = pick(n as u32);
            let d = shape.directions[pick(shape.directions.len() as u32) as usize];
            b = b.edge(&format!("q{v}"), &format!("q{to}"), d.dx, d.dy);
        }
    }
    b.build().expect("generated automaton is structurally valid")
}

pub fn random_torus(pick: &mut impl FnMut(u32) -> u32, alphabet: &Alphabet, w: u32, h: u32) -> Torus {
    let k = alphabet.len() as u32;
    let grid = (0..w * h).map(|_| Sym(pick(k) as u16)).collect();
    Torus::new(alphabet.clone(), w, h, grid).expect("nonempty torus")
}

/// Width and height drawn uniformly from `1..=max_w` and `1..=max_h` first.
pub fn random_torus_upto(pick: &mut impl FnMut(u32) -> u32, alphabet: &Alphabet, max_w: u32, max_h: u32) -> Torus {
    let w = 1 + pick(max_w);
    let h = 1 + pick(max_h);
    random_torus(pick, alphabet, w, h)
}

/// One to three forbidden patterns, each on a random support inside a
/// `2 × 2` box or a horizontal triple.
pub fn random_sft(pick: &mut impl FnMut(u32) -> u32, alphabet: &Alphabet) -> SftSpec {
    let k = alphabet.len() as u32;
    let boxes: [&[(i32, i32)]; 5] = [
        &[(0, 0), (1, 0)],
        &[(0, 0), (0, 1)],
        &[(0, 0), (1, 0), (2, 0)],
        &[(0, 0), (1, 1)],
        &[(0, 0), (1, 0), (0, 1), (1, 1)],
    ];
    let count = 1 + pick(3);
    let pats = (0..count)
        .map(|_| {
            let cells: BTreeMap<Cell, Sym> = boxes[pick(boxes.len() as u32) as usize]
                .iter()
                .map(|&(x, y)| (Cell::new(x, y), Sym(pick(k) as u16)))
                .collect();
            FinitePattern::new(alphabet.clone(), cells).expect("nonempty pattern")
        })
        .collect();
    SftSpec::explicit(alphabet.clone(), pats).expect("patterns over the alphabet")
}

/// A 64-bit linear congruential stream, enough for tests and reproducible
/// everywhere.
pub fn lcg(seed: u64) -> impl FnMut(u32) -> u32 {
    let mut s = seed ^ 0x9e37_79b9_7f4a_7c15;
    move |k| {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((s >> 33) % u64::from(k.max(1))) as u32
    }
}

/// Every `w × h` torus over `alphabet`, in counting order with cell 0 as the
/// least significant digit.
pub fn all_tori(alphabet: &Alphabet, w: u32, h: u32) -> impl Iterator<Item = Torus> + '_ {
    let k = alphabet.len() as u64;
    let cells = (w * h) as usize;
    let total = k.checked_pow(cells as u32).unwrap_or(u64::MAX);
    (0..total).map(move |code| nth_torus(alphabet, w, h, code))
}

/// The torus numbered `code` in the order of [`all_tori`].
pub fn nth_torus(alphabet: &Alphabet, w: u32, h: u32, code: u64) -> Torus {
    let k = alphabet.len() as u64;
    let mut c = code;
    let grid = (0..w * h)
        .map(|_| {
            let s = Sym((c % k) as u16);
            c /= k;
            s
        })
        .collect();
    Torus::new(alphabet.clone(), w, h, grid).expect("nonempty torus")
}

/// Every torus with both sides at most the given bounds, smaller shapes first.
pub fn all_tori_upto(alphabet: &Alphabet, max_w: u32, max_h: u32) -> impl Iterator<Item = Torus> + '_ {
    (1..=max_h).flat_map(move |h| (1..=max_w).flat_map(move |w| all_tori(alphabet, w, h)))
}
