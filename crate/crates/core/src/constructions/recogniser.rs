//! Recogniser ↔ domino SFT, and higher block coding.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Sym};
use crate::automaton::{Automaton, Edge, State, StateId};
use crate::geometry::{Cell, Direction};
use crate::pattern::FinitePattern;
use crate::sft::{SftSpec, ShapePredicate};
use crate::Error;

/// The two domino relations of an SFT as `allowed[s * n + t]` tables.
struct Dominoes {
    n: usize,
    horizontal: Vec<bool>,
    vertical: Vec<bool>,
}

fn dominoes(f: &SftSpec) -> Result<Dominoes, Error> {
    let n = f.alphabet().len();
    let mut d = Dominoes { n, horizontal: vec![true; n * n], vertical: vec![true; n * n] };
    for w in f.windows() {
        let table = if w.shape == [Direction::STAY, Direction::RIGHT] {
            &mut d.horizontal
        } else if w.shape == [Direction::STAY, Direction::UP] {
            &mut d.vertical
        } else {
            return Err(Error::NotDominoSft(format!("window shape {:?}", w.shape)));
        };
        for s in 0..n {
            for t in 0..n {
                if w.test.matches(&[Sym(s as u16), Sym(t as u16)]) {
                    table[s * n + t] = false;
                }
            }
        }
    }
    Ok(d)
}

/// States are the symbols of `f`, labelled through `proj`; an edge `→` or
/// `↑` joins every pair of symbols that does not form a forbidden domino.
/// The automaton's alphabet is the image of `proj` (in `base` order), and the
/// initial state of a symbol is its first preimage.
pub fn sft_to_recogniser(f: &SftSpec, proj: &[Sym], base: &Alphabet) -> Result<Automaton, Error> {
    let sigma = f.alphabet();
    if proj.len() != sigma.len() {
        return Err(Error::AlphabetMismatch(format!(
            "projection has {} entries for {} symbols",
            proj.len(),
            sigma.len()
        )));
    }
    if let Some(s) = proj.iter().find(|s| s.index() >= base.len()) {
        return Err(Error::AlphabetMismatch(format!("projection target #{} outside the base alphabet", s.0)));
    }
    let d = dominoes(f)?;
    let image: Vec<Sym> = base.iter().filter(|s| proj.contains(s)).collect();
    let alphabet = Alphabet::new(image.iter().map(|&s| base.name(s)))?;
    let relabel = |s: Sym| Sym(image.iter().position(|&t| t == s).expect("in image") as u16);

    let states: Vec<State> = sigma
        .iter()
        .map(|s| State { id: sigma.name(s).to_string(), symbol: relabel(proj[s.index()]), quant: None })
        .collect();
    let mut edges = Vec::new();
    for (table, dir) in [(&d.horizontal, Direction::RIGHT), (&d.vertical, Direction::UP)] {
        for s in 0..d.n {
            for t in 0..d.n {
                if table[s * d.n + t] {
                    edges.push(Edge { from: StateId(s as u32), to: StateId(t as u32), dir });
                }
            }
        }
    }
    let initial = image.iter().map(|&b| StateId(proj.iter().position(|&p| p == b).expect("in image") as u32)).collect();
    Ok(Automaton::from_parts(alphabet, states, edges, initial))
}

/// Forbidden dominoes over the states are exactly the missing `→` and `↑`
/// edges; the projection is `D`.
pub fn recogniser_to_sft(a: &Automaton) -> Result<(SftSpec, Vec<Sym>), Error> {
    a.check_recognising_mode()?;
    let states = Alphabet::new(a.states().iter().map(|s| s.id.as_str()))?;
    let n = a.states().len();
    let mut right = vec![false; n * n];
    let mut up = vec![false; n * n];
    for e in a.edges() {
        let t = if e.dir == Direction::RIGHT { &mut right } else { &mut up };
        t[e.from.index() * n + e.to.index()] = true;
    }
    let mut patterns = Vec::new();
    for (table, dir) in [(&right, Direction::RIGHT), (&up, Direction::UP)] {
        for s in 0..n {
            for t in 0..n {
                if !table[s * n + t] {
                    let cells = [(Cell::ORIGIN, Sym(s as u16)), (Cell::ORIGIN + dir, Sym(t as u16))];
                    patterns.push(FinitePattern::new(states.clone(), cells.into_iter().collect())?);
                }
            }
        }
    }
    let proj = a.states().iter().map(|s| s.symbol).collect();
    Ok((SftSpec::explicit(states, patterns)?, proj))
}

/// An SFT over `n × n` blocks with domino constraints, and the map sending a
/// block to its lower-left symbol.
#[derive(Clone, Debug)]
pub struct BlockCode {
    pub sft: SftSpec,
    /// Legal blocks, `block[y * n + x]`.
    pub blocks: Arc<Vec<Vec<Sym>>>,
    pub decode: Vec<Sym>,
    pub size: usize,
}

pub const BLOCK_CODE_LIMIT: usize = 1 << 16;

/// Re-encodes `f` over its legal `n × n` blocks. Overlapping blocks must
/// agree; since each forbidden pattern fits in one block, excluding illegal
/// blocks from the alphabet is the only other constraint.
pub fn higher_block_code(f: &SftSpec, n: usize) -> Result<BlockCode, Error> {
    if n == 0 {
        return Err(Error::PatternTooLarge("block size must be positive".into()));
    }
    let windows = f.windows();
    let boxes: Vec<(Direction, Direction)> = windows.iter().map(|w| shape_box(&w.shape)).collect();
    if boxes.iter().any(|(l, h)| (h.dx - l.dx + 1) as usize > n || (h.dy - l.dy + 1) as usize > n) {
        return Err(Error::PatternTooLarge(format!("forbidden window does not fit in {n}×{n}")));
    }
    let k = f.alphabet().len();
    let total = (k as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if total > BLOCK_CODE_LIMIT as u128 {
        return Err(Error::PatternTooLarge(format!("{total} candidate blocks")));
    }
    let mut blocks = Vec::new();
    let mut block = vec![Sym(0); n * n];
    let mut buf = Vec::new();
    for code in 0..total as usize {
        let mut c = code;
        for cell in block.iter_mut() {
            *cell = Sym((c % k) as u16);
            c /= k;
        }
        let legal = windows.iter().zip(&boxes).all(|(w, &(wlo, whi))| {
            for ay in -wlo.dy..n as i32 - whi.dy {
                for ax in -wlo.dx..n as i32 - whi.dx {
                    buf.clear();
                    buf.extend(w.shape.iter().map(|d| block[((ay + d.dy) as usize) * n + (ax + d.dx) as usize]));
                    if w.test.matches(&buf) {
                        return false;
                    }
                }
            }
            true
        });
        if legal {
            blocks.push(block.clone());
        }
    }
    if blocks.is_empty() {
        return Err(Error::InvalidPattern("no legal block".into()));
    }
    let names: Vec<String> = (0..blocks.len()).map(|i| format!("b{i}")).collect();
    let alphabet = Alphabet::new(names.iter().map(String::as_str))?;
    let decode = blocks.iter().map(|b| b[0]).collect();
    let blocks = Arc::new(blocks);

    let hb = Arc::clone(&blocks);
    let horizontal = ShapePredicate {
        shape: vec![Direction::STAY, Direction::RIGHT],
        forbids: Arc::new(move |s: &[Sym]| {
            let (a, b) = (&hb[s[0].index()], &hb[s[1].index()]);
            (0..n).any(|y| (1..n).any(|x| a[y * n + x] != b[y * n + x - 1]))
        }),
    };
    let vb = Arc::clone(&blocks);
    let vertical = ShapePredicate {
        shape: vec![Direction::STAY, Direction::UP],
        forbids: Arc::new(move |s: &[Sym]| {
            let (a, b) = (&vb[s[0].index()], &vb[s[1].index()]);
            (1..n).any(|y| (0..n).any(|x| a[y * n + x] != b[(y - 1) * n + x]))
        }),
    };
    Ok(BlockCode { sft: SftSpec::predicate(alphabet, vec![horizontal, vertical])?, blocks, decode, size: n })
}

/// Bounding box of a nonempty offset list.
pub(crate) fn shape_box(shape: &[Direction]) -> (Direction, Direction) {
    let mut lo = shape[0];
    let mut hi = shape[0];
    for d in shape {
        lo = Direction::new(lo.dx.min(d.dx), lo.dy.min(d.dy));
        hi = Direction::new(hi.dx.max(d.dx), hi.dy.max(d.dy));
    }
    (lo, hi)
}
