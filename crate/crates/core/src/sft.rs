//! Subshifts of finite type, given by forbidden patterns or by a predicate on
//! a fixed window shape.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::alphabet::{Alphabet, Sym};
use crate::geometry::{Cell, Direction};
use crate::pattern::{FinitePattern, Torus};
use crate::Error;

pub type WindowPredicate = Arc<dyn Fn(&[Sym]) -> bool + Send + Sync>;

/// A window shape with a test on the symbols read at its offsets. The window
/// anchored at `c` reads `x(c + shape[k])` into slot `k`.
#[derive(Clone)]
pub struct ShapePredicate {
    pub shape: Vec<Direction>,
    pub forbids: WindowPredicate,
}

impl fmt::Debug for ShapePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ShapePredicate").field("shape", &self.shape).finish_non_exhaustive()
    }
}

#[derive(Clone, Debug)]
pub enum Forbidden {
    /// Patterns translated so that their bounding box starts at the origin.
    Explicit(Vec<FinitePattern>),
    Predicate(Vec<ShapePredicate>),
}

#[derive(Clone, Debug)]
pub struct SftSpec {
    alphabet: Alphabet,
    forbidden: Forbidden,
}

impl SftSpec {
    pub fn explicit(alphabet: Alphabet, patterns: Vec<FinitePattern>) -> Result<SftSpec, Error> {
        let patterns =
            patterns.iter().map(|p| Ok(p.with_alphabet(&alphabet)?.normalized())).collect::<Result<Vec<_>, Error>>()?;
        Ok(SftSpec { alphabet, forbidden: Forbidden::Explicit(patterns) })
    }

    pub fn predicate(alphabet: Alphabet, predicates: Vec<ShapePredicate>) -> Result<SftSpec, Error> {
        if let Some(p) = predicates.iter().find(|p| p.shape.is_empty()) {
            return Err(Error::InvalidPattern(format!("predicate with empty shape: {p:?}")));
        }
        Ok(SftSpec { alphabet, forbidden: Forbidden::Predicate(predicates) })
    }

    /// The full shift.
    pub fn full(alphabet: Alphabet) -> SftSpec {
        SftSpec { alphabet, forbidden: Forbidden::Explicit(Vec::new()) }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &Forbidden {
        &self.forbidden
    }

    pub fn is_full_shift(&self) -> bool {
        match &self.forbidden {
            Forbidden::Explicit(p) => p.is_empty(),
            Forbidden::Predicate(p) => p.is_empty(),
        }
    }

    /// Each forbidden item as an offset list with a membership test on the
    /// symbols read there.
    pub fn windows(&self) -> Vec<Window<'_>> {
        match &self.forbidden {
            Forbidden::Explicit(ps) => ps
                .iter()
                .map(|p| Window {
                    shape: p.support().map(|c| c - Cell::ORIGIN).collect(),
                    test: WindowTest::Pattern(p.iter().map(|(_, s)| s).collect()),
                })
                .collect(),
            Forbidden::Predicate(ps) => {
                ps.iter().map(|p| Window { shape: p.shape.clone(), test: WindowTest::Predicate(&p.forbids) }).collect()
            }
        }
    }

    /// `(lo, hi)` corners of the union of all window shapes, origin included.
    pub fn extent(&self) -> (Direction, Direction) {
        let mut lo = Direction::STAY;
        let mut hi = Direction::STAY;
        for w in self.windows() {
            for d in &w.shape {
                lo = Direction::new(lo.dx.min(d.dx), lo.dy.min(d.dy));
                hi = Direction::new(hi.dx.max(d.dx), hi.dy.max(d.dy));
            }
        }
        (lo, hi)
    }

    /// Anchors in the fundamental domain of every forbidden occurrence, read
    /// cyclically, as `(window index, anchor)`.
    pub fn torus_occurrences(&self, t: &Torus) -> Result<Vec<(usize, Cell)>, Error> {
        let t = t.with_alphabet(&self.alphabet)?;
        let windows = self.windows();
        let mut out = Vec::new();
        let mut buf = Vec::new();
        for c in t.cells() {
            for (k, w) in windows.iter().enumerate() {
                buf.clear();
                buf.extend(w.shape.iter().map(|&d| t.get(c + d)));
                if w.test.matches(&buf) {
                    out.push((k, c));
                }
            }
        }
        Ok(out)
    }

    /// Occurrences lying entirely inside the support of `p`.
    pub fn pattern_occurrences(&self, p: &FinitePattern) -> Result<Vec<(usize, Cell)>, Error> {
        let p = p.with_alphabet(&self.alphabet)?;
        let windows = self.windows();
        let (lo, hi) = p.bounding_box();
        let (elo, ehi) = self.extent();
        let mut out = Vec::new();
        let mut buf = Vec::new();
        for y in lo.y - ehi.dy..=hi.y - elo.dy {
            for x in lo.x - ehi.dx..=hi.x - elo.dx {
                let c = Cell::new(x, y);
                for (k, w) in windows.iter().enumerate() {
                    buf.clear();
                    for &d in &w.shape {
                        match p.get(c + d) {
                            Some(s) => buf.push(s),
                            None => break,
                        }
                    }
                    if buf.len() == w.shape.len() && w.test.matches(&buf) {
                        out.push((k, c));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn avoided_by_torus(&self, t: &Torus) -> Result<bool, Error> {
        Ok(self.torus_occurrences(t)?.is_empty())
    }

    pub fn avoided_by_pattern(&self, p: &FinitePattern) -> Result<bool, Error> {
        Ok(self.pattern_occurrences(p)?.is_empty())
    }
}

pub struct Window<'a> {
    pub shape: Vec<Direction>,
    pub test: WindowTest<'a>,
}

pub enum WindowTest<'a> {
    Pattern(Vec<Sym>),
    Predicate(&'a WindowPredicate),
}

impl WindowTest<'_> {
    /// True when the symbols read at the window's shape are forbidden.
    pub fn matches(&self, read: &[Sym]) -> bool {
        match self {
            WindowTest::Pattern(p) => p.as_slice() == read,
            WindowTest::Predicate(f) => f(read),
        }
    }
}
