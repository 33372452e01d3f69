//! Finite patterns and periodic configurations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Sym};
use crate::geometry::{Cell, Direction};
use crate::Error;

/// A symbol assignment on a finite, nonempty support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePattern {
    alphabet: Alphabet,
    cells: BTreeMap<Cell, Sym>,
}

impl FinitePattern {
    pub fn new(alphabet: Alphabet, cells: BTreeMap<Cell, Sym>) -> Result<Self, Error> {
        if cells.is_empty() {
            return Err(Error::InvalidPattern("empty support".into()));
        }
        if let Some((c, s)) = cells.iter().find(|(_, s)| s.index() >= alphabet.len()) {
            return Err(Error::InvalidPattern(format!("symbol #{} at {c} is outside the alphabet", s.0)));
        }
        Ok(FinitePattern { alphabet, cells })
    }

    /// Full `width × height` rectangle with its lower-left corner at the origin;
    /// `rows[y][x]` with `y = 0` the bottom row.
    pub fn rectangle(alphabet: Alphabet, rows: &[Vec<Sym>]) -> Result<Self, Error> {
        let mut cells = BTreeMap::new();
        for (y, row) in rows.iter().enumerate() {
            for (x, &s) in row.iter().enumerate() {
                cells.insert(Cell::new(x as i32, y as i32), s);
            }
        }
        FinitePattern::new(alphabet, cells)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn get(&self, c: Cell) -> Option<Sym> {
        self.cells.get(&c).copied()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains_key(&c)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Support cells with their symbols, in `(x, y)` order.
    pub fn iter(&self) -> impl Iterator<Item = (Cell, Sym)> + '_ {
        self.cells.iter().map(|(&c, &s)| (c, s))
    }

    pub fn support(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.keys().copied()
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bounding_box(&self) -> (Cell, Cell) {
        let mut lo = Cell::new(i32::MAX, i32::MAX);
        let mut hi = Cell::new(i32::MIN, i32::MIN);
        for c in self.cells.keys() {
            lo = Cell::new(lo.x.min(c.x), lo.y.min(c.y));
            hi = Cell::new(hi.x.max(c.x), hi.y.max(c.y));
        }
        (lo, hi)
    }

    pub fn is_rectangular(&self) -> bool {
        let (lo, hi) = self.bounding_box();
        let area = (hi.x - lo.x + 1) as usize * (hi.y - lo.y + 1) as usize;
        area == self.cells.len()
    }

    pub fn translate(&self, d: Direction) -> FinitePattern {
        FinitePattern { alphabet: self.alphabet.clone(), cells: self.cells.iter().map(|(&c, &s)| (c + d, s)).collect() }
    }

    /// Translated so that the bounding box starts at the origin.
    pub fn normalized(&self) -> FinitePattern {
        let (lo, _) = self.bounding_box();
        self.translate(Direction::new(-lo.x, -lo.y))
    }

    pub fn count(&self, s: Sym) -> usize {
        self.cells.values().filter(|&&t| t == s).count()
    }

    pub(crate) fn with_alphabet(&self, alphabet: &Alphabet) -> Result<FinitePattern, Error> {
        let map = translation(&self.alphabet, alphabet)?;
        Ok(match map {
            None => self.clone(),
            Some(m) => FinitePattern {
                alphabet: alphabet.clone(),
                cells: self.cells.iter().map(|(&c, &s)| (c, m[s.index()])).collect(),
            },
        })
    }
}

/// The `(p, q)`-periodic configuration `x(i, j) = grid(i mod p, j mod q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Torus {
    alphabet: Alphabet,
    width: u32,
    height: u32,
    /// Row-major, bottom row first.
    grid: Vec<Sym>,
}

impl Torus {
    /// `grid` is row-major with `y = 0` (the bottom row) first.
    pub fn new(alphabet: Alphabet, width: u32, height: u32, grid: Vec<Sym>) -> Result<Self, Error> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidPattern("torus periods must be at least 1".into()));
        }
        if grid.len() != (width * height) as usize {
            return Err(Error::InvalidPattern(format!(
                "torus {width}x{height} needs {} cells, got {}",
                width * height,
                grid.len()
            )));
        }
        if grid.iter().any(|s| s.index() >= alphabet.len()) {
            return Err(Error::InvalidPattern("symbol outside the alphabet".into()));
        }
        Ok(Torus { alphabet, width, height, grid })
    }

    /// Builds from `rows[y][x]` with `y = 0` the bottom row.
    pub fn from_rows(alphabet: Alphabet, rows: &[Vec<Sym>]) -> Result<Self, Error> {
        let height = rows.len() as u32;
        let width = rows.first().map_or(0, |r| r.len() as u32);
        if rows.iter().any(|r| r.len() as u32 != width) {
            return Err(Error::InvalidPattern("ragged torus rows".into()));
        }
        Torus::new(alphabet, width, height, rows.concat())
    }

    pub fn constant(alphabet: Alphabet, width: u32, height: u32, s: Sym) -> Result<Self, Error> {
        Torus::new(alphabet, width, height, alloc::vec![s; (width * height) as usize])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn grid(&self) -> &[Sym] {
        &self.grid
    }

    pub fn cell_count(&self) -> usize {
        self.grid.len()
    }

    /// Reduces a cell of ℤ² to the fundamental domain.
    #[inline]
    pub fn wrap(&self, c: Cell) -> Cell {
        Cell::new(c.x.rem_euclid(self.width as i32), c.y.rem_euclid(self.height as i32))
    }

    #[inline]
    pub fn index_of(&self, c: Cell) -> usize {
        let c = self.wrap(c);
        c.y as usize * self.width as usize + c.x as usize
    }

    #[inline]
    pub fn cell_at(&self, index: usize) -> Cell {
        Cell::new((index % self.width as usize) as i32, (index / self.width as usize) as i32)
    }

    /// Symbol of the periodic configuration at any cell of ℤ².
    #[inline]
    pub fn get(&self, c: Cell) -> Sym {
        self.grid[self.index_of(c)]
    }

    /// Cells of the fundamental domain `[0, p) × [0, q)`.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.grid.len()).map(|i| self.cell_at(i))
    }

    /// The configuration `σ^d(x)`, i.e. `y(c) = x(c + d)`.
    pub fn shift(&self, d: Direction) -> Torus {
        let grid = (0..self.grid.len()).map(|i| self.get(self.cell_at(i) + d)).collect();
        Torus { alphabet: self.alphabet.clone(), width: self.width, height: self.height, grid }
    }

    /// The same configuration with periods `(m·p, n·q)`.
    pub fn unfold(&self, m: u32, n: u32) -> Torus {
        assert!(m >= 1 && n >= 1);
        let (w, h) = (self.width * m, self.height * n);
        let grid = (0..(w * h) as usize)
            .map(|i| self.get(Cell::new((i % w as usize) as i32, (i / w as usize) as i32)))
            .collect();
        Torus { alphabet: self.alphabet.clone(), width: w, height: h, grid }
    }

    /// Rows with `y = 0` first.
    pub fn rows(&self) -> impl Iterator<Item = &[Sym]> {
        self.grid.chunks(self.width as usize)
    }

    pub fn count(&self, s: Sym) -> usize {
        self.grid.iter().filter(|&&t| t == s).count()
    }

    /// The fundamental domain as a finite pattern.
    pub fn to_pattern(&self) -> FinitePattern {
        let cells = self.cells().map(|c| (c, self.get(c))).collect();
        FinitePattern { alphabet: self.alphabet.clone(), cells }
    }

    /// The `w × h` window of the periodic configuration with lower-left corner `at`.
    pub fn window(&self, at: Cell, w: u32, h: u32) -> FinitePattern {
        let mut cells = BTreeMap::new();
        for y in 0..h as i32 {
            for x in 0..w as i32 {
                cells.insert(Cell::new(x, y), self.get(at + Direction::new(x, y)));
            }
        }
        FinitePattern { alphabet: self.alphabet.clone(), cells }
    }

    pub(crate) fn with_alphabet(&self, alphabet: &Alphabet) -> Result<Torus, Error> {
        Ok(match translation(&self.alphabet, alphabet)? {
            None => self.clone(),
            Some(m) => Torus {
                alphabet: alphabet.clone(),
                width: self.width,
                height: self.height,
                grid: self.grid.iter().map(|s| m[s.index()]).collect(),
            },
        })
    }
}

/// `None` when no translation is needed.
fn translation(from: &Alphabet, to: &Alphabet) -> Result<Option<Vec<Sym>>, Error> {
    if from == to {
        return Ok(None);
    }
    if !from.same_set(to) {
        return Err(Error::AlphabetMismatch(format!("{from:?} vs {to:?}")));
    }
    Ok(from.translation_to(to))
}

/// Where an automaton runs: a periodic configuration or a finite pattern.
#[derive(Clone, Copy, Debug)]
pub enum Domain<'a> {
    Torus(&'a Torus),
    Pattern(&'a FinitePattern),
}

impl<'a> From<&'a Torus> for Domain<'a> {
    fn from(t: &'a Torus) -> Self {
        Domain::Torus(t)
    }
}

impl<'a> From<&'a FinitePattern> for Domain<'a> {
    fn from(p: &'a FinitePattern) -> Self {
        Domain::Pattern(p)
    }
}

impl Domain<'_> {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Domain::Torus(t) => t.alphabet(),
            Domain::Pattern(p) => p.alphabet(),
        }
    }
}
