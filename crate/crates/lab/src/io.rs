//! File formats: automata as JSON, patterns and tori as whitespace grids.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use pwa_core::{
    Alphabet, Automaton, AutomatonDef, Cell, Direction, EdgeDef, FinitePattern, Quantifier, StateDef, Sym, Torus,
};
use serde::{Deserialize, Serialize};

use crate::LabError;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
struct AutomatonFile {
    alphabet: Vec<String>,
    states: Vec<StateFile>,
    edges: Vec<EdgeFile>,
    initial: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
struct StateFile {
    id: String,
    symbol: String,
    quant: Option<QuantFile>,
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum QuantFile {
    Exists,
    Forall,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    from: String,
    to: String,
    dx: i32,
    dy: i32,
}

/// Parses the JSON description without checking it.
pub fn parse_automaton_def(text: &str) -> Result<AutomatonDef, LabError> {
    let f: AutomatonFile = serde_json::from_str(text).map_err(|e| LabError::Parse(format!("automaton JSON: {e}")))?;
    Ok(AutomatonDef {
        alphabet: f.alphabet,
        states: f
            .states
            .into_iter()
            .map(|s| StateDef {
                id: s.id,
                symbol: s.symbol,
                quant: s.quant.map(|q| match q {
                    QuantFile::Exists => Quantifier::Exists,
                    QuantFile::Forall => Quantifier::Forall,
                }),
            })
            .collect(),
        edges: f
            .edges
            .into_iter()
            .map(|e| EdgeDef { from: e.from, to: e.to, dir: Direction::new(e.dx, e.dy) })
            .collect(),
        initial: f.initial.into_iter().collect(),
    })
}

pub fn parse_automaton(text: &str) -> Result<Automaton, LabError> {
    Ok(Automaton::from_def(&parse_automaton_def(text)?)?)
}

/// Pretty JSON with a trailing newline; `initial` keys are sorted.
pub fn print_automaton_def(def: &AutomatonDef) -> String {
    let f = AutomatonFile {
        alphabet: def.alphabet.clone(),
        states: def
            .states
            .iter()
            .map(|s| StateFile {
                id: s.id.clone(),
                symbol: s.symbol.clone(),
                quant: s.quant.map(|q| match q {
                    Quantifier::Exists => QuantFile::Exists,
                    Quantifier::Forall => QuantFile::Forall,
                }),
            })
            .collect(),
        edges: def
            .edges
            .iter()
            .map(|e| EdgeFile { from: e.from.clone(), to: e.to.clone(), dx: e.dir.dx, dy: e.dir.dy })
            .collect(),
        initial: def.initial.iter().cloned().collect(),
    };
    let mut s = serde_json::to_string_pretty(&f).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn print_automaton(a: &Automaton) -> String {
    print_automaton_def(&a.to_def())
}

/// A grid file: a torus when it starts with the `torus p q` header, a
/// pattern otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grid {
    Torus(Torus),
    Pattern(FinitePattern),
}

impl Grid {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Grid::Torus(t) => t.alphabet(),
            Grid::Pattern(p) => p.alphabet(),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

fn header_numbers(line: &str, keyword: &str, count: usize) -> Option<Result<Vec<i64>, LabError>> {
    let mut words = line.split_whitespace();
    if words.next() != Some(keyword) {
        return None;
    }
    let nums: Result<Vec<i64>, _> = words.map(str::parse::<i64>).collect();
    Some(match nums {
        Ok(v) if v.len() == count => Ok(v),
        _ => Err(LabError::Parse(format!("header must be `{keyword}` followed by {count} integers"))),
    })
}

fn symbol(alphabet: &Alphabet, token: &str, line: usize) -> Result<Sym, LabError> {
    alphabet
        .lookup(token)
        .ok_or_else(|| LabError::Parse(format!("line {line}: symbol {token:?} is not in the alphabet")))
}

/// Rows top to bottom; `.` leaves a cell out of the support. The bottom-left
/// corner of the grid sits at the origin unless an `origin x y` header moves it.
pub fn parse_pattern(text: &str, alphabet: &Alphabet) -> Result<FinitePattern, LabError> {
    let mut lines: Vec<(usize, &str)> = content_lines(text).collect();
    let mut origin = (0i64, 0i64);
    if let Some(&(_, first)) = lines.first() {
        if let Some(h) = header_numbers(first, "origin", 2) {
            let h = h?;
            origin = (h[0], h[1]);
            lines.remove(0);
        }
    }
    if lines.is_empty() {
        return Err(LabError::Parse("pattern has no rows".into()));
    }
    let height = lines.len() as i64;
    let mut cells = BTreeMap::new();
    for (r, &(no, line)) in lines.iter().enumerate() {
        let y = origin.1 + height - 1 - r as i64;
        for (c, tok) in line.split_whitespace().enumerate() {
            if tok == "." {
                continue;
            }
            let cell = Cell::new(coord(origin.0 + c as i64)?, coord(y)?);
            cells.insert(cell, symbol(alphabet, tok, no)?);
        }
    }
    Ok(FinitePattern::new(alphabet.clone(), cells)?)
}

fn coord(v: i64) -> Result<i32, LabError> {
    i32::try_from(v).map_err(|_| LabError::Parse(format!("coordinate {v} out of range")))
}

/// Inverse of [`parse_pattern`]; the `origin` header is written only when
/// the bounding box does not start at the origin.
pub fn print_pattern(p: &FinitePattern) -> String {
    let (lo, hi) = p.bounding_box();
    let mut out = String::new();
    if lo != Cell::new(0, 0) {
        let _ = writeln!(out, "origin {} {}", lo.x, lo.y);
    }
    let width = p.alphabet().tokens().iter().map(String::len).max().unwrap_or(1);
    for y in (lo.y..=hi.y).rev() {
        let row: Vec<String> = (lo.x..=hi.x)
            .map(|x| {
                let tok = p.get(Cell::new(x, y)).map_or(".", |s| p.alphabet().name(s));
                format!("{tok:<width$}")
            })
            .collect();
        out.push_str(row.join(" ").trim_end());
        out.push('\n');
    }
    out
}

pub fn parse_torus(text: &str, alphabet: &Alphabet) -> Result<Torus, LabError> {
    let mut lines = content_lines(text);
    let (_, first) = lines.next().ok_or_else(|| LabError::Parse("empty torus file".into()))?;
    let dims = header_numbers(first, "torus", 2)
        .ok_or_else(|| LabError::Parse("torus file must start with `torus p q`".into()))??;
    let (p, q) = (dims[0], dims[1]);
    if p < 1 || q < 1 || p > u32::MAX as i64 || q > u32::MAX as i64 {
        return Err(LabError::Parse(format!("torus size {p}x{q} is not positive")));
    }
    let rows: Vec<(usize, &str)> = lines.collect();
    if rows.len() as i64 != q {
        return Err(LabError::Parse(format!("torus header says {q} rows, found {}", rows.len())));
    }
    let mut grid: Vec<Vec<Sym>> = Vec::with_capacity(rows.len());
    for &(no, line) in rows.iter().rev() {
        let row: Vec<Sym> = line.split_whitespace().map(|t| symbol(alphabet, t, no)).collect::<Result<_, _>>()?;
        if row.len() as i64 != p {
            return Err(LabError::Parse(format!("line {no}: expected {p} cells, found {}", row.len())));
        }
        grid.push(row);
    }
    Ok(Torus::from_rows(alphabet.clone(), &grid)?)
}

pub fn print_torus(t: &Torus) -> String {
    let mut out = format!("torus {} {}\n", t.width(), t.height());
    let width = t.alphabet().tokens().iter().map(String::len).max().unwrap_or(1);
    let rows: Vec<&[Sym]> = t.rows().collect();
    for row in rows.iter().rev() {
        let cells: Vec<String> = row.iter().map(|&s| format!("{:<width$}", t.alphabet().name(s))).collect();
        out.push_str(cells.join(" ").trim_end());
        out.push('\n');
    }
    out
}

/// Dispatches on the `torus` header.
pub fn parse_grid(text: &str, alphabet: &Alphabet) -> Result<Grid, LabError> {
    let is_torus = content_lines(text).next().is_some_and(|(_, l)| l.split_whitespace().next() == Some("torus"));
    Ok(if is_torus { Grid::Torus(parse_torus(text, alphabet)?) } else { Grid::Pattern(parse_pattern(text, alphabet)?) })
}

pub fn print_grid(g: &Grid) -> String {
    match g {
        Grid::Torus(t) => print_torus(t),
        Grid::Pattern(p) => print_pattern(p),
    }
}
