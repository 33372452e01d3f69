//! Instance streams and deciders for `compare` and `enum`.
//!
//! Instances are numbered: exhaustive tori by shape (rows of shapes with the
//! height outer, as in `all_tori_upto`), then exhaustive rectangular
//! patterns, then seeded samples, then planted labyrinths. Workers evaluate
//! contiguous chunks and results are consumed in instance order, so output
//! never depends on the number of workers.

use std::ops::Range;

use pwa_core::gallery::{self, in_cone_labyrinth, in_even_runs, in_ssu, planted_labyrinth};
use pwa_core::generate::{nth_torus, random_torus_upto};
use pwa_core::semantics::{accepts, brute_force_accepts};
use pwa_core::{Alphabet, Automaton, Domain};
use rayon::prelude::*;

use crate::io::Grid;
use crate::rng::pick_stream;
use crate::LabError;

pub const INSTANCE_LIMIT: u128 = 10_000_000;

/// Instances evaluated per parallel batch; also the granularity at which a
/// comparison stops after a disagreement.
const CHUNK: u64 = 4096;

/// Stream index offset separating planted labyrinths from plain samples.
const PLANTED_STREAM: u64 = 1 << 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub count: u64,
    pub seed: u64,
    /// Largest torus drawn; sides are uniform in `1..=max`.
    pub max: (u32, u32),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Plan {
    pub tori: Option<(u32, u32)>,
    pub patterns: Option<(u32, u32)>,
    pub samples: Option<Sampling>,
    /// `(count, seed)`; only over the cone-labyrinth alphabet.
    pub planted: Option<(u64, u64)>,
}

#[derive(Clone, Copy, Debug)]
enum Block {
    Tori { w: u32, h: u32, count: u64 },
    Patterns { w: u32, h: u32, count: u64 },
    Samples { count: u64 },
    Planted { count: u64 },
}

impl Block {
    fn count(self) -> u64 {
        match self {
            Block::Tori { count, .. } | Block::Patterns { count, .. } => count,
            Block::Samples { count } | Block::Planted { count } => count,
        }
    }
}

pub struct Instance {
    pub label: String,
    pub grid: Grid,
}

/// The numbered instance list of a plan over one alphabet.
pub struct Instances {
    alphabet: Alphabet,
    blocks: Vec<Block>,
    sampling: Option<Sampling>,
    planted_seed: u64,
    total: u64,
}

fn shapes(max: (u32, u32)) -> impl Iterator<Item = (u32, u32)> {
    (1..=max.1).flat_map(move |h| (1..=max.0).map(move |w| (w, h)))
}

impl Instances {
    pub fn new(plan: &Plan, alphabet: &Alphabet) -> Result<Instances, LabError> {
        let k = alphabet.len() as u128;
        let mut blocks = Vec::new();
        let mut total: u128 = 0;
        let mut add = |b: Block, n: u128, total: &mut u128| -> Result<(), LabError> {
            *total = total.saturating_add(n);
            if *total > INSTANCE_LIMIT {
                return Err(LabError::BoundTooLarge { instances: *total, limit: INSTANCE_LIMIT });
            }
            blocks.push(b);
            Ok(())
        };
        let grids = |w: u32, h: u32| -> u128 {
            let cells = w as u128 * h as u128;
            if cells >= 128 {
                u128::MAX
            } else {
                k.checked_pow(cells as u32).unwrap_or(u128::MAX)
            }
        };
        for (max, torus) in [(plan.tori, true), (plan.patterns, false)] {
            let Some(max) = max else { continue };
            if max.0 == 0 || max.1 == 0 {
                return Err(LabError::Usage("grid bounds must be positive".into()));
            }
            for (w, h) in shapes(max) {
                let n = grids(w, h);
                let count = n.min(u64::MAX as u128) as u64;
                let b = if torus { Block::Tori { w, h, count } } else { Block::Patterns { w, h, count } };
                add(b, n, &mut total)?;
            }
        }
        if let Some(s) = plan.samples {
            if s.max.0 == 0 || s.max.1 == 0 {
                return Err(LabError::Usage("sample bounds must be positive".into()));
            }
            add(Block::Samples { count: s.count }, s.count as u128, &mut total)?;
        }
        let mut planted_seed = 0;
        if let Some((count, seed)) = plan.planted {
            if !alphabet.same_set(&gallery::cone_labyrinth_alphabet()) {
                return Err(LabError::Usage("planted labyrinths need the alphabet {0, 1, #}".into()));
            }
            planted_seed = seed;
            add(Block::Planted { count }, count as u128, &mut total)?;
        }
        Ok(Instances { alphabet: alphabet.clone(), blocks, sampling: plan.samples, planted_seed, total: total as u64 })
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn get(&self, mut i: u64) -> Instance {
        for &b in &self.blocks {
            if i >= b.count() {
                i -= b.count();
                continue;
            }
            return match b {
                Block::Tori { w, h, .. } => Instance {
                    label: format!("torus {w}x{h} #{i}"),
                    grid: Grid::Torus(nth_torus(&self.alphabet, w, h, i)),
                },
                Block::Patterns { w, h, .. } => Instance {
                    label: format!("pattern {w}x{h} #{i}"),
                    grid: Grid::Pattern(nth_torus(&self.alphabet, w, h, i).to_pattern()),
                },
                Block::Samples { .. } => {
                    let s = self.sampling.expect("sample block has a sampling");
                    let t = random_torus_upto(&mut pick_stream(s.seed, i), &self.alphabet, s.max.0, s.max.1);
                    Instance { label: format!("sample #{i} torus {}x{}", t.width(), t.height()), grid: Grid::Torus(t) }
                }
                Block::Planted { .. } => {
                    let t = planted_labyrinth(pick_stream(self.planted_seed, PLANTED_STREAM + i));
                    Instance { label: format!("planted #{i} torus {}x{}", t.width(), t.height()), grid: Grid::Torus(t) }
                }
            };
        }
        panic!("instance index out of range")
    }
}

/// Direct membership tests usable in place of a second automaton.
#[derive(Clone, Debug)]
pub enum Oracle {
    EvenRuns,
    Ssu,
    ConeLabyrinth,
    /// Exhaustive search on the automaton under test.
    BruteForce(Automaton),
}

pub const ORACLE_NAMES: [&str; 4] = ["even-runs", "ssu", "cone-labyrinth", "brute-force"];

impl Oracle {
    pub fn by_name(name: &str, subject: &Automaton) -> Result<Oracle, LabError> {
        Ok(match name {
            "even-runs" => Oracle::EvenRuns,
            "ssu" => Oracle::Ssu,
            "cone-labyrinth" => Oracle::ConeLabyrinth,
            "brute-force" => Oracle::BruteForce(subject.clone()),
            _ => return Err(LabError::Usage(format!("unknown oracle {name:?}; known: {}", ORACLE_NAMES.join(", ")))),
        })
    }
}

#[derive(Clone, Debug)]
pub enum Decider {
    Automaton(Automaton),
    Oracle(Oracle),
}

fn domain(g: &Grid) -> Domain<'_> {
    match g {
        Grid::Torus(t) => Domain::Torus(t),
        Grid::Pattern(p) => Domain::Pattern(p),
    }
}

impl Decider {
    pub fn decide(&self, g: &Grid) -> Result<bool, LabError> {
        Ok(match self {
            Decider::Automaton(a) => accepts(a, domain(g))?,
            Decider::Oracle(Oracle::EvenRuns) => match g {
                Grid::Torus(t) => in_even_runs(t)?,
                Grid::Pattern(_) => return Err(LabError::Usage("oracle even-runs decides tori only".into())),
            },
            Decider::Oracle(Oracle::Ssu) => in_ssu(domain(g))?,
            Decider::Oracle(Oracle::ConeLabyrinth) => in_cone_labyrinth(domain(g))?.in_subshift,
            Decider::Oracle(Oracle::BruteForce(a)) => brute_force_accepts(a, domain(g))?,
        })
    }
}

/// Sequential with one job, otherwise a dedicated rayon pool.
pub struct Exec {
    pool: Option<rayon::ThreadPool>,
}

impl Exec {
    /// `jobs == 0` lets rayon pick the number of workers.
    pub fn new(jobs: usize) -> Result<Exec, LabError> {
        if jobs == 1 {
            return Ok(Exec { pool: None });
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| LabError::Usage(format!("cannot start workers: {e}")))?;
        Ok(Exec { pool: Some(pool) })
    }

    pub fn sequential() -> Exec {
        Exec { pool: None }
    }

    /// Results in index order.
    pub fn map<T: Send>(&self, range: Range<u64>, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
        match &self.pool {
            None => range.map(f).collect(),
            Some(pool) => pool.install(|| range.into_par_iter().map(f).collect()),
        }
    }
}

fn chunks(n: u64) -> impl Iterator<Item = Range<u64>> {
    (0..n.div_ceil(CHUNK)).map(move |c| c * CHUNK..((c + 1) * CHUNK).min(n))
}

#[derive(Debug)]
pub struct Disagreement {
    pub index: u64,
    pub label: String,
    pub grid: Grid,
    pub left: bool,
    pub right: bool,
}

#[derive(Debug)]
pub struct Comparison {
    /// Instances examined, up to and including a disagreement.
    pub examined: u64,
    pub disagreement: Option<Disagreement>,
}

/// The first instance, in instance order, on which the deciders differ.
pub fn compare(a: &Decider, b: &Decider, inst: &Instances, exec: &Exec) -> Result<Comparison, LabError> {
    for range in chunks(inst.len()) {
        let results = exec.map(range.clone(), |i| {
            let g = inst.get(i).grid;
            Ok::<_, LabError>((a.decide(&g)?, b.decide(&g)?))
        });
        for (i, r) in range.zip(results) {
            let (left, right) = r?;
            if left != right {
                let Instance { label, grid } = inst.get(i);
                return Ok(Comparison {
                    examined: i + 1,
                    disagreement: Some(Disagreement { index: i, label, grid, left, right }),
                });
            }
        }
    }
    Ok(Comparison { examined: inst.len(), disagreement: None })
}

/// Every verdict in instance order, handed to `sink` with the label.
pub fn enumerate(
    a: &Decider,
    inst: &Instances,
    exec: &Exec,
    mut sink: impl FnMut(u64, &str, bool) -> Result<(), LabError>,
) -> Result<(), LabError> {
    for range in chunks(inst.len()) {
        let results = exec.map(range.clone(), |i| {
            let Instance { label, grid } = inst.get(i);
            a.decide(&grid).map(|v| (label, v))
        });
        for (i, r) in range.zip(results) {
            let (label, v) = r?;
            sink(i, &label, v)?;
        }
    }
    Ok(())
}
