use alloc::vec::Vec;

use crate::alphabet::Sym;
use crate::pattern::{FinitePattern, Torus};
use crate::Error;

/// The `(n+1) × (k+1)` rectangle whose bottom row and left column are 1 and
/// whose other cells are 0.
pub fn kari_moore_rectangle(n: u32, k: u32) -> FinitePattern {
    FinitePattern::rectangle(super::binary(), &km_rows(n, k)).expect("nonempty rectangle")
}

/// The same rectangle repeated with periods `(n+1, k+1)`.
pub fn kari_moore_torus(n: u32, k: u32) -> Torus {
    Torus::from_rows(super::binary(), &km_rows(n, k)).expect("nonempty rectangle")
}

fn km_rows(n: u32, k: u32) -> Vec<Vec<Sym>> {
    (0..=k).map(|y| (0..=n).map(|x| Sym(u16::from(x == 0 || y == 0))).collect()).collect()
}

/// How the bound on `j` in `m = i·n + j` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FReading {
    /// `0 ≤ j < i`
    Strict,
    /// `0 ≤ j ≤ i`
    Inclusive,
}

/// `m ∈ f(n)`: some `i ≥ 0` writes `m = i·n + j` with `j` in the allowed range.
pub fn is_in_f(n: u64, m: u64, reading: FReading) -> bool {
    if n == 0 {
        return false;
    }
    (0..=m / n).any(|i| {
        let j = m - i * n;
        match reading {
            FReading::Strict => j < i,
            FReading::Inclusive => j <= i,
        }
    })
}

pub fn is_in_f_default(n: u64, m: u64) -> bool {
    is_in_f(n, m, FReading::Strict)
}

/// Largest `m ≥ 0` outside `f(n)`. Every `m ≥ n²` lies in `f(n)` under both
/// readings, so scanning up to `2n²` suffices.
pub fn complement_max(n: u64, reading: FReading) -> Result<u64, Error> {
    if n < 2 {
        return Err(Error::NoComplementFound { n });
    }
    (0..=2 * n * n).rev().find(|&m| !is_in_f(n, m, reading)).ok_or(Error::NoComplementFound { n })
}
