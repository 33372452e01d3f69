use core::fmt;
use core::ops::{Add, Neg, Sub};

/// A lattice displacement. `(0, 0)` is the stay move `•`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Direction {
    pub dx: i32,
    pub dy: i32,
}

impl Direction {
    pub const STAY: Direction = Direction::new(0, 0);
    pub const RIGHT: Direction = Direction::new(1, 0);
    pub const UP: Direction = Direction::new(0, 1);
    pub const LEFT: Direction = Direction::new(-1, 0);
    pub const DOWN: Direction = Direction::new(0, -1);

    /// `•`, `→`, `↑`, `←`, `↓`.
    pub const UNIT: [Direction; 5] = [Self::STAY, Self::RIGHT, Self::UP, Self::LEFT, Self::DOWN];

    pub const fn new(dx: i32, dy: i32) -> Self {
        Direction { dx, dy }
    }

    pub fn is_unit(self) -> bool {
        self.dx.abs() + self.dy.abs() <= 1
    }

    pub fn manhattan(self) -> u32 {
        self.dx.unsigned_abs() + self.dy.unsigned_abs()
    }

    /// Unit steps from the origin to `self`, horizontal moves first.
    pub fn unit_path(self) -> impl Iterator<Item = Direction> {
        let h = Direction::new(self.dx.signum(), 0);
        let v = Direction::new(0, self.dy.signum());
        core::iter::repeat_n(h, self.dx.unsigned_abs() as usize)
            .chain(core::iter::repeat_n(v, self.dy.unsigned_abs() as usize))
    }

    pub fn scale(self, k: i32) -> Direction {
        Direction::new(self.dx * k, self.dy * k)
    }
}

impl Add for Direction {
    type Output = Direction;
    fn add(self, o: Direction) -> Direction {
        Direction::new(self.dx + o.dx, self.dy + o.dy)
    }
}

impl Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction::new(-self.dx, -self.dy)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dx, self.dy)
    }
}

/// A position of ℤ².
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const ORIGIN: Cell = Cell::new(0, 0);

    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    /// Row-major key with rows ordered bottom to top.
    pub fn row_major(self) -> (i32, i32) {
        (self.y, self.x)
    }
}

impl Add<Direction> for Cell {
    type Output = Cell;
    fn add(self, d: Direction) -> Cell {
        Cell::new(self.x + d.dx, self.y + d.dy)
    }
}

impl Sub for Cell {
    type Output = Direction;
    fn sub(self, o: Cell) -> Direction {
        Direction::new(self.x - o.x, self.y - o.y)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn unit_path_goes_horizontal_first() {
        let p: Vec<_> = Direction::new(2, -1).unit_path().collect();
        assert_eq!(p, [Direction::RIGHT, Direction::RIGHT, Direction::DOWN]);
        assert_eq!(Direction::STAY.unit_path().count(), 0);
    }
}
