use std::fmt;

use crate::error::{Error, Result};

/// Points are 0-based internally and printed 1-based.
pub type Point = u16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet {
    v: u16,
}

impl GroundSet {
    pub fn new(v: usize) -> Result<Self> {
        if v == 0 || v > u16::MAX as usize {
            return Err(Error::InvalidGround(v));
        }
        Ok(Self { v: v as u16 })
    }

    pub fn order(&self) -> usize {
        self.v as usize
    }

    pub fn points(&self) -> impl Iterator<Item = Point> {
        0..self.v
    }

    pub fn contains(&self, p: Point) -> bool {
        p < self.v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    /// Sign of a product of two signed factors.
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn from_value(x: i64) -> Option<Sign> {
        match x {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

/// A set of one to three distinct points, stored sorted.
///
/// Blocks of equal arity order lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    len: u8,
    pts: [Point; 3],
}

impl Block {
    pub fn new(points: &[Point]) -> Result<Block> {
        let invalid = |reason| Error::InvalidBlock {
            points: points.iter().map(|&p| p as usize).collect(),
            reason,
        };
        if points.is_empty() || points.len() > 3 {
            return Err(invalid("arity must be 1, 2 or 3"));
        }
        let mut pts = [0; 3];
        pts[..points.len()].copy_from_slice(points);
        pts[..points.len()].sort_unstable();
        if pts[..points.len()].windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("repeated point"));
        }
        Ok(Block { len: points.len() as u8, pts })
    }

    pub fn point(p: Point) -> Block {
        Block { len: 1, pts: [p, 0, 0] }
    }

    /// Panics if the points coincide; internal constructions never pass equal points.
    pub fn pair(a: Point, b: Point) -> Block {
        Block::new(&[a, b]).expect("pair of distinct points")
    }

    /// Panics if two points coincide.
    pub fn triple(a: Point, b: Point, c: Point) -> Block {
        Block::new(&[a, b, c]).expect("triple of distinct points")
    }

    pub fn points(&self) -> &[Point] {
        &self.pts[..self.len as usize]
    }

    pub fn arity(&self) -> usize {
        self.len as usize
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points().contains(&p)
    }

    pub fn max_point(&self) -> Point {
        self.pts[self.len as usize - 1]
    }

    /// All `t`-subsets in lexicographic order.
    pub fn subsets(&self, t: usize) -> Vec<Block> {
        let p = self.points();
        match (p.len(), t) {
            (n, t) if t == n => vec![*self],
            (_, 1) => p.iter().map(|&x| Block::point(x)).collect(),
            (3, 2) => vec![
                Block::pair(p[0], p[1]),
                Block::pair(p[0], p[2]),
                Block::pair(p[1], p[2]),
            ],
            _ => Vec::new(),
        }
    }

    /// Union of two disjoint blocks, or `None` if they meet or the result is too large.
    pub fn join(&self, other: &Block) -> Option<Block> {
        if self.len + other.len > 3 || self.points().iter().any(|&p| other.contains(p)) {
            return None;
        }
        let mut all = self.points().to_vec();
        all.extend_from_slice(other.points());
        Block::new(&all).ok()
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> Block {
        let mapped: Vec<Point> = self.points().iter().map(|&p| f(p)).collect();
        Block::new(&mapped).expect("injective point map")
    }

    /// The point of a triple not in `pair`, if `pair` is a sub-pair.
    pub fn third(&self, pair: &Block) -> Option<Point> {
        if self.len != 3 || pair.len != 2 || !pair.points().iter().all(|&p| self.contains(p)) {
            return None;
        }
        self.points().iter().copied().find(|&p| !pair.contains(p))
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in self.points() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}", p + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}
