use crate::balance::{verify, VerifyKind};
use crate::block::{Block, GroundSet, Point};
use crate::error::{Error, Result};
use crate::signed::SignedBlockSet;

/// An ordinary Steiner triple system: every pair lies in exactly one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct STSystem {
    ground: GroundSet,
    blocks: Vec<Block>,
}

impl STSystem {
    pub fn new(ground: GroundSet, blocks: impl IntoIterator<Item = Block>) -> Result<Self> {
        let mut blocks: Vec<Block> = blocks.into_iter().collect();
        blocks.sort();
        let set = SignedBlockSet::unsigned(ground, 3, blocks.iter().copied())?;
        let report = verify(&set, VerifyKind::Design { expected_s: Some(0) });
        if !report.ok {
            return Err(Error::VerificationFailed { v: ground.order(), s: 0, detail: report.to_string() });
        }
        Ok(Self { ground, blocks })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn order(&self) -> usize {
        self.ground.order()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn contains(&self, b: &Block) -> bool {
        self.blocks.binary_search(b).is_ok()
    }

    /// The block through a pair.
    pub fn block_through(&self, a: Point, b: Point) -> Block {
        let pair = Block::pair(a, b);
        *self.blocks.iter().find(|blk| blk.third(&pair).is_some()).expect("pair is covered")
    }

    pub fn to_signed(&self) -> SignedBlockSet {
        SignedBlockSet::unsigned(self.ground, 3, self.blocks.iter().copied()).expect("simple")
    }

    pub fn relabeled(&self, perm: &[Point]) -> STSystem {
        let blocks: Vec<Block> = self.blocks.iter().map(|b| b.map(|p| perm[p as usize])).collect();
        STSystem::new(self.ground, blocks).expect("relabeling preserves the system")
    }
}

/// Steiner triple system of order `n` by the Bose (n = 3 mod 6) or Skolem (n = 1 mod 6)
/// construction. Order 1 gives the empty system.
pub fn make_sts(n: usize) -> Result<STSystem> {
    let ground = GroundSet::new(n).map_err(|_| Error::InadmissibleOrder(n))?;
    let blocks = match n % 6 {
        3 => bose(n / 3),
        1 => skolem(n / 6),
        _ => return Err(Error::InadmissibleOrder(n)),
    };
    STSystem::new(ground, blocks)
}

/// Points (x, i) with x in Z_m (m odd), i in Z_3, encoded as 3x + i.
fn bose(m: usize) -> Vec<Block> {
    let pt = |x: usize, i: usize| (3 * x + i % 3) as Point;
    let op = |x: usize, y: usize| ((x + y) * (m + 1) / 2) % m;
    let mut blocks = Vec::new();
    for x in 0..m {
        blocks.push(Block::triple(pt(x, 0), pt(x, 1), pt(x, 2)));
    }
    for x in 0..m {
        for y in x + 1..m {
            for i in 0..3 {
                blocks.push(Block::triple(pt(x, i), pt(y, i), pt(op(x, y), i + 1)));
            }
        }
    }
    blocks
}

/// Points (x, i) with x in Z_2t, i in Z_3, encoded as 3x + i, plus infinity as 6t.
fn skolem(t: usize) -> Vec<Block> {
    let n2 = 2 * t;
    let inf = (6 * t) as Point;
    let pt = |x: usize, i: usize| (3 * x + i % 3) as Point;
    let op = |x: usize, y: usize| {
        let z = (x + y) % n2;
        if z % 2 == 0 {
            z / 2
        } else {
            (z - 1) / 2 + t
        }
    };
    let mut blocks = Vec::new();
    for x in 0..t {
        blocks.push(Block::triple(pt(x, 0), pt(x, 1), pt(x, 2)));
        for i in 0..3 {
            blocks.push(Block::triple(inf, pt(x + t, i), pt(x, i + 1)));
        }
    }
    for x in 0..n2 {
        for y in x + 1..n2 {
            for i in 0..3 {
                blocks.push(Block::triple(pt(x, i), pt(y, i), pt(op(x, y), i + 1)));
            }
        }
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_constructions_verify() {
        for n in [1, 3, 7, 9, 13, 15, 19, 21, 25, 27, 31, 33] {
            let sts = make_sts(n).unwrap();
            assert_eq!(sts.blocks().len(), n * (n - 1) / 6, "n = {n}");
        }
    }

    #[test]
    fn inadmissible_orders_are_rejected() {
        for n in [0, 2, 4, 5, 6, 8, 11] {
            assert!(matches!(make_sts(n), Err(Error::InadmissibleOrder(_))), "n = {n}");
        }
    }

    #[test]
    fn order_three_is_a_single_block() {
        assert_eq!(make_sts(3).unwrap().blocks(), &[Block::triple(0, 1, 2)]);
    }
}
