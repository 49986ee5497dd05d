use crate::block::{Block, GroundSet, Point, Sign};
use crate::error::{Error, Result};
use crate::signed::SignedBlockSet;

/// The Pasch swap on six distinct points:
/// `+{xyz, xbc, yac, zab} − {abc, xbz, xyc, ayz}`.
pub fn pasch_trade(ground: GroundSet, pts: [Point; 6]) -> Result<SignedBlockSet> {
    let [x, y, z, a, b, c] = pts;
    let mut sorted = pts;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoints);
    }
    if pts.iter().any(|&p| !ground.contains(p)) {
        return Err(Error::InvalidBlock { points: pts.iter().map(|&p| p as usize).collect(), reason: "point outside ground set" });
    }
    let t = Block::triple;
    SignedBlockSet::from_entries(
        ground,
        3,
        [
            (t(x, y, z), Sign::Pos),
            (t(x, b, c), Sign::Pos),
            (t(y, a, c), Sign::Pos),
            (t(z, a, b), Sign::Pos),
            (t(a, b, c), Sign::Neg),
            (t(x, b, z), Sign::Neg),
            (t(x, y, c), Sign::Neg),
            (t(a, y, z), Sign::Neg),
        ],
    )
}

/// Finds a Pasch swap whose negative part cancels three positive blocks of `design`
/// and whose other blocks are all absent from it. Adding the swap raises `s` by one.
///
/// Candidates are scanned in lexicographic order, so the result is deterministic.
pub fn pasch_step(design: &SignedBlockSet) -> Option<SignedBlockSet> {
    let pos: Vec<Block> = design.positive().collect();
    let is_pos = |b: &Block| design.sign(b) == Some(Sign::Pos);
    let absent = |b: Block| !design.contains(&b);
    for &first in &pos {
        let p = first.points();
        for (x, b, z) in [(p[0], p[1], p[2]), (p[1], p[0], p[2]), (p[2], p[0], p[1])] {
            for &second in pos.iter().filter(|blk| blk.contains(x) && **blk != first) {
                let others: Vec<Point> = second.points().iter().copied().filter(|&q| q != x).collect();
                for (y, c) in [(others[0], others[1]), (others[1], others[0])] {
                    if y == z || y == b || c == z || c == b {
                        continue;
                    }
                    for &third in pos.iter().filter(|blk| blk.contains(y) && blk.contains(z)) {
                        let a = third.third(&Block::pair(y, z)).expect("pair inside");
                        if [x, b, c].contains(&a) || !is_pos(&third) {
                            continue;
                        }
                        let fresh = [
                            Block::triple(a, b, c),
                            Block::triple(x, y, z),
                            Block::triple(x, b, c),
                            Block::triple(y, a, c),
                            Block::triple(z, a, b),
                        ];
                        if fresh.iter().all(|f| absent(*f)) {
                            return pasch_trade(design.ground(), [x, y, z, a, b, c]).ok();
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::{verify, VerifyKind};

    #[test]
    fn pasch_swap_is_a_pair_trade() {
        let g = GroundSet::new(6).unwrap();
        let p = pasch_trade(g, [0, 1, 2, 3, 4, 5]).unwrap();
        let r = verify(&p, VerifyKind::Trade { t: 2 });
        assert!(r.ok, "{r}");
        assert_eq!(r.volume(), 4);
        assert!(matches!(pasch_trade(g, [0, 1, 2, 3, 4, 4]), Err(Error::DuplicatePoints)));
    }
}
