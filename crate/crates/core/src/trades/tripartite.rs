use crate::block::{Block, GroundSet, Point, Sign};
use crate::error::{Error, Result};
use crate::signed::SignedBlockSet;

/// All 64 transversal triples of three disjoint 4-sets, signed by the parity of the sum
/// of the 1-based positions. Volume 32.
pub fn tripartite_trade(ground: GroundSet, a: [Point; 4], b: [Point; 4], c: [Point; 4]) -> Result<SignedBlockSet> {
    let mut all: Vec<Point> = a.iter().chain(&b).chain(&c).copied().collect();
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) || all.iter().any(|&p| !ground.contains(p)) {
        return Err(Error::BadParts);
    }
    let mut entries = Vec::with_capacity(64);
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            for (k, &z) in c.iter().enumerate() {
                // 0-based positions have the same parity sum shifted by 3.
                let sign = if (i + j + k + 3) % 2 == 0 { Sign::Pos } else { Sign::Neg };
                entries.push((Block::triple(x, y, z), sign));
            }
        }
    }
    SignedBlockSet::from_entries(ground, 3, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::{verify, VerifyKind};

    #[test]
    fn twelve_points() {
        let g = GroundSet::new(12).unwrap();
        let t = tripartite_trade(g, [0, 1, 2, 3], [4, 5, 6, 7], [8, 9, 10, 11]).unwrap();
        assert_eq!(t.sign(&Block::triple(0, 4, 8)), Some(Sign::Neg));
        let r = verify(&t, VerifyKind::Trade { t: 2 });
        assert!(r.ok);
        assert_eq!((r.volume(), t.len()), (32, 64));
        assert!(tripartite_trade(g, [0, 1, 2, 3], [3, 5, 6, 7], [8, 9, 10, 11]).is_err());
    }
}
