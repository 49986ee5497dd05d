use crate::block::{Block, GroundSet, Point, Sign};
use crate::error::{Error, Result};
use crate::signed::SignedBlockSet;

/// Volumes of the stored columns, in table order.
pub const APPENDIX_VOLUMES: [usize; 16] = [4, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 20, 24];

/// One row per triple of {1..8}: the 1-based triple, then one of `+ - .` per column.
pub(crate) const APPENDIX_TABLE: &str = include_str!("data/appendix.txt");

/// The table rows as (triple, sign per column).
pub fn appendix_table() -> Vec<(Block, [Option<Sign>; 16])> {
    APPENDIX_TABLE
        .lines()
        .map(|line| {
            let (label, cells) = line.split_once(' ').expect("row label");
            let pts: Vec<Point> = label.bytes().map(|d| (d - b'1') as Point).collect();
            let mut signs = [None; 16];
            for (i, c) in cells.chars().enumerate() {
                signs[i] = match c {
                    '+' => Some(Sign::Pos),
                    '-' => Some(Sign::Neg),
                    _ => None,
                };
            }
            (Block::new(&pts).expect("triple label"), signs)
        })
        .collect()
}

/// The stored trade of volume `s` on points 1..8 with parts {1,2,3,4} and {5,6,7,8}.
pub fn appendix_trade8(s: usize) -> Result<SignedBlockSet> {
    let col = APPENDIX_VOLUMES.iter().position(|&x| x == s).ok_or(Error::NotInTable(s))?;
    let entries = appendix_table().into_iter().filter_map(|(b, signs)| signs[col].map(|sg| (b, sg)));
    SignedBlockSet::from_entries(GroundSet::new(8)?, 3, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::{verify, VerifyKind};

    fn fnv1a(bytes: &[u8]) -> u64 {
        bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
    }

    #[test]
    fn table_checksum() {
        assert_eq!(APPENDIX_TABLE.len(), 1176);
        assert_eq!(fnv1a(APPENDIX_TABLE.as_bytes()), 0x1001_237f_2785_d8cd);
        assert_eq!(appendix_table().len(), 56);
    }

    #[test]
    fn every_column_is_a_trade_avoiding_parts() {
        for s in APPENDIX_VOLUMES {
            let t = appendix_trade8(s).unwrap();
            let r = verify(&t, VerifyKind::Trade { t: 2 });
            assert!(r.ok, "column {s}: {r}");
            assert_eq!(r.volume(), s);
            for b in t.support() {
                let low = b.points().iter().filter(|&&p| p < 4).count();
                assert!(low == 1 || low == 2, "column {s} uses within-part triple {b}");
            }
        }
    }

    #[test]
    fn column_four_and_twenty_four() {
        let t = appendix_trade8(4).unwrap();
        let pos: Vec<String> = t.positive().map(|b| b.to_string()).collect();
        let neg: Vec<String> = t.negative().map(|b| b.to_string()).collect();
        assert_eq!(pos, ["2 4 8", "2 6 7", "3 4 6", "3 7 8"]);
        assert_eq!(neg, ["2 4 6", "2 7 8", "3 4 8", "3 6 7"]);
        assert_eq!(appendix_trade8(24).unwrap().len(), 48);
        assert!(matches!(appendix_trade8(5), Err(Error::NotInTable(5))));
    }
}
