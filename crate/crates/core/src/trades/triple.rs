use crate::block::{Block, GroundSet, Point, Sign};
use crate::error::{Error, Result};
use crate::signed::{product, signed_points, signed_union, SignedBlockSet};
use crate::trades::pair::{pair_trade_seeded, pair_trade_volumes, PairTradeMode};
use crate::trades::plan::{plan_volumes, VolumeFamily};
use crate::trades::remain::{remain_in, remain_volumes};

/// `{4, 6, 7, ..., t - 6, t - 4, t}` with `t = C(v, 3) / 2`, for `v = 2 mod 4`.
pub fn triple_trade_volumes(v: usize) -> Vec<usize> {
    if v < 6 || v % 4 != 2 {
        return Vec::new();
    }
    let t = v * (v - 1) * (v - 2) / 12;
    let mut out: Vec<usize> = [4, 6].into_iter().chain(7..=t.saturating_sub(6)).collect();
    out.extend([t - 4, t]);
    out.sort_unstable();
    out.dedup();
    out
}

pub fn triple_trade(v: usize, s: usize) -> Result<SignedBlockSet> {
    triple_trade_seeded(v, s, 0)
}

/// Simple T(2,3,v) trade for `v = 4m + 2`.
///
/// Points 1 and 2 are special (`a`, `b`); the rest split into quads `{p,q,r,u}`. Three
/// independent pieces: a trade on the quads avoiding within-quad triples, a frame of
/// volume `6m`, and `{a, -b}·K` for a pair trade `K` missing the pairs `pq` and `ru` of
/// every quad. The frame holds `+pqr +pqu -pru -qru`, `a·(-pq +ru)`, `b·(-pq +ru)` and
/// `ab·(+p +q -r -u)` for each quad.
pub fn triple_trade_seeded(v: usize, s: usize, seed: u64) -> Result<SignedBlockSet> {
    if !triple_trade_volumes(v).contains(&s) {
        return Err(Error::InfeasibleVolume { v, s });
    }
    let ground = GroundSet::new(v)?;
    let m = (v - 2) / 4;
    let (a, b): (Point, Point) = (0, 1);
    let quads: Vec<[Point; 4]> = (0..m).map(|i| std::array::from_fn(|j| (2 + 4 * i + j) as Point)).collect();
    let w = 4 * m;
    let matching: Vec<Block> =
        (0..m).flat_map(|i| [Block::pair(4 * i as Point, 4 * i as Point + 1), Block::pair(4 * i as Point + 2, 4 * i as Point + 3)]).collect();
    let k_mode = PairTradeMode::AvoidMatching(matching);
    let families = [
        VolumeFamily::new("quads", remain_volumes(w)),
        VolumeFamily::new("frame", [6 * m]),
        VolumeFamily::new("a,-b times pair trade", pair_trade_volumes(w, &k_mode)?.into_iter().map(|x| 2 * x)),
    ];
    let picks = plan_volumes(&families, s)?;
    let mut pieces = Vec::new();
    if picks[0] > 0 {
        pieces.push(remain_in(ground, &quads, picks[0])?);
    }
    if picks[1] > 0 {
        pieces.push(frame(ground, a, b, &quads)?);
    }
    if picks[2] > 0 {
        let local = pair_trade_seeded(w, picks[2] / 2, &k_mode, seed)?;
        let map: Vec<Point> = (2..v as Point).collect();
        let k = local.embed(ground, &map)?;
        let ab = signed_points(ground, &[(a, Sign::Pos), (b, Sign::Neg)])?;
        pieces.push(product(&ab, &k)?);
    }
    signed_union(&pieces)
}

fn frame(ground: GroundSet, a: Point, b: Point, quads: &[[Point; 4]]) -> Result<SignedBlockSet> {
    let mut entries = Vec::new();
    for &[p, q, r, u] in quads {
        let t = Block::triple;
        entries.extend([
            (t(p, q, r), Sign::Pos),
            (t(p, q, u), Sign::Pos),
            (t(p, r, u), Sign::Neg),
            (t(q, r, u), Sign::Neg),
            (t(a, p, q), Sign::Neg),
            (t(a, r, u), Sign::Pos),
            (t(b, p, q), Sign::Neg),
            (t(b, r, u), Sign::Pos),
            (t(a, b, p), Sign::Pos),
            (t(a, b, q), Sign::Pos),
            (t(a, b, r), Sign::Neg),
            (t(a, b, u), Sign::Neg),
        ]);
    }
    SignedBlockSet::from_entries(ground, 3, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::{verify, VerifyKind};

    #[test]
    fn volume_sets() {
        assert_eq!(triple_trade_volumes(6), vec![4, 6, 10]);
        let ten = triple_trade_volumes(10);
        assert_eq!(ten.last(), Some(&60));
        assert!(!ten.contains(&5) && !ten.contains(&55) && !ten.contains(&57));
        assert!(triple_trade_volumes(8).is_empty());
    }

    #[test]
    fn every_volume_verifies() {
        for v in [6, 10, 14] {
            for s in triple_trade_volumes(v) {
                let t = triple_trade(v, s).unwrap_or_else(|e| panic!("v={v} s={s}: {e}"));
                let r = verify(&t, VerifyKind::Trade { t: 2 });
                assert!(r.ok && r.volume() == s, "v={v} s={s}: {r}");
            }
        }
    }

    #[test]
    fn maximum_covers_all_triples() {
        assert_eq!(triple_trade(10, 60).unwrap().len(), 120);
        assert!(matches!(triple_trade(6, 5), Err(Error::InfeasibleVolume { .. })));
    }
}
