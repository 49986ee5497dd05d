use crate::block::{GroundSet, Point};
use crate::error::{Error, Result};
use crate::signed::{signed_union, SignedBlockSet};
use crate::trades::appendix::{appendix_trade8, APPENDIX_VOLUMES};
use crate::trades::plan::{plan_volumes, VolumeFamily};
use crate::trades::tripartite::tripartite_trade;

/// A partition of the ground set into 4-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionIntoQuads {
    ground: GroundSet,
    parts: Vec<[Point; 4]>,
}

impl PartitionIntoQuads {
    pub fn new(ground: GroundSet, parts: Vec<[Point; 4]>) -> Result<Self> {
        if ground.order() != 4 * parts.len() {
            return Err(Error::BadPartition(format!("{} parts cannot cover {} points", parts.len(), ground.order())));
        }
        let mut seen = vec![false; ground.order()];
        for part in &parts {
            for &p in part {
                if !ground.contains(p) || std::mem::replace(&mut seen[p as usize], true) {
                    return Err(Error::BadPartition(format!("point {} repeated or out of range", p + 1)));
                }
            }
        }
        Ok(Self { ground, parts })
    }

    /// Parts {1,2,3,4}, {5,6,7,8}, ...
    pub fn consecutive(v: usize) -> Result<Self> {
        if v % 4 != 0 || v == 0 {
            return Err(Error::BadPartition(format!("{v} is not a positive multiple of 4")));
        }
        let parts = (0..v / 4).map(|i| std::array::from_fn(|j| (4 * i + j) as Point)).collect();
        Self::new(GroundSet::new(v)?, parts)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn parts(&self) -> &[[Point; 4]] {
        &self.parts
    }
}

/// Largest volume of a trade avoiding the within-part triples on `v = 4k` points.
pub fn remain_max(v: usize) -> usize {
    v * (v + 1) * (v - 4) / 12
}

/// `{4, 6, 7, ..., t - 6, t - 4, t}` with `t = remain_max(v)`, for `v >= 8` divisible by 4.
pub fn remain_volumes(v: usize) -> Vec<usize> {
    if v < 8 || v % 4 != 0 {
        return Vec::new();
    }
    let t = remain_max(v);
    let mut out = vec![4];
    out.extend(6..=t - 6);
    out.push(t - 4);
    out.push(t);
    out
}

pub fn remain_trade(partition: &PartitionIntoQuads, s: usize) -> Result<SignedBlockSet> {
    remain_in(partition.ground, &partition.parts, s)
}

/// Trade of volume `s` on the union of `parts` inside `ground`, avoiding every
/// within-part triple.
pub(crate) fn remain_in(ground: GroundSet, parts: &[[Point; 4]], s: usize) -> Result<SignedBlockSet> {
    let v = 4 * parts.len();
    if !remain_volumes(v).contains(&s) {
        return Err(Error::InfeasibleVolume { v, s });
    }
    let bridge = |x: &[Point; 4], y: &[Point; 4], vol: usize| -> Result<SignedBlockSet> {
        let map: Vec<Point> = x.iter().chain(y).copied().collect();
        appendix_trade8(vol)?.embed(ground, &map)
    };
    if parts.len() == 2 {
        return bridge(&parts[0], &parts[1], s);
    }
    // Peel off the first part X0: the rest is handled recursively, each X0 ∪ X_i by an
    // appendix column, and each X0 · X_i · X_j by a tripartite trade.
    let k = parts.len();
    let mut families = vec![VolumeFamily::new("inner", remain_volumes(v - 4))];
    for i in 1..k {
        families.push(VolumeFamily::new(format!("bridge {i}"), APPENDIX_VOLUMES));
    }
    let mut triples = Vec::new();
    for i in 1..k {
        for j in i + 1..k {
            families.push(VolumeFamily::new(format!("tripartite {i} {j}"), [32]));
            triples.push((i, j));
        }
    }
    let picks = plan_volumes(&families, s)?;
    let mut pieces = Vec::new();
    if picks[0] > 0 {
        pieces.push(remain_in(ground, &parts[1..], picks[0])?);
    }
    for i in 1..k {
        if picks[i] > 0 {
            pieces.push(bridge(&parts[0], &parts[i], picks[i])?);
        }
    }
    for (n, &(i, j)) in triples.iter().enumerate() {
        if picks[k + n] > 0 {
            pieces.push(tripartite_trade(ground, parts[0], parts[i], parts[j])?);
        }
    }
    signed_union(&pieces)
}
