use std::collections::BTreeMap;

use crate::block::{Block, GroundSet, Point, Sign};
use crate::error::{Error, Result};

/// A simple signed collection of `k`-subsets of a ground set.
///
/// Each block appears at most once, with sign `+` or `-`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedBlockSet {
    ground: GroundSet,
    k: usize,
    entries: BTreeMap<Block, Sign>,
}

impl SignedBlockSet {
    pub fn new(ground: GroundSet, k: usize) -> Result<Self> {
        if !(1..=3).contains(&k) {
            return Err(Error::ArityTooLarge(k));
        }
        Ok(Self { ground, k, entries: BTreeMap::new() })
    }

    pub fn from_entries(
        ground: GroundSet,
        k: usize,
        entries: impl IntoIterator<Item = (Block, Sign)>,
    ) -> Result<Self> {
        let mut set = Self::new(ground, k)?;
        let mut repeated = Vec::new();
        for (block, sign) in entries {
            match set.insert(block, sign) {
                Err(Error::NonSimple(mut b)) => repeated.append(&mut b),
                other => other?,
            }
        }
        if repeated.is_empty() {
            Ok(set)
        } else {
            Err(Error::NonSimple(repeated))
        }
    }

    /// All blocks positive.
    pub fn unsigned(ground: GroundSet, k: usize, blocks: impl IntoIterator<Item = Block>) -> Result<Self> {
        Self::from_entries(ground, k, blocks.into_iter().map(|b| (b, Sign::Pos)))
    }

    pub fn insert(&mut self, block: Block, sign: Sign) -> Result<()> {
        if block.arity() != self.k || !self.ground.contains(block.max_point()) {
            return Err(Error::BlockMismatch { block, expected: self.k, v: self.ground.order() });
        }
        if self.entries.contains_key(&block) {
            return Err(Error::NonSimple(vec![block]));
        }
        self.entries.insert(block, sign);
        Ok(())
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn v(&self) -> usize {
        self.ground.order()
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sign(&self, block: &Block) -> Option<Sign> {
        self.entries.get(block).copied()
    }

    pub fn contains(&self, block: &Block) -> bool {
        self.entries.contains_key(block)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Block, Sign)> + '_ {
        self.entries.iter().map(|(b, s)| (*b, *s))
    }

    pub fn positive(&self) -> impl Iterator<Item = Block> + '_ {
        self.iter().filter(|e| e.1 == Sign::Pos).map(|e| e.0)
    }

    pub fn negative(&self) -> impl Iterator<Item = Block> + '_ {
        self.iter().filter(|e| e.1 == Sign::Neg).map(|e| e.0)
    }

    pub fn support(&self) -> impl Iterator<Item = Block> + '_ {
        self.entries.keys().copied()
    }

    pub fn pos_count(&self) -> usize {
        self.positive().count()
    }

    pub fn neg_count(&self) -> usize {
        self.negative().count()
    }

    /// Number of negative blocks; for a signed design this is `s`.
    pub fn s(&self) -> usize {
        self.neg_count()
    }

    /// Number of positive blocks; for a trade this is the volume.
    pub fn volume(&self) -> usize {
        self.pos_count()
    }

    pub fn negated(&self) -> SignedBlockSet {
        SignedBlockSet {
            ground: self.ground,
            k: self.k,
            entries: self.entries.iter().map(|(b, s)| (*b, s.flip())).collect(),
        }
    }

    /// Copies the blocks into a larger ground set, sending local point `i` to `map[i]`.
    pub fn embed(&self, ground: GroundSet, map: &[Point]) -> Result<SignedBlockSet> {
        if map.len() < self.v() {
            return Err(Error::GroundMismatch { left: self.v(), right: map.len() });
        }
        let mut seen = vec![false; ground.order()];
        for &p in &map[..self.v()] {
            if !ground.contains(p) || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::NotAPermutation);
            }
        }
        Self::from_entries(ground, self.k, self.iter().map(|(b, s)| (b.map(|p| map[p as usize]), s)))
    }
}

/// Sum of signed sets; errors when some block's total coefficient leaves {-1, 0, 1}.
pub fn signed_union(parts: &[SignedBlockSet]) -> Result<SignedBlockSet> {
    let first = parts.first().ok_or_else(|| Error::Unsupported("union of no parts".into()))?;
    let mut total: BTreeMap<Block, i64> = BTreeMap::new();
    for part in parts {
        if part.ground != first.ground {
            return Err(Error::GroundMismatch { left: first.v(), right: part.v() });
        }
        if part.k != first.k {
            return Err(Error::ArityMismatch { left: first.k, right: part.k });
        }
        for (b, s) in part.iter() {
            *total.entry(b).or_default() += s.value();
        }
    }
    let bad: Vec<Block> = total.iter().filter(|(_, c)| c.abs() > 1).map(|(b, _)| *b).collect();
    if !bad.is_empty() {
        return Err(Error::NonSimple(bad));
    }
    let entries = total.into_iter().filter_map(|(b, c)| Sign::from_value(c).map(|s| (b, s)));
    SignedBlockSet::from_entries(first.ground, first.k, entries)
}

/// Blockwise product `{a ∪ b}` with multiplied signs; the operands must use disjoint points.
pub fn product(a: &SignedBlockSet, b: &SignedBlockSet) -> Result<SignedBlockSet> {
    if a.ground != b.ground {
        return Err(Error::GroundMismatch { left: a.v(), right: b.v() });
    }
    let k = a.k + b.k;
    if k > 3 {
        return Err(Error::ArityTooLarge(k));
    }
    let points_of = |s: &SignedBlockSet| {
        let mut used = vec![false; s.v()];
        for blk in s.support() {
            for &p in blk.points() {
                used[p as usize] = true;
            }
        }
        used
    };
    let (ua, ub) = (points_of(a), points_of(b));
    if ua.iter().zip(&ub).any(|(x, y)| *x && *y) {
        return Err(Error::OverlappingSupports);
    }
    let mut out = SignedBlockSet::new(a.ground, k)?;
    for (x, sx) in a.iter() {
        for (y, sy) in b.iter() {
            let joined = x.join(&y).expect("disjoint supports");
            out.insert(joined, sx.times(sy))?;
        }
    }
    Ok(out)
}

/// Applies a permutation of the ground set given as `perm[old] = new`.
pub fn relabel(set: &SignedBlockSet, perm: &[Point]) -> Result<SignedBlockSet> {
    if perm.len() != set.v() {
        return Err(Error::NotAPermutation);
    }
    set.embed(set.ground, perm)
}

/// Signed set of singletons, handy as a product factor.
pub fn signed_points(ground: GroundSet, points: &[(Point, Sign)]) -> Result<SignedBlockSet> {
    SignedBlockSet::from_entries(ground, 1, points.iter().map(|&(p, s)| (Block::point(p), s)))
}

/// Signed set of pairs.
pub fn signed_pairs(ground: GroundSet, pairs: &[(Point, Point, Sign)]) -> Result<SignedBlockSet> {
    SignedBlockSet::from_entries(ground, 2, pairs.iter().map(|&(a, b, s)| (Block::pair(a, b), s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: usize) -> GroundSet {
        GroundSet::new(v).unwrap()
    }

    #[test]
    fn insert_rejects_duplicates_and_bad_blocks() {
        let mut s = SignedBlockSet::new(g(4), 3).unwrap();
        s.insert(Block::triple(0, 1, 2), Sign::Pos).unwrap();
        assert!(matches!(s.insert(Block::triple(0, 1, 2), Sign::Neg), Err(Error::NonSimple(_))));
        assert!(s.insert(Block::pair(0, 1), Sign::Pos).is_err());
        assert!(s.insert(Block::triple(1, 2, 4), Sign::Pos).is_err());
    }

    #[test]
    fn union_cancels_opposite_signs() {
        let a = SignedBlockSet::unsigned(g(4), 3, [Block::triple(0, 1, 2)]).unwrap();
        let u = signed_union(&[a.clone(), a.negated()]).unwrap();
        assert!(u.is_empty());
        let err = signed_union(&[a.clone(), a]).unwrap_err();
        assert!(matches!(err, Error::NonSimple(b) if b == vec![Block::triple(0, 1, 2)]));
    }

    #[test]
    fn product_multiplies_signs() {
        let ground = g(5);
        let p = signed_points(ground, &[(0, Sign::Pos), (1, Sign::Neg)]).unwrap();
        let q = signed_pairs(ground, &[(2, 3, Sign::Pos), (3, 4, Sign::Neg)]).unwrap();
        let r = product(&p, &q).unwrap();
        assert_eq!(r.len(), 4);
        assert_eq!(r.sign(&Block::triple(1, 3, 4)), Some(Sign::Pos));
        assert_eq!(r.sign(&Block::triple(0, 3, 4)), Some(Sign::Neg));
        assert!(matches!(product(&p, &p), Err(Error::ArityMismatch { .. }) | Err(Error::OverlappingSupports)));
    }

    #[test]
    fn relabel_requires_permutation() {
        let a = SignedBlockSet::unsigned(g(3), 3, [Block::triple(0, 1, 2)]).unwrap();
        assert!(relabel(&a, &[0, 0, 1]).is_err());
        assert_eq!(relabel(&a, &[2, 0, 1]).unwrap(), a);
    }
}
