use crate::balance::{verify, VerifyKind};
use crate::block::{Block, GroundSet, Point, Sign};
use crate::error::{Error, Result};
use crate::ingredients::{one_factorization, FactorizationInput, LatinSquare};
use crate::signed::{product, signed_points, signed_union, SignedBlockSet};
use crate::trades::{pair_trade_seeded, pair_trade_volumes, plan_volumes, PairTradeMode, VolumeFamily};

use super::{Certificate, Piece, Route};

/// A piece whose volume is chosen by the planner.
pub(super) struct Flex<'a> {
    pub family: VolumeFamily,
    pub build: Box<dyn Fn(usize) -> Result<SignedBlockSet> + 'a>,
}

impl<'a> Flex<'a> {
    pub fn new(
        label: impl Into<String>,
        values: impl IntoIterator<Item = usize>,
        build: impl Fn(usize) -> Result<SignedBlockSet> + 'a,
    ) -> Self {
        Flex { family: VolumeFamily::new(label, values), build: Box::new(build) }
    }
}

/// Collects the pieces of one construction and checks the result at the end.
pub(super) struct Assembly {
    pub ground: GroundSet,
    parts: Vec<SignedBlockSet>,
    pieces: Vec<Piece>,
    ingredients: Vec<String>,
}

impl Assembly {
    pub fn new(v: usize) -> Result<Self> {
        Ok(Assembly { ground: GroundSet::new(v)?, parts: Vec::new(), pieces: Vec::new(), ingredients: Vec::new() })
    }

    pub fn ingredient(&mut self, note: &str) {
        self.ingredients.push(note.to_string());
    }

    /// Base pieces are recorded with their negative count, trades with their volume.
    pub fn add(&mut self, label: &str, set: SignedBlockSet) {
        self.pieces.push(Piece { label: label.to_string(), volume: set.neg_count() });
        self.parts.push(set);
    }

    /// Plans volumes for `flex` summing to `target` and adds the chosen pieces.
    pub fn add_planned(&mut self, flex: Vec<Flex<'_>>, target: usize) -> Result<Vec<usize>> {
        let families: Vec<VolumeFamily> = flex.iter().map(|f| f.family.clone()).collect();
        let picks = plan_volumes(&families, target)?;
        for (f, &vol) in flex.iter().zip(&picks) {
            if vol > 0 {
                let set = (f.build)(vol)?;
                self.add(&f.family.label, set);
            }
        }
        Ok(picks)
    }

    pub fn union(&self) -> Result<SignedBlockSet> {
        if self.parts.is_empty() {
            return SignedBlockSet::new(self.ground, 3);
        }
        signed_union(&self.parts)
    }

    pub fn finish(self, s: usize, route: Route, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
        let v = self.ground.order();
        let design = self.union()?;
        let report = verify(&design, VerifyKind::Design { expected_s: Some(s) });
        if !report.ok {
            return Err(Error::VerificationFailed { v, s, detail: report.to_string() });
        }
        let cert = Certificate { v, s: report.s(), seed, route, pieces: self.pieces, ingredients: self.ingredients, report };
        Ok((design, cert))
    }
}

/// `{plus, -minus} · K` where `K` is a pair trade of volume `vol / 2` on `region`.
pub(super) fn pair_product(
    ground: GroundSet,
    plus: Point,
    minus: Point,
    region: &[Point],
    mode: &PairTradeMode,
    vol: usize,
    seed: u64,
) -> Result<SignedBlockSet> {
    let local = pair_trade_seeded(region.len(), vol / 2, mode, seed)?;
    let k = local.embed(ground, region)?;
    let pts = signed_points(ground, &[(plus, Sign::Pos), (minus, Sign::Neg)])?;
    product(&pts, &k)
}

/// Volumes of [`pair_product`] on a region of `n` points.
pub(super) fn pair_product_volumes(n: usize, mode: &PairTradeMode) -> Vec<usize> {
    pair_trade_volumes(n, mode).map(|vs| vs.into_iter().map(|x| 2 * x).collect()).unwrap_or_default()
}

/// `p · edges`, every triple carrying `sign`.
pub(super) fn point_times(ground: GroundSet, p: Point, edges: &[Block], sign: Sign) -> Result<SignedBlockSet> {
    SignedBlockSet::from_entries(ground, 3, edges.iter().map(|e| (e.join(&Block::point(p)).expect("p off the edge"), sign)))
}

/// Rows `r` (positive) and `r + 1` (negative) of the Latin covering `L(i, j) · F_j`.
pub(super) fn latin_row_pair(
    ground: GroundSet,
    square: &LatinSquare,
    columns: &[Vec<Block>],
    r: usize,
) -> Result<SignedBlockSet> {
    let mut parts = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        parts.push(point_times(ground, square.get(r, j), col, Sign::Pos)?);
        parts.push(point_times(ground, square.get(r + 1, j), col, Sign::Neg)?);
    }
    signed_union(&parts)
}

/// Factors a regular graph given on `points`, returning edges in global labels.
pub(super) fn factor_on(points: &[Point], local_edges: Vec<Block>, seed: u64) -> Result<Vec<Vec<Block>>> {
    if local_edges.is_empty() {
        return Ok(Vec::new());
    }
    let input = FactorizationInput::Regular { order: points.len(), edges: local_edges };
    let f = one_factorization(&input, seed, 5_000_000)?;
    Ok(f.factors().iter().map(|fac| fac.iter().map(|e| e.map(|p| points[p as usize])).collect()).collect())
}

/// The three perfect matchings inside each quad: `{ab, cd}`, `{ac, bd}`, `{ad, bc}`.
pub(super) fn quad_factors(quads: &[[Point; 4]]) -> [Vec<Block>; 3] {
    let mut out: [Vec<Block>; 3] = Default::default();
    for &[a, b, c, d] in quads {
        out[0].extend([Block::pair(a, b), Block::pair(c, d)]);
        out[1].extend([Block::pair(a, c), Block::pair(b, d)]);
        out[2].extend([Block::pair(a, d), Block::pair(b, c)]);
    }
    out
}

/// Local edges of the complete graph on `n` points minus the within-quad edges of
/// consecutive quads `{0..3}, {4..7}, ...`.
pub(super) fn complete_minus_quads(n: usize) -> Vec<Block> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if a / 4 != b / 4 {
                edges.push(Block::pair(a as Point, b as Point));
            }
        }
    }
    edges
}

/// The four triples inside each quad, all with `sign`.
pub(super) fn within_quads(ground: GroundSet, quads: &[[Point; 4]], sign: Sign) -> Result<SignedBlockSet> {
    let entries = quads.iter().flat_map(|&[a, b, c, d]| {
        [Block::triple(a, b, c), Block::triple(a, b, d), Block::triple(a, c, d), Block::triple(b, c, d)].map(|t| (t, sign))
    });
    SignedBlockSet::from_entries(ground, 3, entries)
}

pub(super) fn quads_of(points: &[Point]) -> Vec<[Point; 4]> {
    points.chunks_exact(4).map(|c| [c[0], c[1], c[2], c[3]]).collect()
}
