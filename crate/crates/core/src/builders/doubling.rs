//! Designs on `X ∪ Y` with `|X| = n`, `|Y| = n + 1` and `v = 2n + 1`.
//!
//! The base system is an STS(n) on X together with `x_i · F_i` for a 1-factorization
//! `F_1, ..., F_n` of the complete graph on Y.

use rand::seq::SliceRandom;

use crate::block::{Block, GroundSet, Point, Sign};
use crate::error::{Error, Result};
use crate::ingredients::{latin_square, make_sts, pasch_trade, OneFactorization};
use crate::rng::seeded;
use crate::signed::{product, signed_pairs, signed_points, signed_union, SignedBlockSet};
use crate::spectrum::admissible_spectrum;
use crate::trades::{remain_in, remain_volumes, triple_trade_seeded, triple_trade_volumes, PairTradeMode};

use super::assembly::{
    factor_on, latin_row_pair, pair_product, pair_product_volumes, point_times, quads_of, Assembly, Flex,
};
use super::{region_design, Certificate, Route};

/// Point labels and factors of one doubling layout.
#[derive(Clone, Debug)]
pub struct DoublingLayout {
    pub ground: GroundSet,
    pub x: Vec<Point>,
    pub y: Vec<Point>,
    /// `factors[i]` is `F_{i+1}`, in global labels.
    pub factors: Vec<Vec<Block>>,
}

impl DoublingLayout {
    fn with_factors(n: usize, factors: Vec<Vec<Block>>) -> Result<Self> {
        let ground = GroundSet::new(2 * n + 1)?;
        let x = (0..n as Point).collect();
        let y = (n as Point..(2 * n + 1) as Point).collect();
        Ok(DoublingLayout { ground, x, y, factors })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// `∪ x_i · F_i`.
    pub fn cross(&self) -> Result<SignedBlockSet> {
        let parts = self
            .x
            .iter()
            .zip(&self.factors)
            .map(|(&p, f)| point_times(self.ground, p, f, Sign::Pos))
            .collect::<Result<Vec<_>>>()?;
        signed_union(&parts)
    }

    /// STS(n) on X placed as given.
    pub fn inner(&self) -> Result<SignedBlockSet> {
        make_sts(self.n())?.to_signed().embed(self.ground, &self.x)
    }
}

/// Round-robin factors on Y, ordered so that `y_i y_7 ∈ F_i` for `i = 1..6`.
pub fn base_double_sts(n: usize) -> Result<DoublingLayout> {
    if n < 7 || n % 6 != 1 && n % 6 != 3 {
        return Err(Error::InadmissibleOrder(2 * n + 1));
    }
    let rr = OneFactorization::complete(n + 1)?;
    let mut order: Vec<usize> = (0..6)
        .map(|i| rr.factor_containing(&Block::pair(i, 6)).expect("complete factorization"))
        .collect();
    let rest: Vec<usize> = (0..rr.len()).filter(|i| !order.contains(i)).collect();
    order.extend(rest);
    let layout = DoublingLayout::with_factors(n, Vec::new())?;
    let factors = rr.reordered(&order).factors().iter().map(|f| f.iter().map(|e| e.map(|p| layout.y[p as usize])).collect()).collect();
    Ok(DoublingLayout { factors, ..layout })
}

pub(super) fn small(v: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    let layout = base_double_sts((v - 1) / 2)?;
    let (x, y, g) = (&layout.x, &layout.y, layout.ground);
    let mut asm = Assembly::new(v)?;
    if s == 0 {
        asm.add("inner system", layout.inner()?);
        asm.add("cross", layout.cross()?);
        return asm.finish(0, Route::Base, seed);
    }
    // j[k] is the factor holding y_k y_{k+3}; P_k needs x_k x_{k+3} x_{j_k} off the inner system.
    let j: Vec<usize> = (0..3)
        .map(|k| layout.factors.iter().position(|f| f.contains(&Block::pair(y[k], y[k + 3]))).expect("factorization"))
        .collect();
    let inner = relabel_inner(&layout, &j, seed)?;
    asm.add("inner system", inner);
    asm.add("cross", layout.cross()?);
    let swap = |k: usize| pasch_trade(g, [y[k], y[k + 3], y[6], x[k + 3], x[k], x[j[k]]]);
    let inside = || pasch_trade(g, [y[0], y[1], y[2], y[3], y[4], y[5]]);
    match s {
        1..=3 => {
            for k in 0..s {
                asm.add(&format!("swap P{}", k + 1), swap(k)?);
            }
        }
        4 => asm.add("swap inside Y", inside()?),
        _ => {
            asm.add("swap P1", swap(0)?);
            asm.add("swap inside Y", inside()?);
        }
    }
    asm.finish(s, Route::SmallS, seed)
}

/// STS(n) on X relabeled so that none of `x_k x_{k+3} x_{j_k}` is a block.
fn relabel_inner(layout: &DoublingLayout, j: &[usize], seed: u64) -> Result<SignedBlockSet> {
    let n = layout.n();
    let sts = make_sts(n)?;
    let avoid: Vec<Block> = (0..3).map(|k| Block::triple(k as Point, (k + 3) as Point, j[k] as Point)).collect();
    let mut perm: Vec<Point> = (0..n as Point).collect();
    let mut rng = seeded(seed, 0x5167);
    for _ in 0..10_000 {
        let relabeled = sts.relabeled(&perm);
        if avoid.iter().all(|b| !relabeled.contains(b)) {
            return relabeled.to_signed().embed(layout.ground, &layout.x);
        }
        perm.shuffle(&mut rng);
    }
    Err(Error::NoValidRelabeling)
}

pub(super) fn build(v: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    if s <= 5 {
        return small(v, s, seed);
    }
    build_3mod12(v, s, seed)
}

/// ST(v, s) for `v = 3, 7 mod 12`, `v >= 15`, `s >= 6`, assembled from planned trades.
pub fn build_3mod12(v: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    if v < 15 || v % 12 != 3 && v % 12 != 7 {
        return Err(Error::InadmissibleOrder(v));
    }
    let n = (v - 1) / 2;
    if n % 4 == 3 {
        case1(n, s, seed)
    } else {
        case2(n, s, seed)
    }
}

/// Plans the X region together with `flex`; the region is always present.
fn assemble(
    mut asm: Assembly,
    layout: &DoublingLayout,
    flex: Vec<Flex<'_>>,
    s: usize,
    base_s: usize,
    route: Route,
    seed: u64,
) -> Result<(SignedBlockSet, Certificate)> {
    let target = s.checked_sub(base_s).ok_or(Error::Infeasible { target: s })?;
    let n = layout.n();
    let note = std::cell::RefCell::new(String::new());
    let region = Flex::new("X region", admissible_spectrum(n).values(), |vol| {
        let (d, how) = region_design(layout.ground, &layout.x, vol, seed)?;
        *note.borrow_mut() = how;
        Ok(d)
    });
    let mut all = vec![region];
    all.extend(flex);
    let picks = asm.add_planned(all, target)?;
    if picks[0] == 0 {
        asm.add("X region", layout.inner()?);
    } else {
        asm.ingredient(&note.borrow());
    }
    asm.finish(s, route, seed)
}

/// `F_2 = E_2 ∪ E_2'` and `F_3 = E_3 ∪ E_3'` with `E_2 = {y_{4i-3} y_{4i-1}}`,
/// `E_3 = {y_{4i-2} y_{4i}}`, `E_2' = {y_{4i} y_{4i+2}}`, `E_3' = {y_{4i-1} y_{4i+1}}`.
pub(crate) struct SplitFactors {
    pub e2: Vec<Block>,
    pub e2p: Vec<Block>,
    pub e3: Vec<Block>,
    pub e3p: Vec<Block>,
}

fn split_factors(y: &[Point]) -> SplitFactors {
    let m = y.len();
    let at = |i: usize| y[(i + m - 1) % m];
    let k = m / 4;
    let mk = |f: &dyn Fn(usize) -> Block| (1..=k).map(f).collect::<Vec<_>>();
    SplitFactors {
        e2: mk(&|i| Block::pair(at(4 * i - 3), at(4 * i - 1))),
        e3: mk(&|i| Block::pair(at(4 * i - 2), at(4 * i))),
        e2p: mk(&|i| Block::pair(at(4 * i), at(4 * i + 2))),
        e3p: mk(&|i| Block::pair(at(4 * i - 1), at(4 * i + 1))),
    }
}

/// Layout for `n = 3 mod 4` with `F_2`, `F_3` split as in [`SplitFactors`].
pub(crate) fn case1_layout(n: usize, seed: u64) -> Result<(DoublingLayout, SplitFactors)> {
    let layout = DoublingLayout::with_factors(n, Vec::new())?;
    let sp = split_factors(&layout.y);
    let f2: Vec<Block> = sp.e2.iter().chain(&sp.e2p).copied().collect();
    let f3: Vec<Block> = sp.e3.iter().chain(&sp.e3p).copied().collect();
    let index: std::collections::HashMap<Point, Point> =
        layout.y.iter().enumerate().map(|(i, &p)| (p, i as Point)).collect();
    let mut rest = Vec::new();
    for a in 0..=n as Point {
        for b in a + 1..=n as Point {
            let e = Block::pair(layout.y[a as usize], layout.y[b as usize]);
            if !f2.contains(&e) && !f3.contains(&e) {
                rest.push(e.map(|p| index[&p]));
            }
        }
    }
    let mut others = factor_on(&layout.y, rest, seed)?.into_iter();
    let mut factors = vec![others.next().expect("n >= 7")];
    factors.extend([f2, f3]);
    factors.extend(others);
    Ok((DoublingLayout { factors, ..layout }, sp))
}

/// `B_1`: per quad `abcd` of Y, `+abd +bcd -abc -acd`.
pub(crate) fn compensating_b1(layout: &DoublingLayout) -> Result<SignedBlockSet> {
    let t = Block::triple;
    let entries = quads_of(&layout.y).into_iter().flat_map(|[a, b, c, d]| {
        [(t(a, b, d), Sign::Pos), (t(b, c, d), Sign::Pos), (t(a, b, c), Sign::Neg), (t(a, c, d), Sign::Neg)]
    });
    SignedBlockSet::from_entries(layout.ground, 3, entries)
}

/// `B_2`: Latin rows 2..n with `x_1`'s cells in columns 2 and 3 replaced by
/// `x_1 · (E_2 ∪ -E_2' ∪ -E_3 ∪ E_3')`.
pub(crate) fn compensating_b2(layout: &DoublingLayout, sp: &SplitFactors) -> Result<SignedBlockSet> {
    let (g, n, x1) = (layout.ground, layout.n(), layout.x[0]);
    let square = latin_square(&layout.x)?;
    let mut parts = Vec::new();
    for r in 1..n {
        let sign = if r % 2 == 1 { Sign::Pos } else { Sign::Neg };
        for (j, col) in layout.factors.iter().enumerate() {
            let p = square.get(r, j);
            if p == x1 && (j == 1 || j == 2) {
                continue;
            }
            parts.push(point_times(g, p, col, sign)?);
        }
    }
    parts.push(point_times(g, x1, &sp.e2, Sign::Pos)?);
    parts.push(point_times(g, x1, &sp.e2p, Sign::Neg)?);
    parts.push(point_times(g, x1, &sp.e3, Sign::Neg)?);
    parts.push(point_times(g, x1, &sp.e3p, Sign::Pos)?);
    signed_union(&parts)
}

/// `B_3 = {x_1x_2, x_1x_3, -x_2x_3} · {-y_1, y_2, -y_3, y_4, ...}`.
pub(crate) fn compensating_b3(layout: &DoublingLayout) -> Result<SignedBlockSet> {
    let (g, x) = (layout.ground, &layout.x);
    let pairs = signed_pairs(g, &[(x[0], x[1], Sign::Pos), (x[0], x[2], Sign::Pos), (x[1], x[2], Sign::Neg)])?;
    let pts: Vec<(Point, Sign)> =
        layout.y.iter().enumerate().map(|(i, &p)| (p, if i % 2 == 0 { Sign::Neg } else { Sign::Pos })).collect();
    product(&pairs, &signed_points(g, &pts)?)
}

fn case1(n: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    let (layout, sp) = case1_layout(n, seed)?;
    let g = layout.ground;
    let mut asm = Assembly::new(2 * n + 1)?;
    asm.add("cross", layout.cross()?);
    let t4_volume = 2 * (n + 1) + (n - 1) / 2 * (n + 1) * n / 2;
    let y_quads = quads_of(&layout.y);
    let mut flex = vec![
        Flex::new("remain on Y", remain_volumes(n + 1), |vol| remain_in(g, &y_quads, vol)),
        Flex::new("compensating trade", [t4_volume], |_| {
            signed_union(&[compensating_b1(&layout)?, compensating_b2(&layout, &sp)?, compensating_b3(&layout)?])
        }),
    ];
    let mode = PairTradeMode::LeaveTriangle([0, 1, 2]);
    for i in 0..(n + 1) / 2 {
        let (layout, mode) = (&layout, mode.clone());
        let values = pair_product_volumes(n, &mode);
        flex.push(Flex::new(format!("y pair {} product", i + 1), values, move |vol| {
            pair_product(g, layout.y[2 * i + 1], layout.y[2 * i], &layout.x, &mode, vol, seed.wrapping_add(i as u64))
        }));
    }
    assemble(asm, &layout, flex, s, 0, Route::DoublingCase1, seed)
}

fn case2(n: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    let rr = OneFactorization::complete(n + 1)?;
    let layout = DoublingLayout::with_factors(n, Vec::new())?;
    let factors = rr.factors().iter().map(|f| f.iter().map(|e| e.map(|p| layout.y[p as usize])).collect()).collect();
    let layout = DoublingLayout { factors, ..layout };
    let g = layout.ground;
    let square = latin_square(&layout.x)?;
    let mut asm = Assembly::new(2 * n + 1)?;
    asm.add("cross", layout.cross()?);
    let mut flex = vec![Flex::new("triple trade on Y", triple_trade_volumes(n + 1), |vol| {
        triple_trade_seeded(n + 1, vol, seed)?.embed(g, &layout.y)
    })];
    for r in (1..n).step_by(2) {
        let (layout, square) = (&layout, &square);
        flex.push(Flex::new(format!("latin rows {}-{}", r + 1, r + 2), [n * (n + 1) / 2], move |_| {
            latin_row_pair(g, square, &layout.factors, r)
        }));
    }
    for i in 0..(n + 1) / 2 {
        let layout = &layout;
        flex.push(Flex::new(format!("y pair {} product", i + 1), pair_product_volumes(n, &PairTradeMode::Any), move |vol| {
            pair_product(g, layout.y[2 * i + 1], layout.y[2 * i], &layout.x, &PairTradeMode::Any, vol, seed.wrapping_add(i as u64))
        }));
    }
    assemble(asm, &layout, flex, s, 0, Route::DoublingCase2, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::{balance_map, verify, VerifyKind};

    #[test]
    fn small_s_designs() {
        for v in [15, 19] {
            for s in 0..=5 {
                let (d, cert) = small(v, s, 0).unwrap();
                assert_eq!(cert.s, s);
                assert_eq!(d.neg_count(), s);
            }
        }
    }

    #[test]
    fn four_swaps_inside_y() {
        let (d, _) = small(19, 4, 0).unwrap();
        assert!(d.negative().all(|b| b.points().iter().all(|&p| p >= 9)));
    }

    #[test]
    fn compensating_profiles() {
        let n = 7;
        let (layout, sp) = case1_layout(n, 0).unwrap();
        let (x1, y) = (layout.x[0], &layout.y);
        let b1 = balance_map(&compensating_b1(&layout).unwrap(), 2);
        let mut expect1: Vec<(Block, i64)> =
            sp.e2.iter().map(|e| (*e, -2)).chain(sp.e3.iter().map(|e| (*e, 2))).collect();
        expect1.sort();
        assert_eq!(b1.nonzero().collect::<Vec<_>>(), expect1);

        let b2 = balance_map(&compensating_b2(&layout, &sp).unwrap(), 2);
        let mut expect2: Vec<(Block, i64)> = sp.e2.iter().map(|e| (*e, 2)).chain(sp.e3.iter().map(|e| (*e, -2))).collect();
        expect2.extend(y.iter().enumerate().map(|(i, &p)| (Block::pair(x1, p), if i % 2 == 0 { 2 } else { -2 })));
        expect2.sort();
        assert_eq!(b2.nonzero().collect::<Vec<_>>(), expect2);

        let b3 = balance_map(&compensating_b3(&layout).unwrap(), 2);
        let mut expect3: Vec<(Block, i64)> =
            y.iter().enumerate().map(|(i, &p)| (Block::pair(x1, p), if i % 2 == 0 { -2 } else { 2 })).collect();
        expect3.sort();
        assert_eq!(b3.nonzero().collect::<Vec<_>>(), expect3);

        let t4 = signed_union(&[
            compensating_b1(&layout).unwrap(),
            compensating_b2(&layout, &sp).unwrap(),
            compensating_b3(&layout).unwrap(),
        ])
        .unwrap();
        let r = verify(&t4, VerifyKind::Trade { t: 2 });
        assert!(r.ok, "{r}");
        assert_eq!(r.volume(), 2 * 8 + 3 * 28);
    }

    #[test]
    fn latin_layer_identity() {
        for n in [7, 9] {
            let rr = OneFactorization::complete(n + 1).unwrap();
            let layout = DoublingLayout::with_factors(n, Vec::new()).unwrap();
            let factors: Vec<Vec<Block>> =
                rr.factors().iter().map(|f| f.iter().map(|e| e.map(|p| layout.y[p as usize])).collect()).collect();
            let layout = DoublingLayout { factors, ..layout };
            let square = latin_square(&layout.x).unwrap();
            let mut parts = vec![layout.cross().unwrap()];
            for r in (1..n).step_by(2) {
                parts.push(latin_row_pair(layout.ground, &square, &layout.factors, r).unwrap());
            }
            let layer = balance_map(&signed_union(&parts).unwrap(), 2);
            for a in 0..(2 * n + 1) as Point {
                for b in a + 1..(2 * n + 1) as Point {
                    let expect = if (b as usize) < n { 0 } else { 1 };
                    assert_eq!(layer.get(&Block::pair(a, b)), expect, "n={n} pair {a} {b}");
                }
            }
        }
    }
}
