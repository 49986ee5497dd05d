//! Designs on `X ∪ Y` with `|X| = n`, `|Y| = n + 7` and `v = 2n + 7`.

use crate::block::{Block, GroundSet, Point, Sign};
use crate::error::{Error, Result};
use crate::ingredients::{latin_square, make_sts};
use crate::signed::{product, signed_points, signed_union, SignedBlockSet};
use crate::spectrum::admissible_spectrum;
use crate::trades::{remain_in, remain_volumes, PairTradeMode};

use super::assembly::{
    complete_minus_quads, factor_on, latin_row_pair, pair_product, pair_product_volumes, point_times, quad_factors,
    quads_of, within_quads, Assembly, Flex,
};
use super::{region_design, swap_chain, Certificate, Route};

/// The plain layout: STS(n) on X, the cyclic triangles `{y_c, y_{c+1}, y_{c+3}}` on Y,
/// and `x_i · E_i` for a 1-factorization `E_1..E_n` of what the triangles leave.
#[derive(Clone, Debug)]
pub struct ExtensionLayout {
    pub ground: GroundSet,
    pub x: Vec<Point>,
    pub y: Vec<Point>,
    pub triangles: Vec<Block>,
    pub factors: Vec<Vec<Block>>,
}

impl ExtensionLayout {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        let (ground, x, y) = split(n)?;
        let m = n + 7;
        let triangles = (0..m).map(|c| Block::triple(y[c], y[(c + 1) % m], y[(c + 3) % m])).collect();
        let mut edges = Vec::new();
        for a in 0..m {
            for d in 4..=m / 2 {
                let b = (a + d) % m;
                if d < m - d || a < b {
                    edges.push(Block::pair(a as Point, b as Point));
                }
            }
        }
        let factors = factor_on(&y, edges, seed)?;
        Ok(ExtensionLayout { ground, x, y, triangles, factors })
    }

    pub fn base(&self) -> Result<SignedBlockSet> {
        let mut parts = vec![
            make_sts(self.x.len())?.to_signed().embed(self.ground, &self.x)?,
            SignedBlockSet::unsigned(self.ground, 3, self.triangles.iter().copied())?,
        ];
        for (&p, f) in self.x.iter().zip(&self.factors) {
            parts.push(point_times(self.ground, p, f, Sign::Pos)?);
        }
        signed_union(&parts)
    }
}

fn split(n: usize) -> Result<(GroundSet, Vec<Point>, Vec<Point>)> {
    let ground = GroundSet::new(2 * n + 7)?;
    Ok((ground, (0..n as Point).collect(), (n as Point..(2 * n + 7) as Point).collect()))
}

pub(super) fn small(v: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    let layout = ExtensionLayout::new((v - 7) / 2, seed)?;
    let mut asm = Assembly::new(v)?;
    let base = layout.base()?;
    if s == 0 {
        asm.add("base system", base);
        return asm.finish(0, Route::Base, seed);
    }
    asm.add("base system with swaps", swap_chain(base, s)?);
    asm.finish(s, Route::SmallS, seed)
}

pub(super) fn build(v: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    build_1mod12(v, s, seed)
}

/// ST(v, s) for `v = 1, 9 mod 12`, `v >= 9`.
pub fn build_1mod12(v: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    if v < 9 || v % 12 != 1 && v % 12 != 9 {
        return Err(Error::InadmissibleOrder(v));
    }
    let n = (v - 7) / 2;
    if s <= 3 {
        small(v, s, seed)
    } else if n >= 7 && s <= 6 * n + 1 {
        products(n, s, seed)
    } else if n % 4 == 1 {
        case1(n, s, seed)
    } else {
        case2(n, s, seed)
    }
}

/// The plain layout plus `{y_{8+i}, -y_{11+i}} · T_i` for pair trades `T_i` on X,
/// `i = 0, 1, 2`; odd `s` takes one more Pasch swap.
fn products(n: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    let layout = ExtensionLayout::new(n, seed)?;
    let g = layout.ground;
    let mut asm = Assembly::new(2 * n + 7)?;
    asm.add("base system", layout.base()?);
    let flex = (0..3)
        .map(|i| {
            let layout = &layout;
            Flex::new(format!("y pair {} product", i + 1), pair_product_volumes(n, &PairTradeMode::Any), move |vol| {
                pair_product(g, layout.y[7 + i], layout.y[10 + i], &layout.x, &PairTradeMode::Any, vol, seed.wrapping_add(i as u64))
            })
        })
        .collect();
    asm.add_planned(flex, s - s % 2)?;
    if s % 2 == 1 {
        let partial = asm.union()?;
        let step = swap_chain(partial.clone(), 1)?;
        asm.add("Pasch swap", signed_union(&[step, partial.negated()])?);
    }
    asm.finish(s, Route::ExtensionProducts, seed)
}

/// Plans a region design on `points` together with `flex`. The region is always present.
fn assemble(
    mut asm: Assembly,
    region_points: &[Point],
    flex: Vec<Flex<'_>>,
    s: usize,
    base_s: usize,
    route: Route,
    seed: u64,
) -> Result<(SignedBlockSet, Certificate)> {
    let target = s.checked_sub(base_s).ok_or(Error::Infeasible { target: s })?;
    let g = asm.ground;
    let note = std::cell::RefCell::new(String::new());
    let region = Flex::new("region", admissible_spectrum(region_points.len()).values(), |vol| {
        let (d, how) = region_design(g, region_points, vol, seed)?;
        *note.borrow_mut() = how;
        Ok(d)
    });
    let mut all = vec![region];
    all.extend(flex);
    let picks = asm.add_planned(all, target)?;
    if picks[0] == 0 {
        asm.add("region", make_sts(region_points.len())?.to_signed().embed(g, region_points)?);
    } else {
        asm.ingredient(&note.borrow());
    }
    asm.finish(s, route, seed)
}

/// Layout for `n = 1 mod 4`: quads of Y, the three quad factors `F_{n+4..n+6}`, and a
/// factorization `F_1..F_{n+3}` of the cross-quad edges.
pub(crate) struct Case1Layout {
    pub ground: GroundSet,
    pub x: Vec<Point>,
    pub y: Vec<Point>,
    pub quads: Vec<[Point; 4]>,
    pub factors: Vec<Vec<Block>>,
}

impl Case1Layout {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        let (ground, x, y) = split(n)?;
        let quads = quads_of(&y);
        let mut factors = factor_on(&y, complete_minus_quads(n + 7), seed)?;
        factors.extend(quad_factors(&quads));
        Ok(Case1Layout { ground, x, y, quads, factors })
    }

    /// `T_2' = F_{n+1} ∪ F_{n+2} ∪ F_{n+3} ∪ -F_{n+4} ∪ -F_{n+5} ∪ -F_{n+6}` as signed pairs.
    pub fn t2(&self) -> Result<SignedBlockSet> {
        let n = self.x.len();
        let entries = (n..n + 6).flat_map(|i| {
            let sign = if i < n + 3 { Sign::Pos } else { Sign::Neg };
            self.factors[i].iter().map(move |e| (*e, sign))
        });
        SignedBlockSet::from_entries(self.ground, 2, entries)
    }

    /// `B_1 ∪ B_2`: the within-quad triples, `x_i · F_i` and `x_1 · T_2'`.
    pub fn base(&self) -> Result<SignedBlockSet> {
        let mut parts = vec![within_quads(self.ground, &self.quads, Sign::Pos)?];
        for (&p, f) in self.x.iter().zip(&self.factors) {
            parts.push(point_times(self.ground, p, f, Sign::Pos)?);
        }
        parts.push(product(&signed_points(self.ground, &[(self.x[0], Sign::Pos)])?, &self.t2()?)?);
        signed_union(&parts)
    }
}

fn case1(n: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    let layout = Case1Layout::new(n, seed)?;
    let g = layout.ground;
    let f_len = (n + 7) / 2;
    let mut asm = Assembly::new(2 * n + 7)?;
    let base = layout.base()?;
    let base_s = base.neg_count();
    asm.add("within quads and cross", base);
    let square = latin_square(&layout.x)?;
    let t2 = layout.t2()?;
    let mut flex = vec![Flex::new("remain on Y", remain_volumes(n + 7), |vol| remain_in(g, &layout.quads, vol))];
    for r in (1..n).step_by(2) {
        let (layout, square) = (&layout, &square);
        flex.push(Flex::new(format!("latin rows {}-{}", r + 1, r + 2), [n * f_len], move |_| {
            latin_row_pair(g, square, &layout.factors[..n], r)
        }));
    }
    for j in (1..n).step_by(2) {
        let (layout, t2) = (&layout, &t2);
        flex.push(Flex::new(format!("x pair {} product", j.div_ceil(2)), [6 * f_len], move |_| {
            let pts = signed_points(g, &[(layout.x[j], Sign::Pos), (layout.x[j + 1], Sign::Neg)])?;
            product(&pts, t2)
        }));
    }
    for i in 0..f_len {
        let layout = &layout;
        flex.push(Flex::new(format!("y pair {} product", i + 1), pair_product_volumes(n, &PairTradeMode::Any), move |vol| {
            pair_product(g, layout.y[2 * i + 1], layout.y[2 * i], &layout.x, &PairTradeMode::Any, vol, seed.wrapping_add(i as u64))
        }));
    }
    let x = layout.x.clone();
    assemble(asm, &x, flex, s, base_s, Route::ExtensionCase1, seed)
}

/// Layout for `n = 3 mod 4` on `U = X ∪ {y_{n+7}}` and `Z = {y_1..y_{n+6}}`.
pub(crate) struct Case2Layout {
    pub ground: GroundSet,
    pub u: Vec<Point>,
    pub z: Vec<Point>,
    pub quads: Vec<[Point; 4]>,
    /// `F_1..F_{n-3}` on the cross-quad edges of U, then the three quad factors.
    pub factors: Vec<Vec<Block>>,
}

impl Case2Layout {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        let (ground, x, y) = split(n)?;
        let mut u = x;
        u.push(y[n + 6]);
        let z = y[..n + 6].to_vec();
        let quads = quads_of(&u);
        let mut factors = factor_on(&u, complete_minus_quads(n + 1), seed)?;
        factors.extend(quad_factors(&quads));
        Ok(Case2Layout { ground, u, z, quads, factors })
    }

    /// `-(within-quad triples) ∪ y_{i+6} · F_i ∪ {y_1,y_2}·F_{n-2} ∪ {y_3,y_4}·F_{n-1} ∪ {y_5,y_6}·F_n`.
    pub fn base(&self) -> Result<SignedBlockSet> {
        let n = self.u.len() - 1;
        let g = self.ground;
        let mut parts = vec![within_quads(g, &self.quads, Sign::Neg)?];
        for (i, f) in self.factors.iter().enumerate() {
            parts.push(point_times(g, self.z[i + 6], f, Sign::Pos)?);
        }
        for q in 0..3 {
            for p in [self.z[2 * q], self.z[2 * q + 1]] {
                parts.push(point_times(g, p, &self.factors[n - 3 + q], Sign::Pos)?);
            }
        }
        signed_union(&parts)
    }

    /// `{y_{2q+1}, -y_{2q+2}} · Σ (F_a - F_b)` over `j` factor pairs avoiding `F_{n-2+q}`.
    fn factor_swap(&self, q: usize, j: usize) -> Result<SignedBlockSet> {
        let n = self.u.len() - 1;
        let free: Vec<usize> = (0..n).filter(|&i| i != n - 3 + q).collect();
        let entries = (0..2 * j).flat_map(|l| {
            let sign = if l % 2 == 0 { Sign::Pos } else { Sign::Neg };
            self.factors[free[l]].iter().map(move |e| (*e, sign))
        });
        let pairs = SignedBlockSet::from_entries(self.ground, 2, entries)?;
        let pts = signed_points(self.ground, &[(self.z[2 * q], Sign::Pos), (self.z[2 * q + 1], Sign::Neg)])?;
        product(&pts, &pairs)
    }
}

fn case2(n: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    let layout = Case2Layout::new(n, seed)?;
    let g = layout.ground;
    let f_len = (n + 1) / 2;
    let mut asm = Assembly::new(2 * n + 7)?;
    let base = layout.base()?;
    let base_s = base.neg_count();
    asm.add("within quads and cross", base);
    let square = latin_square(&layout.z[6..])?;
    let mut flex = vec![Flex::new("remain on U", remain_volumes(n + 1), |vol| remain_in(g, &layout.quads, vol))];
    for r in (1..n).step_by(2) {
        let (layout, square) = (&layout, &square);
        flex.push(Flex::new(format!("latin rows {}-{}", r + 1, r + 2), [n * f_len], move |_| {
            latin_row_pair(g, square, &layout.factors, r)
        }));
    }
    for q in 0..3 {
        let layout = &layout;
        let values = (1..=(n - 1) / 2).map(|j| j * (n + 1));
        flex.push(Flex::new(format!("factor swap {}", q + 1), values, move |vol| layout.factor_swap(q, vol / (n + 1))));
    }
    // U pairs {y_{n+7}, -x_n} and {x_{2i}, -x_{2i-1}}.
    let mut u_pairs = vec![(layout.u[n], layout.u[n - 1])];
    u_pairs.extend((0..(n - 1) / 2).map(|i| (layout.u[2 * i + 1], layout.u[2 * i])));
    for (i, &(plus, minus)) in u_pairs.iter().enumerate() {
        let layout = &layout;
        flex.push(Flex::new(format!("u pair {} product", i + 1), pair_product_volumes(n + 6, &PairTradeMode::Any), move |vol| {
            pair_product(g, plus, minus, &layout.z, &PairTradeMode::Any, vol, seed.wrapping_add(i as u64))
        }));
    }
    let z = layout.z.clone();
    assemble(asm, &z, flex, s, base_s, Route::ExtensionCase2, seed)
}
