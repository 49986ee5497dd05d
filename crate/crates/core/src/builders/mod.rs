mod assembly;
mod doubling;
mod extension;
mod v7;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::balance::Report;
use crate::block::{GroundSet, Point};
use crate::error::{Error, Result};
use crate::ingredients::{large_set, make_sts, pasch_step};
use crate::search::{exhaustive_st, SearchBudget};
use crate::signed::{signed_union, SignedBlockSet};
use crate::spectrum::admissibility;

pub use doubling::{base_double_sts, build_3mod12, DoublingLayout};
pub use extension::{build_1mod12, ExtensionLayout};
pub use v7::build_v7;

use assembly::Assembly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    /// v = 1 or v = 3.
    Trivial,
    /// The explicit catalog for v = 7.
    OrderSeven,
    /// An ordinary Steiner triple system.
    Base,
    /// Pasch swaps stacked on a base system.
    SmallS,
    /// v = 2n + 1, n = 3 mod 4.
    DoublingCase1,
    /// v = 2n + 1, n = 1 mod 4.
    DoublingCase2,
    /// v = 2n + 7 with signed pair-trade products on the base.
    ExtensionProducts,
    /// v = 2n + 7, n = 1 mod 4.
    ExtensionCase1,
    /// v = 2n + 7, n = 3 mod 4.
    ExtensionCase2,
    /// A design for s - k followed by k single Pasch swaps.
    SwapChain,
    /// Exhaustive search (small v only).
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub label: String,
    pub volume: usize,
}

/// How a design was built and the verifier's verdict on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub v: usize,
    pub s: usize,
    pub seed: u64,
    pub route: Route,
    pub pieces: Vec<Piece>,
    pub ingredients: Vec<String>,
    pub report: Report,
}

pub fn generate(v: usize, s: usize) -> Result<(SignedBlockSet, Certificate)> {
    generate_seeded(v, s, 0)
}

/// A verified ST(v, s) for every admissible pair, or the reason none exists.
pub fn generate_seeded(v: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    admissibility(v, s).map_err(|reason| Error::NotAdmissible { v, s, reason })?;
    let built = route_or_chain(v, s, seed);
    match built {
        Err(e) if v <= 9 => search_fallback(v, s, seed).map_err(|_| e),
        other => other,
    }
}

/// When no volume plan reaches `s`, builds a design for a slightly smaller `s` and
/// finishes with single Pasch swaps.
fn route_or_chain(v: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    let first = route(v, s, seed);
    if !matches!(first, Err(Error::Infeasible { .. })) {
        return first;
    }
    for k in 1..=s.min(MAX_CHAIN) {
        let Ok((below, _)) = route(v, s - k, seed) else { continue };
        let Ok(d) = swap_chain(below, k) else { continue };
        let mut asm = Assembly::new(v)?;
        asm.ingredient(&format!("ST({v},{}) plus {k} Pasch swaps", s - k));
        asm.add("design with swaps", d);
        return asm.finish(s, Route::SwapChain, seed);
    }
    first
}

const MAX_CHAIN: usize = 12;

fn route(v: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    match v {
        1 | 3 => {
            let mut asm = Assembly::new(v)?;
            asm.add("base system", make_sts(v)?.to_signed());
            asm.finish(s, Route::Trivial, seed)
        }
        7 => {
            let d = build_v7(s)?;
            let mut asm = Assembly::new(7)?;
            asm.ingredient("v = 7 catalog");
            asm.add("catalog design", d);
            asm.finish(s, Route::OrderSeven, seed)
        }
        _ if v % 12 == 3 || v % 12 == 7 => doubling::build(v, s, seed),
        _ => extension::build(v, s, seed),
    }
}

/// ST(v, s) for `s <= 5` by stacking Pasch swaps on a base system.
pub fn build_small_s(v: usize, s: usize) -> Result<SignedBlockSet> {
    if !(v % 6 == 1 || v % 6 == 3) || v < 9 || s > 5 {
        return Err(Error::Unsupported(format!("small-s route needs v >= 9 admissible and s <= 5, got ({v}, {s})")));
    }
    let (d, _) = if v % 12 == 3 || v % 12 == 7 { doubling::small(v, s, 0)? } else { extension::small(v, s, 0)? };
    Ok(d)
}

fn search_fallback(v: usize, s: usize, seed: u64) -> Result<(SignedBlockSet, Certificate)> {
    let outcome = exhaustive_st(v, s, SearchBudget::nodes(200_000_000).with_seed(seed));
    let found = outcome.found().cloned().ok_or_else(|| Error::IngredientUnavailable(outcome.to_string()))?;
    let mut asm = Assembly::new(v)?;
    asm.ingredient(&outcome.to_string());
    asm.add("search witness", found);
    asm.finish(s, Route::Search, seed)
}

/// Adds `steps` Pasch swaps, each raising `s` by one.
pub(crate) fn swap_chain(design: SignedBlockSet, steps: usize) -> Result<SignedBlockSet> {
    let mut d = design;
    for _ in 0..steps {
        let p = pasch_step(&d).ok_or_else(|| Error::IngredientUnavailable("no Pasch swap available".into()))?;
        d = signed_union(&[d, p])?;
    }
    Ok(d)
}

type RegionKey = (usize, usize, u64);

fn region_memo() -> &'static Mutex<HashMap<RegionKey, SignedBlockSet>> {
    static MEMO: OnceLock<Mutex<HashMap<RegionKey, SignedBlockSet>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// An ST(n, s) placed on `points` of a larger ground set, plus a provenance note.
///
/// Values of `s` that are multiples of the class size of a stored large set use
/// `C1 ∪ (C2 − C3) ∪ (C4 − C5) ∪ ...`; everything else is built recursively.
pub(crate) fn region_design(ground: GroundSet, points: &[Point], s: usize, seed: u64) -> Result<(SignedBlockSet, String)> {
    let n = points.len();
    let b = n * (n - 1) / 6;
    if n == 9 && s % b == 0 {
        let ls = large_set(9)?;
        let classes = ls.classes();
        let mut parts = vec![classes[0].to_signed()];
        for j in 0..s / b {
            parts.push(classes[1 + 2 * j].to_signed());
            parts.push(classes[2 + 2 * j].to_signed().negated());
        }
        let local = signed_union(&parts)?;
        return Ok((local.embed(ground, points)?, format!("ST(9,{s}) from the stored large set")));
    }
    let key = (n, s, seed);
    let cached = region_memo().lock().expect("memo lock").get(&key).cloned();
    let local = match cached {
        Some(d) => d,
        None => {
            let (d, _) = generate_seeded(n, s, seed)?;
            region_memo().lock().expect("memo lock").insert(key, d.clone());
            d
        }
    };
    Ok((local.embed(ground, points)?, format!("ST({n},{s}) built recursively")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::Inadmissibility;

    #[test]
    fn refusals_name_the_failed_condition() {
        assert!(matches!(
            generate(7, 1),
            Err(Error::NotAdmissible { reason: Inadmissibility::OrderSevenException, .. })
        ));
        assert!(matches!(generate(13, 127), Err(Error::NotAdmissible { reason: Inadmissibility::Gap { .. }, .. })));
        assert!(matches!(generate(10, 0), Err(Error::NotAdmissible { reason: Inadmissibility::OrderResidue, .. })));
    }

    #[test]
    fn trivial_orders() {
        assert_eq!(generate(3, 0).unwrap().0.len(), 1);
        assert!(generate(1, 0).unwrap().0.is_empty());
    }

    #[test]
    fn nine_zero_is_a_base_system() {
        let (d, cert) = generate(9, 0).unwrap();
        assert_eq!(cert.route, Route::Base);
        assert_eq!(d.len(), 12);
    }
}
