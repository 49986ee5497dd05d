//! Property checks shared by the property tests and the acceptance run. Each one
//! drives a proptest runner with a pinned seed and reports the first failure.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

use signed_sts::balance::{balance_map, verify, VerifyKind};
use signed_sts::block::{Block, GroundSet, Point, Sign};
use signed_sts::builders::generate_seeded;
use signed_sts::format::{parse, serialize, Document};
use signed_sts::ingredients::pasch_trade;
use signed_sts::signed::{product, signed_union, SignedBlockSet};
use signed_sts::trades::tripartite_trade;

pub const SEED: u64 = 0x5151_2026;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() })
}

fn check<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), TestCaseError> {
    if cond { Ok(()) } else { Err(TestCaseError::fail(what.into())) }
}

fn distinct(v: usize, k: usize) -> impl Strategy<Value = Vec<Point>> {
    Just((0..v as Point).collect::<Vec<_>>()).prop_shuffle().prop_map(move |p| p[..k].to_vec())
}

/// Every Pasch swap on six distinct points is a trade of volume 4.
pub fn pasch_swaps(cases: u32) -> Result<(), String> {
    let strategy = (6usize..=25).prop_flat_map(|v| (Just(v), distinct(v, 6)));
    check(cases, strategy, |(v, pts)| {
        let t = pasch_trade(GroundSet::new(v).unwrap(), pts.clone().try_into().unwrap()).unwrap();
        let r = verify(&t, VerifyKind::Trade { t: 2 });
        ensure(r.ok && r.volume() == 4, format!("{pts:?}: {r}"))
    })
}

/// The tripartite parity trade stays a trade under any labeling of its three quads.
pub fn tripartite_relabelings(cases: u32) -> Result<(), String> {
    check(cases, distinct(12, 12), |p| {
        let q = |i: usize| [p[4 * i], p[4 * i + 1], p[4 * i + 2], p[4 * i + 3]];
        let t = tripartite_trade(GroundSet::new(12).unwrap(), q(0), q(1), q(2)).unwrap();
        let r = verify(&t, VerifyKind::Trade { t: 2 });
        ensure(r.ok && r.volume() == 32, r.to_string())
    })
}

fn signed_triples(v: usize) -> impl Strategy<Value = SignedBlockSet> {
    let all: Vec<Block> = (0..v as Point)
        .flat_map(|a| (a + 1..v as Point).flat_map(move |b| (b + 1..v as Point).map(move |c| Block::triple(a, b, c))))
        .collect();
    proptest::collection::vec(proptest::option::of(any::<bool>()), all.len()).prop_map(move |pick| {
        let entries = all.iter().zip(pick).filter_map(|(b, s)| s.map(|pos| (*b, if pos { Sign::Pos } else { Sign::Neg })));
        SignedBlockSet::from_entries(GroundSet::new(v).unwrap(), 3, entries).unwrap()
    })
}

/// Balances add up under union whenever the union is simple.
pub fn union_linearity(cases: u32) -> Result<(), String> {
    check(cases, (signed_triples(7), signed_triples(7)), |(a, b)| {
        let Ok(u) = signed_union(&[a.clone(), b.clone()]) else { return Ok(()) };
        let (ma, mb, mu) = (balance_map(&a, 2), balance_map(&b, 2), balance_map(&u, 2));
        for x in 0..7 {
            for y in x + 1..7 {
                let pair = Block::pair(x, y);
                ensure(mu.get(&pair) == ma.get(&pair) + mb.get(&pair), format!("pair {pair}"))?;
            }
        }
        Ok(())
    })
}

/// For signed points `P` and signed pairs `K` on disjoint points, the balance of
/// `P · K` on `{p, x}` is `sign(p) · m_K(x)` and on `{x, y}` is `(Σ P) · m_K(xy)`.
pub fn product_balance(cases: u32) -> Result<(), String> {
    let points = proptest::collection::vec(proptest::option::of(any::<bool>()), 3);
    let pairs = proptest::collection::vec(proptest::option::of(any::<bool>()), 15);
    check(cases, (points, pairs), |(pts, prs)| {
        let g = GroundSet::new(9).unwrap();
        let sign = |b: bool| if b { Sign::Pos } else { Sign::Neg };
        let p = SignedBlockSet::from_entries(g, 1, pts.iter().enumerate().filter_map(|(i, s)| s.map(|s| (Block::point(i as Point), sign(s)))))
            .unwrap();
        let region: Vec<Block> = (3..9).flat_map(|a| (a + 1..9).map(move |b| Block::pair(a, b))).collect();
        let k = SignedBlockSet::from_entries(g, 2, region.iter().zip(&prs).filter_map(|(e, s)| s.map(|s| (*e, sign(s))))).unwrap();
        let prod = product(&p, &k).unwrap();
        let (mp, mk1, mk2, m) = (balance_map(&p, 1), balance_map(&k, 1), balance_map(&k, 2), balance_map(&prod, 2));
        let total: i64 = p.iter().map(|(_, s)| s.value()).sum();
        for a in 0..9 {
            for b in a + 1..9 {
                let pair = Block::pair(a, b);
                let expect = match (a < 3, b < 3) {
                    (true, true) => 0,
                    (true, false) => mp.get(&Block::point(a)) * mk1.get(&Block::point(b)),
                    _ => total * mk2.get(&pair),
                };
                ensure(m.get(&pair) == expect, format!("pair {pair}"))?;
            }
        }
        Ok(())
    })
}

/// Text output parses back to the same document.
pub fn round_trip(cases: u32) -> Result<(), String> {
    check(cases, (3usize..=9).prop_flat_map(signed_triples), |set| {
        let doc = Document::Design(set);
        let back = parse(&serialize(&doc)).map_err(|e| TestCaseError::fail(e.to_string()))?;
        ensure(back == doc, "design changed")?;
        let Document::Design(set) = doc else { unreachable!() };
        let trade = Document::Trade { t: 2, set };
        ensure(parse(&serialize(&trade)).ok() == Some(trade), "trade changed")
    })
}

/// Identical (v, s, seed) gives identical bytes.
pub fn deterministic_generation(cases: u32) -> Result<(), String> {
    let strategy = prop_oneof![Just(9usize), Just(13), Just(15), Just(19)]
        .prop_flat_map(|v| (Just(v), 0..=v * (v - 1) * (v - 3) / 12 - 6, 0u64..4));
    check(cases, strategy, |(v, s, seed)| {
        let once = generate_seeded(v, s, seed).map(|(d, _)| serialize(&Document::Design(d)));
        let twice = generate_seeded(v, s, seed).map(|(d, _)| serialize(&Document::Design(d)));
        ensure(once.is_ok() && once.ok() == twice.ok(), format!("v={v} s={s} seed={seed}"))
    })
}
