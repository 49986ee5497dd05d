//! Pair trades, triple trades, tripartite trades and Pasch swaps, each verified.
//!
//!     cargo run --example trade_constructors

use signed_sts::balance::{verify, VerifyKind};
use signed_sts::block::GroundSet;
use signed_sts::ingredients::pasch_trade;
use signed_sts::trades::{
    pair_trade, pair_trade_volumes, triple_trade, triple_trade_volumes, tripartite_trade, PairTradeMode,
};

fn main() {
    for v in [5, 6, 9] {
        let vols = pair_trade_volumes(v, &PairTradeMode::Any).unwrap();
        let all_ok = vols.iter().all(|&s| verify(&pair_trade(v, s, &PairTradeMode::Any).unwrap(), VerifyKind::Trade { t: 1 }).ok);
        println!("pair trades on {v} points: volumes {vols:?}, all verify: {all_ok}");
    }
    let leave = PairTradeMode::LeaveTriangle([0, 1, 2]);
    println!("pair trades on 7 points missing a triangle: {:?}", pair_trade_volumes(7, &leave).unwrap());

    for v in [6, 10] {
        let vols = triple_trade_volumes(v);
        let all_ok = vols.iter().all(|&s| verify(&triple_trade(v, s).unwrap(), VerifyKind::Trade { t: 2 }).ok);
        println!("triple trades on {v} points: {} volumes up to {}, all verify: {all_ok}", vols.len(), vols.last().unwrap());
    }

    let g12 = GroundSet::new(12).unwrap();
    let t = tripartite_trade(g12, [0, 1, 2, 3], [4, 5, 6, 7], [8, 9, 10, 11]).unwrap();
    println!("tripartite trade on 3 quads: {}", verify(&t, VerifyKind::Trade { t: 2 }));

    let p = pasch_trade(GroundSet::new(6).unwrap(), [0, 1, 2, 3, 4, 5]).unwrap();
    println!("Pasch swap: {}", verify(&p, VerifyKind::Trade { t: 2 }));
    for (b, s) in p.iter() {
        println!("  {}{b}", s.symbol());
    }
}
