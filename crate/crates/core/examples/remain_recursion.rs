//! Trades on 4k points that avoid every triple inside a quad, for each volume
//! the recursion reaches.
//!
//!     cargo run --release --example remain_recursion -- 16

use signed_sts::balance::{verify, VerifyKind};
use signed_sts::trades::{remain_trade, remain_volumes, PartitionIntoQuads};

fn main() {
    let v: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(12);
    let parts = PartitionIntoQuads::consecutive(v).expect("v divisible by 4");
    let volumes = remain_volumes(v);
    let mut bad = 0;
    for &s in &volumes {
        let t = remain_trade(&parts, s).expect("volume in range");
        let inside = t.support().filter(|b| b.points().iter().all(|&p| p / 4 == b.points()[0] / 4)).count();
        let ok = verify(&t, VerifyKind::Trade { t: 2 }).ok && t.volume() == s && inside == 0;
        bad += usize::from(!ok);
    }
    println!("v={v}: {} volumes from {} to {}, {bad} failures", volumes.len(), volumes[0], volumes.last().unwrap());
}
