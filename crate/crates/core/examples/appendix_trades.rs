//! The sixteen stored T(2,3,8) trades on two quads, checked one by one.
//!
//!     cargo run --example appendix_trades

use signed_sts::balance::{verify, VerifyKind};
use signed_sts::block::Block;
use signed_sts::trades::{appendix_trade8, APPENDIX_VOLUMES};

fn main() {
    let inside: Vec<Block> = [[0, 1, 2, 3], [4, 5, 6, 7]]
        .iter()
        .flat_map(|q| (0..4).map(move |skip| q.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &p)| p).collect::<Vec<u16>>()))
        .map(|p| Block::triple(p[0], p[1], p[2]))
        .collect();
    for vol in APPENDIX_VOLUMES {
        let t = appendix_trade8(vol).expect("stored column");
        let report = verify(&t, VerifyKind::Trade { t: 2 });
        let avoids = inside.iter().all(|b| !t.contains(b));
        println!("column {vol:>2}: {report}; avoids within-quad triples: {avoids}");
    }
}
