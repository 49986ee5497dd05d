//! Builds every admissible ST(v, s) for the orders given on the command line
//! (default 7 9 13 15 19) and tallies the routes taken.
//!
//!     cargo run --release --example spectrum_sweep -- 21 25

use std::collections::BTreeMap;
use std::time::Instant;

use signed_sts::builders::generate;
use signed_sts::spectrum::admissible_spectrum;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let orders = if args.is_empty() { vec![7, 9, 13, 15, 19] } else { args };
    let mut failures = 0;
    for v in orders {
        let start = Instant::now();
        let mut routes: BTreeMap<String, usize> = BTreeMap::new();
        let spectrum = admissible_spectrum(v);
        for s in spectrum.iter() {
            match generate(v, s) {
                Ok((_, cert)) => *routes.entry(format!("{:?}", cert.route)).or_default() += 1,
                Err(e) => {
                    failures += 1;
                    println!("v={v} s={s} FAILED: {e}");
                }
            }
        }
        println!("v={v}: {} values in {:.2?}; routes {routes:?}", spectrum.len(), start.elapsed());
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
