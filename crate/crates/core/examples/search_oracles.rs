//! Exhaustive search as an independent check on the constructions: trade
//! spectra on a few points and existence of ST(9, s) for small s.
//!
//!     cargo run --release --example search_oracles

use signed_sts::search::{exhaustive_st, trade_search, SearchBudget};

fn spectrum(v: usize, k: usize, max: usize) -> Vec<usize> {
    (1..=max).filter(|&s| trade_search(v, k - 1, k, s, &[], SearchBudget::unlimited()).found().is_some()).collect()
}

fn main() {
    println!("pair trades on 5 points: {:?}", spectrum(5, 2, 5));
    println!("pair trades on 9 points: {:?}", spectrum(9, 2, 18));
    println!("triple trades on 6 points: {:?}", spectrum(6, 3, 10));
    for s in [0, 1, 2, 17] {
        println!("{}", exhaustive_st(9, s, SearchBudget::nodes(50_000_000)));
    }
}
