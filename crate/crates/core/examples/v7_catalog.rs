//! The order-7 picture: which s occur, the listed designs, and the search that rules
//! out the rest.
//!
//!     cargo run --release --example v7_catalog

use signed_sts::builders::build_v7;
use signed_sts::search::{exhaustive_st, SearchBudget};
use signed_sts::spectrum::admissible_spectrum;

fn main() {
    println!("admissible s for v=7: {}", admissible_spectrum(7));
    for s in admissible_spectrum(7).iter() {
        let d = build_v7(s).expect("catalog entry");
        let neg: Vec<String> = d.negative().map(|b| b.to_string().replace(' ', "")).collect();
        println!("s={s:>2}: {:>2} blocks, negative {{{}}}", d.len(), neg.join(", "));
    }
    for s in [1, 4, 7, 9, 10, 11, 12, 13] {
        println!("{}", exhaustive_st(7, s, SearchBudget::unlimited()));
    }
}
