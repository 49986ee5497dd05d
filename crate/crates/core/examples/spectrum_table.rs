//! Admissible values of s for the first few orders.
//!
//!     cargo run --example spectrum_table -- 40

use signed_sts::spectrum::{admissible_spectrum, s_max};

fn main() {
    let top: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(31);
    for v in 0..=top {
        let spectrum = admissible_spectrum(v);
        if spectrum.is_empty() {
            continue;
        }
        println!("v={v:>3}  s_max={:>5}  count={:>5}  {spectrum}", s_max(v).unwrap_or(0), spectrum.len());
    }
}
