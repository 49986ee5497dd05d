//! Large sets of STS: the stored one on 9 points, a searched one on 13 points, and
//! the disjoint-system searches behind them.
//!
//!     cargo run --release --example large_sets

use signed_sts::ingredients::{large_set, large_set_with, LargeSetOptions};
use signed_sts::search::{disjoint_sts_search, DisjointOutcome, SearchBudget};

fn main() {
    let ls9 = large_set(9).expect("stored");
    println!("n=9: {} disjoint classes of {} blocks", ls9.classes().len(), ls9.classes()[0].blocks().len());

    let options = LargeSetOptions { cache_dir: None, ..LargeSetOptions::default() };
    match large_set_with(13, &options) {
        Ok(ls) => println!("n=13: {} disjoint classes of {} blocks", ls.classes().len(), ls.classes()[0].blocks().len()),
        Err(e) => println!("n=13: {e}"),
    }
    match large_set(7) {
        Ok(_) => println!("n=7: unexpectedly found"),
        Err(e) => println!("n=7: {e}"),
    }

    for (n, count) in [(7, 2), (7, 3), (9, 7), (15, 3)] {
        let (outcome, stats) = disjoint_sts_search(n, count, SearchBudget::default());
        let what = match outcome {
            DisjointOutcome::Found(s) => format!("found {}", s.len()),
            DisjointOutcome::Exhausted => "none exist".into(),
            DisjointOutcome::BudgetExceeded => "budget exceeded".into(),
        };
        println!("{count} disjoint STS({n}): {what} ({} nodes)", stats.nodes);
    }
}
