//! Reads any document (design, trade, large set, factorization) and reports on it.
//! Without an argument it writes an ST(15, 14) to a temporary file and checks that.
//!
//!     cargo run --example verify_file -- design.txt

use signed_sts::balance::{verify, VerifyKind};
use signed_sts::builders::generate;
use signed_sts::format::{parse, serialize, Document};

fn main() {
    let path = match std::env::args().nth(1) {
        Some(p) => std::path::PathBuf::from(p),
        None => {
            let (d, _) = generate(15, 14).expect("admissible");
            let p = std::env::temp_dir().join("signed-sts-example-15-14.txt");
            std::fs::write(&p, serialize(&Document::Design(d))).expect("temp dir is writable");
            p
        }
    };
    let text = std::fs::read_to_string(&path).expect("readable file");
    match parse(&text) {
        Ok(Document::Design(d)) => println!("{}", verify(&d, VerifyKind::Design { expected_s: None })),
        Ok(Document::Trade { t, set }) => println!("{}", verify(&set, VerifyKind::Trade { t })),
        Ok(Document::LargeSet(ls)) => println!("large set of order {} with {} classes", ls.order(), ls.classes().len()),
        Ok(Document::Factorization(f)) => println!("1-factorization of K_{} into {} factors", f.ground().order(), f.len()),
        Err(e) => println!("{}: {e}", path.display()),
    }
}
