//! Builds one ST(v, s), prints its certificate and the blocks in the text format.
//!
//!     cargo run --example generate_design -- 19 100 [seed]

use signed_sts::builders::generate_seeded;
use signed_sts::format::{serialize, Document};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (v, s) = match args[..] {
        [v, s, ..] => (v as usize, s as usize),
        _ => (15, 14),
    };
    let seed = args.get(2).copied().unwrap_or(0);
    match generate_seeded(v, s, seed) {
        Ok((design, cert)) => {
            println!("# route {:?}, verifier: {}", cert.route, cert.report);
            for piece in &cert.pieces {
                println!("#   {:<28} volume {}", piece.label, piece.volume);
            }
            for note in &cert.ingredients {
                println!("#   ingredient: {note}");
            }
            print!("{}", serialize(&Document::Design(design)));
        }
        Err(e) => {
            eprintln!("no design: {e}");
            std::process::exit(1);
        }
    }
}
