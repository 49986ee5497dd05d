mod factorization;
mod fano;
mod large_set;
mod latin;
mod pasch;
mod sts;

pub use factorization::{one_factorization, FactorizationInput, OneFactorization};
pub use fano::{fano_structures, FanoStructures};
pub use large_set::{default_cache_dir, large_set, large_set_with, LargeSet, LargeSetOptions};
pub use latin::{latin_square, LatinSquare};
pub use pasch::{pasch_step, pasch_trade};
pub use sts::{make_sts, STSystem};
