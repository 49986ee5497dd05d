pub mod balance;
pub mod block;
pub mod builders;
pub mod cli;
pub mod error;
pub mod format;
pub mod ingredients;
mod rng;
pub mod search;
pub mod signed;
pub mod spectrum;
pub mod trades;

pub use balance::{balance_map, verify, BalanceMap, Report, VerifyKind};
pub use block::{Block, GroundSet, Point, Sign};
pub use error::{Error, Result};
pub use signed::{product, relabel, signed_union, SignedBlockSet};
pub use spectrum::{admissible_spectrum, is_admissible, s_max, SpectrumSet};
