mod appendix;
mod pair;
mod plan;
mod remain;
mod triple;
mod tripartite;

pub use appendix::{appendix_table, appendix_trade8, APPENDIX_VOLUMES};
pub use pair::{pair_trade, pair_trade_seeded, pair_trade_volumes, PairTradeMode};
pub use plan::{plan_volumes, VolumeFamily};
pub use remain::{remain_max, remain_trade, remain_volumes, PartitionIntoQuads};
pub(crate) use remain::remain_in;
pub use triple::{triple_trade, triple_trade_seeded, triple_trade_volumes};
pub use tripartite::tripartite_trade;
