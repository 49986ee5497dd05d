mod disjoint;
mod engine;
mod exact_cover;

use std::fmt;
use std::time::Duration;

use serde::Serialize;

use crate::signed::SignedBlockSet;

pub use disjoint::{disjoint_sts_search, DisjointOutcome};
pub use engine::{exhaustive_st, trade_search};
pub use exact_cover::{CoverResult, ExactCover};
pub(crate) use engine::all_subsets as engine_subsets;

/// Limits for a search. The node limit keeps results reproducible; the time limit is a
/// safety net.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Option<Duration>,
    pub seed: u64,
}

impl SearchBudget {
    pub fn nodes(node_limit: u64) -> Self {
        Self { node_limit, time_limit: None, seed: 0 }
    }

    pub fn unlimited() -> Self {
        Self::nodes(u64::MAX)
    }

    pub fn with_time(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::nodes(50_000_000)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub max_depth: usize,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Found(SignedBlockSet),
    /// The whole space was explored without a solution.
    Exhausted,
    BudgetExceeded,
}

impl SearchStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SearchStatus::Found(_) => "Found",
            SearchStatus::Exhausted => "Exhausted",
            SearchStatus::BudgetExceeded => "BudgetExceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub query: String,
    pub status: SearchStatus,
    pub stats: SearchStats,
    pub budget: SearchBudget,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&SignedBlockSet> {
        match &self.status {
            SearchStatus::Found(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.status == SearchStatus::Exhausted
    }
}

/// One log line, e.g. `SEARCH st v=7 s=4 status=Exhausted nodes=311 depth=19 ms=0 seed=0`.
impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SEARCH {} status={} nodes={} depth={} ms={} seed={}",
            self.query,
            self.status.name(),
            self.stats.nodes,
            self.stats.max_depth,
            self.stats.elapsed_ms,
            self.budget.seed
        )
    }
}
