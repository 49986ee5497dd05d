use std::path::PathBuf;

use thiserror::Error;

use crate::block::Block;
use crate::spectrum::Inadmissibility;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set order must be between 1 and 65535, got {0}")]
    InvalidGround(usize),

    #[error("invalid block {points:?}: {reason}")]
    InvalidBlock { points: Vec<usize>, reason: &'static str },

    #[error("block {block} does not fit: expected arity {expected} on {v} points")]
    BlockMismatch { block: Block, expected: usize, v: usize },

    #[error("operands live on different ground sets ({left} vs {right} points)")]
    GroundMismatch { left: usize, right: usize },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("product arity {0} exceeds 3")]
    ArityTooLarge(usize),

    #[error("result is not simple; offending blocks: {}", list(.0))]
    NonSimple(Vec<Block>),

    #[error("product operands share points")]
    OverlappingSupports,

    #[error("relabeling is not a permutation of the ground set")]
    NotAPermutation,

    #[error("no Steiner triple system of order {0}")]
    InadmissibleOrder(usize),

    #[error("graph is not regular of even order")]
    NotRegular,

    #[error("no 1-factorization found (seed {seed}, budget {budget})")]
    FactorizationNotFound { seed: u64, budget: u64 },

    #[error("first row is not a permutation of the symbols")]
    BadFirstRow,

    #[error("no large set of Steiner triple systems of order 7 exists")]
    CayleyExclusion,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("search budget exceeded after {nodes} nodes (seed {seed})")]
    SearchBudgetExceeded { seed: u64, nodes: u64 },

    #[error("points must be distinct")]
    DuplicatePoints,

    #[error("no trade of volume {s} on {v} points from this constructor")]
    InfeasibleVolume { v: usize, s: usize },

    #[error("trade mode not applicable: {0}")]
    InfeasibleMode(String),

    #[error("volume {0} is not an appendix column")]
    NotInTable(usize),

    #[error("parts must be three disjoint 4-sets inside the ground set")]
    BadParts,

    #[error("invalid partition into 4-sets: {0}")]
    BadPartition(String),

    #[error("no combination of family volumes reaches {target}")]
    Infeasible { target: usize },

    #[error("no relabeling of the base system avoids the swap triples")]
    NoValidRelabeling,

    #[error("(v, s) = ({v}, {s}) is not admissible: {reason}")]
    NotAdmissible { v: usize, s: usize, reason: Inadmissibility },

    #[error("ingredient unavailable: {0}")]
    IngredientUnavailable(String),

    #[error("construction for (v, s) = ({v}, {s}) failed verification: {detail}")]
    VerificationFailed { v: usize, s: usize, detail: String },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Well-formed text whose content fails the structural checks of its kind.
    #[error("invalid {kind} document: {message}")]
    InvalidDocument { kind: &'static str, message: String },

    #[error("I/O error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

fn list(blocks: &[Block]) -> String {
    blocks.iter().map(|b| format!("{{{b}}}")).collect::<Vec<_>>().join(", ")
}
