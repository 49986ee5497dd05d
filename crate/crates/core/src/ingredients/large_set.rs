use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::block::{Block, GroundSet};
use crate::error::{Error, Result};
use crate::format::{parse, serialize, Document};
use crate::ingredients::{make_sts, STSystem};
use crate::search::{disjoint_sts_search, DisjointOutcome, SearchBudget};

/// `n - 2` pairwise disjoint Steiner triple systems of order `n`; together they use
/// every triple exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargeSet {
    ground: GroundSet,
    classes: Vec<STSystem>,
}

impl LargeSet {
    pub fn new(ground: GroundSet, classes: Vec<STSystem>) -> Result<Self> {
        let n = ground.order();
        let bad = |msg: &str| Error::IngredientUnavailable(format!("invalid large set of order {n}: {msg}"));
        if n < 3 || classes.len() != n - 2 {
            return Err(bad("wrong number of classes"));
        }
        let mut all: Vec<Block> = Vec::new();
        for c in &classes {
            if c.ground() != ground {
                return Err(bad("class on another ground set"));
            }
            all.extend_from_slice(c.blocks());
        }
        all.sort();
        let total = all.len();
        all.dedup();
        if all.len() != total {
            return Err(bad("classes share a triple"));
        }
        Ok(Self { ground, classes })
    }

    pub fn order(&self) -> usize {
        self.ground.order()
    }

    pub fn classes(&self) -> &[STSystem] {
        &self.classes
    }
}

/// Where and how hard to look for large sets that are not stored.
#[derive(Clone, Debug)]
pub struct LargeSetOptions {
    pub budget: SearchBudget,
    /// `None` disables the cache.
    pub cache_dir: Option<PathBuf>,
}

impl Default for LargeSetOptions {
    fn default() -> Self {
        Self { budget: SearchBudget::nodes(20_000_000), cache_dir: Some(default_cache_dir()) }
    }
}

/// `$SIGNED_STS_CACHE_DIR`, or a directory under the system temp dir.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os("SIGNED_STS_CACHE_DIR").map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("signed-sts"))
}

const STORED_9: &str = include_str!("data/large_set_9.txt");

pub fn large_set(n: usize) -> Result<LargeSet> {
    large_set_with(n, &LargeSetOptions::default())
}

pub fn large_set_with(n: usize, options: &LargeSetOptions) -> Result<LargeSet> {
    if !matches!(n % 6, 1 | 3) {
        return Err(Error::InadmissibleOrder(n));
    }
    match n {
        1 => Err(Error::InadmissibleOrder(n)),
        3 => LargeSet::new(GroundSet::new(3)?, vec![make_sts(3)?]),
        7 => Err(Error::CayleyExclusion),
        9 => match parse(STORED_9)? {
            Document::LargeSet(ls) => Ok(ls),
            _ => Err(Error::IngredientUnavailable("stored large set of order 9 is malformed".into())),
        },
        13 => searched(n, options),
        _ => Err(Error::Unsupported(format!("large set of order {n}"))),
    }
}

fn cache_file(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("large_set_{n}.txt"))
}

fn read_cache(dir: &Path, n: usize) -> Option<LargeSet> {
    let text = fs::read_to_string(cache_file(dir, n)).ok()?;
    match parse(&text).ok()? {
        Document::LargeSet(ls) if ls.order() == n => Some(ls),
        _ => None,
    }
}

/// Writes through a temporary file and a rename, so readers never see a partial file.
fn write_cache(dir: &Path, n: usize, ls: &LargeSet, budget: &SearchBudget) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let target = cache_file(dir, n);
    let tmp = dir.join(format!(".large_set_{n}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        writeln!(f, "# signed-sts large set cache format=1 seed={} node_limit={}", budget.seed, budget.node_limit)?;
        f.write_all(serialize(&Document::LargeSet(ls.clone())).as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, &target)
}

fn searched(n: usize, options: &LargeSetOptions) -> Result<LargeSet> {
    if let Some(dir) = &options.cache_dir {
        if let Some(ls) = read_cache(dir, n) {
            return Ok(ls);
        }
    }
    let (outcome, stats) = disjoint_sts_search(n, n - 2, options.budget);
    match outcome {
        DisjointOutcome::Found(classes) => {
            let ls = LargeSet::new(GroundSet::new(n)?, classes)?;
            if let Some(dir) = &options.cache_dir {
                // A failed cache write only costs a later recomputation.
                let _ = write_cache(dir, n, &ls, &options.budget);
            }
            Ok(ls)
        }
        _ => Err(Error::SearchBudgetExceeded { seed: options.budget.seed, nodes: stats.nodes }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(large_set(3).unwrap().classes().len(), 1);
        assert!(matches!(large_set(7), Err(Error::CayleyExclusion)));
        assert!(matches!(large_set(8), Err(Error::InadmissibleOrder(8))));
        assert!(matches!(large_set(15), Err(Error::Unsupported(_))));
        assert_eq!(large_set(9).unwrap().classes().len(), 7);
    }

    #[test]
    fn order_thirteen_is_cached() {
        let dir = tempfile::tempdir().unwrap();
        let options = LargeSetOptions { cache_dir: Some(dir.path().to_path_buf()), ..Default::default() };
        let first = large_set_with(13, &options).unwrap();
        assert_eq!(first.classes().len(), 11);
        assert!(cache_file(dir.path(), 13).exists());
        assert_eq!(large_set_with(13, &options).unwrap(), first);
    }

    #[test]
    fn corrupt_cache_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(cache_file(dir.path(), 13), "LS n=13 classes=11\nC1 1 2 3\n").unwrap();
        let options = LargeSetOptions { cache_dir: Some(dir.path().to_path_buf()), ..Default::default() };
        assert_eq!(large_set_with(13, &options).unwrap().classes().len(), 11);
    }
}
