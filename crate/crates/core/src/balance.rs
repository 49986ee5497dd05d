use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::block::{Block, Point};
use crate::signed::SignedBlockSet;

/// Signed count of blocks through each `t`-subset; zero entries are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceMap {
    t: usize,
    values: BTreeMap<Block, i64>,
}

impl BalanceMap {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn get(&self, subset: &Block) -> i64 {
        self.values.get(subset).copied().unwrap_or(0)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (Block, i64)> + '_ {
        self.values.iter().map(|(b, x)| (*b, *x))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

/// Panics unless `1 <= t <= k`.
pub fn balance_map(set: &SignedBlockSet, t: usize) -> BalanceMap {
    assert!(t >= 1 && t <= set.arity(), "balance needs 1 <= t <= k");
    let mut values: BTreeMap<Block, i64> = BTreeMap::new();
    for (b, s) in set.iter() {
        for sub in b.subsets(t) {
            *values.entry(sub).or_default() += s.value();
        }
    }
    values.retain(|_, x| *x != 0);
    BalanceMap { t, values }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerifyKind {
    /// Every pair has balance 1; optionally pins the number of negative blocks.
    Design { expected_s: Option<usize> },
    /// Every `t`-subset has balance 0.
    Trade { t: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub subset: Vec<usize>,
    pub balance: i64,
    pub expected: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Issue {
    WrongArity { found: usize, expected: usize },
    PositiveCount { found: usize, expected: usize },
    UnexpectedS { found: usize, expected: usize },
    UnequalSides { positive: usize, negative: usize },
    Empty,
    BadTradeStrength { t: usize, k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub kind: VerifyKind,
    pub ok: bool,
    pub v: usize,
    pub k: usize,
    pub positive: usize,
    pub negative: usize,
    pub violations: Vec<Violation>,
    pub issues: Vec<Issue>,
}

impl Report {
    /// Negative count, which is `s` for a design.
    pub fn s(&self) -> usize {
        self.negative
    }

    /// Positive count, which is the volume of a trade.
    pub fn volume(&self) -> usize {
        self.positive
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok { "ok" } else { "FAILED" };
        match self.kind {
            VerifyKind::Design { .. } => {
                write!(f, "{status} design v={} s={} positive={}", self.v, self.negative, self.positive)?
            }
            VerifyKind::Trade { t } => write!(
                f,
                "{status} trade t={t} k={} v={} volume={} negative={}",
                self.k, self.v, self.positive, self.negative
            )?,
        }
        for issue in &self.issues {
            write!(f, "; {issue:?}")?;
        }
        for viol in self.violations.iter().take(5) {
            let pts: Vec<String> = viol.subset.iter().map(|p| p.to_string()).collect();
            write!(f, "; {{{}}} has balance {} (want {})", pts.join(" "), viol.balance, viol.expected)?;
        }
        if self.violations.len() > 5 {
            write!(f, "; {} more violations", self.violations.len() - 5)?;
        }
        Ok(())
    }
}

pub fn verify(set: &SignedBlockSet, kind: VerifyKind) -> Report {
    let (v, k) = (set.v(), set.arity());
    let mut report = Report {
        kind,
        ok: true,
        v,
        k,
        positive: set.pos_count(),
        negative: set.neg_count(),
        violations: Vec::new(),
        issues: Vec::new(),
    };
    let one_based = |b: &Block| b.points().iter().map(|&p| p as usize + 1).collect::<Vec<_>>();
    match kind {
        VerifyKind::Design { expected_s } => {
            if k != 3 {
                report.issues.push(Issue::WrongArity { found: k, expected: 3 });
            } else {
                let bal = balance_map(set, 2);
                for a in 0..v as Point {
                    for b in a + 1..v as Point {
                        let pair = Block::pair(a, b);
                        let x = bal.get(&pair);
                        if x != 1 {
                            report.violations.push(Violation { subset: one_based(&pair), balance: x, expected: 1 });
                        }
                    }
                }
                if (v * (v - 1)) % 6 == 0 {
                    let expected = report.negative + v * (v - 1) / 6;
                    if report.positive != expected {
                        report.issues.push(Issue::PositiveCount { found: report.positive, expected });
                    }
                }
            }
            if let Some(expected) = expected_s {
                if expected != report.negative {
                    report.issues.push(Issue::UnexpectedS { found: report.negative, expected });
                }
            }
        }
        VerifyKind::Trade { t } => {
            if t == 0 || t > k {
                report.issues.push(Issue::BadTradeStrength { t, k });
            } else {
                for (sub, x) in balance_map(set, t).nonzero() {
                    report.violations.push(Violation { subset: one_based(&sub), balance: x, expected: 0 });
                }
            }
            if set.is_empty() {
                report.issues.push(Issue::Empty);
            }
            if report.positive != report.negative {
                report.issues.push(Issue::UnequalSides { positive: report.positive, negative: report.negative });
            }
        }
    }
    report.ok = report.violations.is_empty() && report.issues.is_empty();
    report
}
