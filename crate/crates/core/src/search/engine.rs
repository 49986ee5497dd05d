use std::collections::HashMap;
use std::time::Instant;

use super::{SearchBudget, SearchOutcome, SearchStats, SearchStatus};
use crate::block::{Block, GroundSet, Point, Sign};
use crate::signed::SignedBlockSet;

const UNDECIDED: u8 = 0;
const ABSENT: u8 = 1;
const POS: u8 = 2;
const NEG: u8 = 3;

/// Exhaustive search for an ST(v, s): a simple signed set of triples with every pair
/// balanced to 1 and exactly `s` negative blocks.
pub fn exhaustive_st(v: usize, s: usize, budget: SearchBudget) -> SearchOutcome {
    let query = format!("st v={v} s={s}");
    if v < 3 || (v * (v - 1)) % 6 != 0 {
        return trivial(query, SearchStatus::Exhausted, budget);
    }
    let blocks = all_subsets(v, 3);
    let problem = Problem::new(v, 3, 2, 1, blocks, s + v * (v - 1) / 6, s);
    // Every design has a positive block, and relabeling moves it onto {1, 2, 3}.
    problem.run(query, budget, Symmetry::FixPositive(0))
}

/// Exhaustive search for a T(t, k, v) trade of volume `s` that avoids `forbidden` blocks.
pub fn trade_search(v: usize, t: usize, k: usize, s: usize, forbidden: &[Block], budget: SearchBudget) -> SearchOutcome {
    let query = format!("trade t={t} k={k} v={v} s={s}");
    if s == 0 || t == 0 || t > k || k > 3 || k > v {
        return trivial(query, SearchStatus::Exhausted, budget);
    }
    let blocks: Vec<Block> = all_subsets(v, k).into_iter().filter(|b| !forbidden.contains(b)).collect();
    let problem = Problem::new(v, k, t, 0, blocks, s, s);
    // With nothing forbidden the block group is transitive, so some positive block can be
    // moved onto the first one. Otherwise only the negation symmetry is used.
    let symmetry = if forbidden.is_empty() { Symmetry::FixPositive(0) } else { Symmetry::FirstNonzeroPositive };
    problem.run(query, budget, symmetry)
}

fn trivial(query: String, status: SearchStatus, budget: SearchBudget) -> SearchOutcome {
    SearchOutcome { query, status, stats: SearchStats::default(), budget }
}

pub(crate) fn all_subsets(v: usize, k: usize) -> Vec<Block> {
    let n = v as Point;
    let mut out = Vec::new();
    match k {
        1 => out.extend((0..n).map(Block::point)),
        2 => {
            for a in 0..n {
                for b in a + 1..n {
                    out.push(Block::pair(a, b));
                }
            }
        }
        3 => {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        out.push(Block::triple(a, b, c));
                    }
                }
            }
        }
        _ => {}
    }
    out
}

enum Symmetry {
    FixPositive(usize),
    FirstNonzeroPositive,
}

struct Problem {
    v: usize,
    k: usize,
    lambda: i32,
    blocks: Vec<Block>,
    keys_of: Vec<Vec<usize>>,
    blocks_of: Vec<Vec<usize>>,
    per_block: usize,
    pos_target: usize,
    neg_target: usize,
}

impl Problem {
    fn new(v: usize, k: usize, t: usize, lambda: i32, blocks: Vec<Block>, pos_target: usize, neg_target: usize) -> Self {
        let keys = all_subsets(v, t);
        let index: HashMap<Block, usize> = keys.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let keys_of: Vec<Vec<usize>> =
            blocks.iter().map(|b| b.subsets(t).iter().map(|sub| index[sub]).collect()).collect();
        let mut blocks_of = vec![Vec::new(); keys.len()];
        for (bi, ks) in keys_of.iter().enumerate() {
            for &key in ks {
                blocks_of[key].push(bi);
            }
        }
        let per_block = keys_of.first().map_or(1, |k| k.len());
        Self { v, k, lambda, blocks, keys_of, blocks_of, per_block, pos_target, neg_target }
    }

    fn run(&self, query: String, budget: SearchBudget, symmetry: Symmetry) -> SearchOutcome {
        let start = Instant::now();
        let total = self.blocks.len();
        let fits = self.pos_target + self.neg_target <= total;
        let mut st = State::new(self, budget, start);
        let mut status = SearchStatus::Exhausted;
        if fits && self.keys_consistent() {
            let mut ok = true;
            match symmetry {
                Symmetry::FixPositive(b) if b < total => ok = st.assign(self, b, POS),
                Symmetry::FixPositive(_) => ok = false,
                Symmetry::FirstNonzeroPositive => st.first_nonzero_positive = true,
            }
            if ok && st.dfs(self, 1) {
                status = SearchStatus::Found(self.witness(&st));
            } else if st.aborted {
                status = SearchStatus::BudgetExceeded;
            }
        }
        let stats = SearchStats { nodes: st.nodes, max_depth: st.max_depth, elapsed_ms: start.elapsed().as_millis() };
        SearchOutcome { query, status, stats, budget }
    }

    /// A key with no available blocks must already have the target balance.
    fn keys_consistent(&self) -> bool {
        self.blocks_of.iter().all(|b| !b.is_empty() || self.lambda == 0)
    }

    fn witness(&self, st: &State) -> SignedBlockSet {
        let ground = GroundSet::new(self.v).expect("positive order");
        let entries = self.blocks.iter().zip(&st.val).filter_map(|(b, &x)| match x {
            POS => Some((*b, Sign::Pos)),
            NEG => Some((*b, Sign::Neg)),
            _ => None,
        });
        SignedBlockSet::from_entries(ground, self.k, entries).expect("distinct blocks")
    }
}

struct State {
    val: Vec<u8>,
    bal: Vec<i32>,
    und: Vec<u32>,
    absent_at: Vec<u32>,
    parity_base: Vec<u32>,
    wrong_parity: usize,
    deficit_pos: i64,
    deficit_neg: i64,
    pos: usize,
    neg: usize,
    abs: usize,
    abs_target: usize,
    first_nonzero_positive: bool,
    nodes: u64,
    max_depth: usize,
    aborted: bool,
    budget: SearchBudget,
    start: Instant,
}

impl State {
    fn new(p: &Problem, budget: SearchBudget, start: Instant) -> Self {
        let nkeys = p.blocks_of.len();
        let und: Vec<u32> = p.blocks_of.iter().map(|b| b.len() as u32).collect();
        // A key's final absent count must have the parity of (degree - lambda).
        let parity_base: Vec<u32> = und.iter().map(|&d| ((d as i64 - p.lambda as i64).rem_euclid(2)) as u32).collect();
        let wrong_parity = parity_base.iter().filter(|&&x| x == 1).count();
        let deficit_pos = if p.lambda > 0 { nkeys as i64 * p.lambda as i64 } else { 0 };
        Self {
            val: vec![UNDECIDED; p.blocks.len()],
            bal: vec![0; nkeys],
            und,
            absent_at: vec![0; nkeys],
            parity_base,
            wrong_parity,
            deficit_pos,
            deficit_neg: 0,
            pos: 0,
            neg: 0,
            abs: 0,
            abs_target: p.blocks.len().saturating_sub(p.pos_target + p.neg_target),
            first_nonzero_positive: false,
            nodes: 0,
            max_depth: 0,
            aborted: false,
            budget,
            start,
        }
    }

    fn deficits(lambda: i32, bal: i32) -> (i64, i64) {
        ((lambda - bal).max(0) as i64, (bal - lambda).max(0) as i64)
    }

    fn apply(&mut self, p: &Problem, b: usize, x: u8, dir: i32) {
        let delta = match x {
            POS => 1,
            NEG => -1,
            _ => 0,
        };
        for &key in &p.keys_of[b] {
            let (dp, dn) = Self::deficits(p.lambda, self.bal[key]);
            self.deficit_pos -= dp;
            self.deficit_neg -= dn;
            let was_wrong = (self.absent_at[key] + self.parity_base[key]) % 2 == 1;
            self.bal[key] += dir * delta;
            if dir > 0 {
                self.und[key] -= 1;
            } else {
                self.und[key] += 1;
            }
            if x == ABSENT {
                if dir > 0 {
                    self.absent_at[key] += 1;
                } else {
                    self.absent_at[key] -= 1;
                }
            }
            let is_wrong = (self.absent_at[key] + self.parity_base[key]) % 2 == 1;
            match (was_wrong, is_wrong) {
                (true, false) => self.wrong_parity -= 1,
                (false, true) => self.wrong_parity += 1,
                _ => {}
            }
            let (dp, dn) = Self::deficits(p.lambda, self.bal[key]);
            self.deficit_pos += dp;
            self.deficit_neg += dn;
        }
        let counter = match x {
            POS => &mut self.pos,
            NEG => &mut self.neg,
            _ => &mut self.abs,
        };
        if dir > 0 {
            *counter += 1;
            self.val[b] = x;
        } else {
            *counter -= 1;
            self.val[b] = UNDECIDED;
        }
    }

    /// Assigns and reports whether the partial assignment can still be completed.
    fn assign(&mut self, p: &Problem, b: usize, x: u8) -> bool {
        self.apply(p, b, x, 1);
        self.feasible(p, b)
    }

    fn feasible(&self, p: &Problem, b: usize) -> bool {
        if self.pos > p.pos_target || self.neg > p.neg_target || self.abs > self.abs_target {
            return false;
        }
        for &key in &p.keys_of[b] {
            if (p.lambda - self.bal[key]).unsigned_abs() > self.und[key] {
                return false;
            }
        }
        let per = p.per_block as i64;
        let need = |deficit: i64| (deficit + per - 1) / per;
        need(self.deficit_pos) <= (p.pos_target - self.pos) as i64
            && need(self.deficit_neg) <= (p.neg_target - self.neg) as i64
            && need(self.wrong_parity as i64) <= (self.abs_target - self.abs) as i64
    }

    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.budget.node_limit {
            self.aborted = true;
        }
        if self.nodes % 1024 == 0 {
            if let Some(limit) = self.budget.time_limit {
                if self.start.elapsed() > limit {
                    self.aborted = true;
                }
            }
        }
        self.aborted
    }

    fn dfs(&mut self, p: &Problem, depth: usize) -> bool {
        self.nodes += 1;
        self.max_depth = self.max_depth.max(depth);
        if self.out_of_budget() {
            return false;
        }
        // Branch on the tightest key: least slack between its remaining freedom and its
        // distance from the target balance.
        let mut best: Option<(u32, u32, usize)> = None;
        for key in 0..p.blocks_of.len() {
            let u = self.und[key];
            if u == 0 {
                continue;
            }
            let slack = u - (p.lambda - self.bal[key]).unsigned_abs();
            if best.map_or(true, |(s, bu, _)| (slack, u) < (s, bu)) {
                best = Some((slack, u, key));
            }
        }
        let Some((_, _, key)) = best else {
            return self.pos == p.pos_target && self.neg == p.neg_target;
        };
        let b = *p.blocks_of[key].iter().find(|&&b| self.val[b] == UNDECIDED).expect("undecided block");
        let order = match self.bal[key].cmp(&p.lambda) {
            std::cmp::Ordering::Less => [POS, ABSENT, NEG],
            std::cmp::Ordering::Greater => [NEG, ABSENT, POS],
            std::cmp::Ordering::Equal => [ABSENT, POS, NEG],
        };
        for x in order {
            if x == NEG && self.first_nonzero_positive && self.pos + self.neg == 0 {
                continue;
            }
            let ok = self.assign(p, b, x);
            if ok && self.dfs(p, depth + 1) {
                return true;
            }
            self.apply(p, b, x, -1);
            if self.aborted {
                return false;
            }
        }
        false
    }
}
