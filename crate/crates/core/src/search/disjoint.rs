use std::collections::HashMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;

use super::engine::all_subsets;
use super::exact_cover::{CoverResult, ExactCover};
use super::{SearchBudget, SearchStats};
use crate::block::{Block, GroundSet, Point};
use crate::ingredients::STSystem;
use crate::rng::seeded;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DisjointOutcome {
    Found(Vec<STSystem>),
    /// Only reported by the exact modes.
    Exhausted,
    BudgetExceeded,
}

/// Searches for `count` pairwise block-disjoint Steiner triple systems of order `n`.
///
/// Orders up to 9 use an exact cover search that can prove non-existence. For larger
/// orders a full large set (`count = n - 2`) is first sought among systems invariant
/// under a cyclic group of order `n - 2` fixing two points; otherwise stacked
/// hill-climbing is used.
pub fn disjoint_sts_search(n: usize, count: usize, budget: SearchBudget) -> (DisjointOutcome, SearchStats) {
    let start = Instant::now();
    let mut stats = SearchStats::default();
    let outcome = if !matches!(n % 6, 1 | 3) || count > n.saturating_sub(2) {
        DisjointOutcome::Exhausted
    } else if count == 0 {
        DisjointOutcome::Found(Vec::new())
    } else if n <= 9 {
        exact(n, count, budget, &mut stats)
    } else {
        let cyclic = if count == n - 2 && (n - 2) % 3 != 0 { cyclic_large_set(n, budget, &mut stats) } else { None };
        match cyclic {
            Some(classes) => DisjointOutcome::Found(classes),
            None => hill_climb(n, count, budget, &mut stats, start),
        }
    };
    stats.elapsed_ms = start.elapsed().as_millis();
    (outcome, stats)
}

fn pair_index(n: usize, a: Point, b: Point) -> usize {
    let (a, b) = (a.min(b) as usize, a.max(b) as usize);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

fn systems(n: usize, classes: Vec<Vec<Block>>) -> Vec<STSystem> {
    let ground = GroundSet::new(n).expect("positive order");
    classes.into_iter().map(|c| STSystem::new(ground, c).expect("search output is a Steiner system")).collect()
}

fn exact(n: usize, count: usize, budget: SearchBudget, stats: &mut SearchStats) -> DisjointOutcome {
    let pairs = n * (n - 1) / 2;
    let triples = all_subsets(n, 3);
    let mut x = ExactCover::new(count * pairs, count * pairs + triples.len());
    let mut labels = Vec::new();
    let zero_one = Block::pair(0, 1);
    for c in 0..count {
        for (ti, t) in triples.iter().enumerate() {
            // Classes are interchangeable and points 2.. can be relabeled, so class c may
            // be assumed to complete the pair {0, 1} with the point 2 + c.
            if let Some(w) = t.third(&zero_one) {
                if w as usize != 2 + c {
                    continue;
                }
            }
            let p = t.points();
            let items = [
                c * pairs + pair_index(n, p[0], p[1]),
                c * pairs + pair_index(n, p[0], p[2]),
                c * pairs + pair_index(n, p[1], p[2]),
                count * pairs + ti,
            ];
            x.add_option(&items);
            labels.push((c, *t));
        }
    }
    let result = x.solve(budget.node_limit);
    stats.nodes = x.nodes();
    match result {
        CoverResult::Solution(opts) => {
            let mut classes = vec![Vec::new(); count];
            for o in opts {
                let (c, t) = labels[o];
                classes[c].push(t);
            }
            DisjointOutcome::Found(systems(n, classes))
        }
        CoverResult::NoSolution => DisjointOutcome::Exhausted,
        CoverResult::BudgetExceeded => DisjointOutcome::BudgetExceeded,
    }
}

/// Points `0..n-2` form Z_{n-2}; `n-2` and `n-1` are fixed. A base system containing exactly
/// one triple from every translation orbit yields a large set from its translates.
fn cyclic_large_set(n: usize, budget: SearchBudget, stats: &mut SearchStats) -> Option<Vec<STSystem>> {
    let m = n - 2;
    let shift = |p: Point, d: usize| if (p as usize) < m { ((p as usize + d) % m) as Point } else { p };
    let triples = all_subsets(n, 3);
    let mut orbit_of: HashMap<Block, usize> = HashMap::new();
    let mut orbits = 0;
    for t in &triples {
        if orbit_of.contains_key(t) {
            continue;
        }
        for d in 0..m {
            orbit_of.insert(t.map(|p| shift(p, d)), orbits);
        }
        orbits += 1;
    }
    let pairs = n * (n - 1) / 2;
    let mut x = ExactCover::new(pairs + orbits, pairs + orbits);
    for t in &triples {
        let p = t.points();
        x.add_option(&[
            pair_index(n, p[0], p[1]),
            pair_index(n, p[0], p[2]),
            pair_index(n, p[1], p[2]),
            pairs + orbit_of[t],
        ]);
    }
    let result = x.solve(budget.node_limit);
    stats.nodes += x.nodes();
    let CoverResult::Solution(opts) = result else {
        return None;
    };
    let base: Vec<Block> = opts.iter().map(|&o| triples[o]).collect();
    let classes = (0..m).map(|d| base.iter().map(|b| b.map(|p| shift(p, d))).collect()).collect();
    Some(systems(n, classes))
}

/// Builds the systems one at a time with Stinson's hill-climbing, restricted to triples
/// not used by earlier systems. A stuck system restarts the whole stack.
fn hill_climb(n: usize, count: usize, budget: SearchBudget, stats: &mut SearchStats, start: Instant) -> DisjointOutcome {
    let mut rng = seeded(budget.seed, 0x4111);
    let target = n * (n - 1) / 6;
    let per_class_steps = (50 * n * n) as u64;
    loop {
        let mut used: Vec<bool> = vec![false; n * n * n];
        let code = |b: &Block| {
            let p = b.points();
            (p[0] as usize * n + p[1] as usize) * n + p[2] as usize
        };
        let mut classes: Vec<Vec<Block>> = Vec::new();
        'class: while classes.len() < count {
            // other[a][b] = third point of the block through {a, b}, if any.
            let mut other = vec![vec![None::<Point>; n]; n];
            let mut blocks: Vec<Block> = Vec::new();
            let mut steps = 0u64;
            while blocks.len() < target {
                steps += 1;
                stats.nodes += 1;
                if stats.nodes >= budget.node_limit || budget.time_limit.is_some_and(|l| start.elapsed() > l) {
                    return DisjointOutcome::BudgetExceeded;
                }
                if steps > per_class_steps {
                    break 'class;
                }
                let live: Vec<Point> = (0..n as Point).filter(|&p| (0..n).filter(|&q| q != p as usize && other[p as usize][q].is_none()).count() > 0).collect();
                let x = live[rng.gen_range(0..live.len())];
                let mut free: Vec<Point> = (0..n as Point).filter(|&q| q != x && other[x as usize][q as usize].is_none()).collect();
                free.shuffle(&mut rng);
                let (y, z) = (free[0], free[1]);
                let t = Block::triple(x, y, z);
                if used[code(&t)] {
                    continue;
                }
                if let Some(w) = other[y as usize][z as usize] {
                    let old = Block::triple(y, z, w);
                    blocks.retain(|b| *b != old);
                    for (a, b) in [(y, z), (y, w), (z, w)] {
                        other[a as usize][b as usize] = None;
                        other[b as usize][a as usize] = None;
                    }
                }
                for (a, b, c) in [(x, y, z), (x, z, y), (y, z, x)] {
                    other[a as usize][b as usize] = Some(c);
                    other[b as usize][a as usize] = Some(c);
                }
                blocks.push(t);
            }
            for b in &blocks {
                used[code(b)] = true;
            }
            classes.push(blocks);
        }
        if classes.len() == count {
            return DisjointOutcome::Found(systems(n, classes));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_disjoint_fano_planes_exist_but_three_do_not() {
        let (two, _) = disjoint_sts_search(7, 2, SearchBudget::default());
        let DisjointOutcome::Found(f) = two else { panic!("expected a pair") };
        assert!(f[0].blocks().iter().all(|b| !f[1].contains(b)));
        let (three, _) = disjoint_sts_search(7, 3, SearchBudget::default());
        assert_eq!(three, DisjointOutcome::Exhausted);
    }

    #[test]
    fn large_set_of_order_nine() {
        let (out, _) = disjoint_sts_search(9, 7, SearchBudget::default());
        let DisjointOutcome::Found(classes) = out else { panic!("expected a large set") };
        let mut all: Vec<Block> = classes.iter().flat_map(|c| c.blocks().to_vec()).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 84);
    }

    #[test]
    fn hill_climbing_stacks_a_few_systems() {
        let (out, _) = disjoint_sts_search(15, 3, SearchBudget::nodes(2_000_000).with_seed(5));
        let DisjointOutcome::Found(classes) = out else { panic!("expected three systems") };
        assert_eq!(classes.len(), 3);
    }
}
