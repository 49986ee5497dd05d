use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::block::{Block, GroundSet, Point, Sign};
use crate::error::{Error, Result};
use crate::rng::seeded;
use crate::signed::SignedBlockSet;

/// Which pairs a pair trade may use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairTradeMode {
    /// Every pair when `v` is odd; for even `v` the pairs {1,2}, {3,4}, ... are left out.
    Any,
    /// Every pair except the three sides of the given triangle.
    LeaveTriangle([Point; 3]),
    /// Every pair except those of a given perfect matching (even `v`).
    AvoidMatching(Vec<Block>),
}

/// Allowed-edge graph with all degrees even; the error explains when a mode does not apply.
fn allowed_graph(v: usize, mode: &PairTradeMode) -> Result<Vec<Vec<bool>>> {
    let mut adj = vec![vec![true; v]; v];
    for (i, row) in adj.iter_mut().enumerate() {
        row[i] = false;
    }
    let mut remove = |e: Block| {
        let p = e.points();
        adj[p[0] as usize][p[1] as usize] = false;
        adj[p[1] as usize][p[0] as usize] = false;
    };
    match mode {
        PairTradeMode::Any => {
            if v % 2 == 0 {
                for i in (0..v).step_by(2) {
                    remove(Block::pair(i as Point, i as Point + 1));
                }
            }
        }
        PairTradeMode::LeaveTriangle(t) => {
            let mut s = *t;
            s.sort_unstable();
            if v % 2 == 0 || s[0] == s[1] || s[1] == s[2] || s[2] as usize >= v {
                return Err(Error::InfeasibleMode("triangle must be three distinct points, v odd".into()));
            }
            remove(Block::pair(s[0], s[1]));
            remove(Block::pair(s[0], s[2]));
            remove(Block::pair(s[1], s[2]));
        }
        PairTradeMode::AvoidMatching(m) => {
            let mut hit = vec![false; v];
            for e in m {
                if e.arity() != 2 || e.max_point() as usize >= v {
                    return Err(Error::InfeasibleMode("matching edge outside ground set".into()));
                }
                for &p in e.points() {
                    if std::mem::replace(&mut hit[p as usize], true) {
                        return Err(Error::InfeasibleMode("edges of the matching meet".into()));
                    }
                }
                remove(*e);
            }
            if hit.iter().any(|h| !h) {
                return Err(Error::InfeasibleMode("matching is not perfect".into()));
            }
        }
    }
    Ok(adj)
}

fn edge_count(adj: &[Vec<bool>]) -> usize {
    adj.iter().map(|r| r.iter().filter(|x| **x).count()).sum::<usize>() / 2
}

/// Volumes this constructor supports for `(v, mode)`.
///
/// A pair trade of volume `s` is an even-degree graph with `2s` edges, every component
/// having an even number of edges. Inside an allowed graph with `E` edges and all
/// degrees even this is possible exactly when `2 <= s`, `2s <= E` and the leftover
/// `E - 2s` is not 1 or 2 (a nonempty even leftover needs at least a triangle).
pub fn pair_trade_volumes(v: usize, mode: &PairTradeMode) -> Result<Vec<usize>> {
    if v < 4 {
        return Ok(Vec::new());
    }
    let adj = allowed_graph(v, mode)?;
    let e = edge_count(&adj);
    Ok((2..=e / 2).filter(|s| !matches!(e - 2 * s, 1 | 2)).collect())
}

pub fn pair_trade(v: usize, s: usize, mode: &PairTradeMode) -> Result<SignedBlockSet> {
    pair_trade_seeded(v, s, mode, 0)
}

pub fn pair_trade_seeded(v: usize, s: usize, mode: &PairTradeMode, seed: u64) -> Result<SignedBlockSet> {
    if !pair_trade_volumes(v, mode)?.contains(&s) {
        return Err(Error::InfeasibleVolume { v, s });
    }
    let adj = allowed_graph(v, mode)?;
    let mut rng = seeded(seed, (v as u64) << 20 | s as u64);
    let total = edge_count(&adj);
    for _ in 0..400 {
        let edges = if 2 * s * 2 > total { by_removal(&adj, 2 * s, &mut rng) } else { by_growth(&adj, 2 * s, &mut rng) };
        if let Some(h) = edges {
            return alternate(GroundSet::new(v)?, &h);
        }
    }
    Err(Error::SearchBudgetExceeded { seed, nodes: 400 })
}

/// Random simple cycle with exactly `len` vertices through one of `starts`.
fn find_cycle(adj: &[Vec<bool>], len: usize, starts: &[Point], rng: &mut ChaCha8Rng) -> Option<Vec<Point>> {
    let v = adj.len();
    let mut starts = starts.to_vec();
    starts.shuffle(rng);
    let mut budget = 20_000u32;
    fn extend(
        adj: &[Vec<bool>],
        path: &mut Vec<Point>,
        on: &mut [bool],
        len: usize,
        rng: &mut ChaCha8Rng,
        budget: &mut u32,
    ) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let last = *path.last().unwrap() as usize;
        if path.len() == len {
            return adj[last][path[0] as usize];
        }
        let mut next: Vec<usize> = (0..adj.len()).filter(|&w| adj[last][w] && !on[w]).collect();
        next.shuffle(rng);
        for w in next {
            path.push(w as Point);
            on[w] = true;
            if extend(adj, path, on, len, rng, budget) {
                return true;
            }
            on[w] = false;
            path.pop();
        }
        false
    }
    for s in starts {
        let mut path = vec![s];
        let mut on = vec![false; v];
        on[s as usize] = true;
        if extend(adj, &mut path, &mut on, len, rng, &mut budget) {
            return Some(path);
        }
    }
    None
}

fn set_cycle(adj: &mut [Vec<bool>], cycle: &[Point], value: bool) {
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i] as usize, cycle[(i + 1) % cycle.len()] as usize);
        adj[a][b] = value;
        adj[b][a] = value;
    }
}

fn active_vertices(adj: &[Vec<bool>]) -> Vec<Point> {
    (0..adj.len()).filter(|&u| adj[u].iter().any(|x| *x)).map(|u| u as Point).collect()
}

/// Grows a connected union of edge-disjoint cycles with `m` edges.
fn by_growth(adj: &[Vec<bool>], m: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<bool>>> {
    let v = adj.len();
    let mut free = adj.to_vec();
    let mut h = vec![vec![false; v]; v];
    let mut left = m;
    while left > 0 {
        let mut len = left.min(v);
        if left - len > 0 && left - len < 3 {
            len = left - 3;
        }
        if len < 3 {
            return None;
        }
        let touched = active_vertices(&h);
        let starts: Vec<Point> = if touched.is_empty() { (0..v as Point).collect() } else { touched };
        let cycle = find_cycle(&free, len, &starts, rng)?;
        set_cycle(&mut free, &cycle, false);
        set_cycle(&mut h, &cycle, true);
        left -= len;
    }
    Some(h)
}

/// Deletes short cycles from the allowed graph until `m` edges remain, then checks that
/// every component keeps an even number of edges.
fn by_removal(adj: &[Vec<bool>], m: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<bool>>> {
    let v = adj.len();
    let mut h = adj.to_vec();
    let mut left = edge_count(adj) - m;
    while left > 0 {
        let len = if left <= 5 { left } else { 3 };
        let all: Vec<Point> = active_vertices(&h);
        let cycle = find_cycle(&h, len, &all, rng)?;
        set_cycle(&mut h, &cycle, false);
        left -= len;
    }
    let mut comp = vec![usize::MAX; v];
    for s in active_vertices(&h) {
        if comp[s as usize] != usize::MAX {
            continue;
        }
        let mut stack = vec![s as usize];
        comp[s as usize] = s as usize;
        let mut degree_sum = 0;
        while let Some(u) = stack.pop() {
            for w in 0..v {
                if h[u][w] {
                    degree_sum += 1;
                    if comp[w] == usize::MAX {
                        comp[w] = s as usize;
                        stack.push(w);
                    }
                }
            }
        }
        if (degree_sum / 2) % 2 == 1 {
            return None;
        }
    }
    Some(h)
}

/// Signs the edges alternately along an Euler circuit of each component.
fn alternate(ground: GroundSet, h: &[Vec<bool>]) -> Result<SignedBlockSet> {
    let v = h.len();
    let mut rest: Vec<BTreeSet<usize>> = (0..v).map(|u| (0..v).filter(|&w| h[u][w]).collect()).collect();
    let mut entries = Vec::new();
    for start in 0..v {
        if rest[start].is_empty() {
            continue;
        }
        // Hierholzer: the circuit is read off as vertices leave the stack.
        let mut stack = vec![start];
        let mut circuit = Vec::new();
        while let Some(&u) = stack.last() {
            if let Some(&w) = rest[u].iter().next() {
                rest[u].remove(&w);
                rest[w].remove(&u);
                stack.push(w);
            } else {
                circuit.push(stack.pop().unwrap());
            }
        }
        for (i, w) in circuit.windows(2).enumerate() {
            let sign = if i % 2 == 0 { Sign::Pos } else { Sign::Neg };
            entries.push((Block::pair(w[0] as Point, w[1] as Point), sign));
        }
    }
    SignedBlockSet::from_entries(ground, 2, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::{verify, VerifyKind};

    #[test]
    fn volume_formula() {
        assert_eq!(pair_trade_volumes(5, &PairTradeMode::Any).unwrap(), vec![2, 3, 5]);
        let nine: Vec<usize> = (2..=16).chain([18]).collect();
        assert_eq!(pair_trade_volumes(9, &PairTradeMode::Any).unwrap(), nine);
        assert_eq!(pair_trade_volumes(7, &PairTradeMode::Any).unwrap(), (2..=9).collect::<Vec<_>>());
        let tri = PairTradeMode::LeaveTriangle([0, 1, 2]);
        assert_eq!(pair_trade_volumes(7, &tri).unwrap(), vec![2, 3, 4, 5, 6, 7, 9]);
    }

    #[test]
    fn every_supported_volume_verifies() {
        let modes = |v: usize| {
            let mut m = vec![PairTradeMode::Any];
            if v % 2 == 1 {
                m.push(PairTradeMode::LeaveTriangle([0, 1, 2]));
            }
            m
        };
        for v in 4..=13 {
            for mode in modes(v) {
                for s in pair_trade_volumes(v, &mode).unwrap() {
                    let t = pair_trade(v, s, &mode).unwrap_or_else(|e| panic!("v={v} s={s} {mode:?}: {e}"));
                    let r = verify(&t, VerifyKind::Trade { t: 1 });
                    assert!(r.ok && r.volume() == s, "v={v} s={s}: {r}");
                    if let PairTradeMode::LeaveTriangle(_) = mode {
                        assert!(!t.contains(&Block::pair(0, 1)) && !t.contains(&Block::pair(1, 2)));
                    }
                }
            }
        }
    }

    #[test]
    fn maximum_volumes_use_every_allowed_pair() {
        assert_eq!(pair_trade(9, 18, &PairTradeMode::Any).unwrap().len(), 36);
        let t = pair_trade(7, 9, &PairTradeMode::LeaveTriangle([0, 1, 2])).unwrap();
        assert_eq!(t.len(), 18);
        assert!(matches!(pair_trade(5, 4, &PairTradeMode::Any), Err(Error::InfeasibleVolume { .. })));
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = pair_trade_seeded(11, 17, &PairTradeMode::Any, 9).unwrap();
        assert_eq!(a, pair_trade_seeded(11, 17, &PairTradeMode::Any, 9).unwrap());
    }
}
