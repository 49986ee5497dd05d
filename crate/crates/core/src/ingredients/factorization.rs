use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::block::{Block, GroundSet, Point};
use crate::error::{Error, Result};
use crate::rng::seeded;

/// A partition of the edges of a regular graph into perfect matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFactorization {
    ground: GroundSet,
    factors: Vec<Vec<Block>>,
}

#[derive(Clone, Debug)]
pub enum FactorizationInput {
    Complete { order: usize },
    Regular { order: usize, edges: Vec<Block> },
}

impl OneFactorization {
    /// Validates that every factor is a perfect matching and factors are edge-disjoint.
    pub fn new(ground: GroundSet, factors: Vec<Vec<Block>>) -> Result<Self> {
        let v = ground.order();
        let mut seen = std::collections::BTreeSet::new();
        for f in &factors {
            let mut hit = vec![false; v];
            for e in f {
                if e.arity() != 2 || !ground.contains(e.max_point()) || !seen.insert(*e) {
                    return Err(Error::NotRegular);
                }
                for &p in e.points() {
                    if std::mem::replace(&mut hit[p as usize], true) {
                        return Err(Error::NotRegular);
                    }
                }
            }
            if hit.iter().any(|h| !h) {
                return Err(Error::NotRegular);
            }
        }
        let factors = factors
            .into_iter()
            .map(|mut f| {
                f.sort();
                f
            })
            .collect();
        Ok(Self { ground, factors })
    }

    /// Round-robin factorization of the complete graph on `order` (even) vertices.
    pub fn complete(order: usize) -> Result<Self> {
        if order < 2 || order % 2 == 1 {
            return Err(Error::NotRegular);
        }
        let m = order - 1;
        let inf = m as Point;
        let factors = (0..m)
            .map(|r| {
                let mut f = vec![Block::pair(inf, r as Point)];
                for i in 1..=(m - 1) / 2 {
                    f.push(Block::pair(((r + i) % m) as Point, ((r + m - i) % m) as Point));
                }
                f
            })
            .collect();
        Self::new(GroundSet::new(order)?, factors)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor(&self, i: usize) -> &[Block] {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[Vec<Block>] {
        &self.factors
    }

    pub fn factor_containing(&self, edge: &Block) -> Option<usize> {
        self.factors.iter().position(|f| f.binary_search(edge).is_ok())
    }

    /// Reorders the factors; `order[i]` is the old index of the new factor `i`.
    pub fn reordered(&self, order: &[usize]) -> Self {
        Self { ground: self.ground, factors: order.iter().map(|&i| self.factors[i].clone()).collect() }
    }
}

pub fn one_factorization(input: &FactorizationInput, seed: u64, budget: u64) -> Result<OneFactorization> {
    match input {
        FactorizationInput::Complete { order } => OneFactorization::complete(*order),
        FactorizationInput::Regular { order, edges } => factor_regular(*order, edges, seed, budget),
    }
}

/// Peels perfect matchings off a regular graph, restarting with fresh randomness when the
/// remainder has no perfect matching. `budget` bounds the total number of search nodes.
fn factor_regular(order: usize, edges: &[Block], seed: u64, budget: u64) -> Result<OneFactorization> {
    let ground = GroundSet::new(order.max(1))?;
    if order % 2 == 1 {
        return Err(Error::NotRegular);
    }
    let mut adj = vec![vec![false; order]; order];
    for e in edges {
        let p = e.points();
        if e.arity() != 2 || !ground.contains(e.max_point()) || adj[p[0] as usize][p[1] as usize] {
            return Err(Error::NotRegular);
        }
        adj[p[0] as usize][p[1] as usize] = true;
        adj[p[1] as usize][p[0] as usize] = true;
    }
    let degree = |a: &Vec<Vec<bool>>, u: usize| a[u].iter().filter(|x| **x).count();
    let r = if order == 0 { 0 } else { degree(&adj, 0) };
    if (0..order).any(|u| degree(&adj, u) != r) {
        return Err(Error::NotRegular);
    }
    let mut rng = seeded(seed, 0xfac7);
    let mut nodes = 0u64;
    'restart: while nodes < budget {
        let mut rem = adj.clone();
        let mut factors = Vec::with_capacity(r);
        for _ in 0..r {
            let Some(m) = perfect_matching(&rem, &mut rng, &mut nodes, budget) else {
                continue 'restart;
            };
            for e in &m {
                let p = e.points();
                rem[p[0] as usize][p[1] as usize] = false;
                rem[p[1] as usize][p[0] as usize] = false;
            }
            factors.push(m);
        }
        return OneFactorization::new(ground, factors);
    }
    Err(Error::FactorizationNotFound { seed, budget })
}

/// Randomized backtracking for a perfect matching, always extending at the unmatched
/// vertex with the fewest available partners. Gives up after a bounded number of nodes.
fn perfect_matching(adj: &[Vec<bool>], rng: &mut ChaCha8Rng, nodes: &mut u64, budget: u64) -> Option<Vec<Block>> {
    let n = adj.len();
    let mut mate = vec![usize::MAX; n];
    let mut out = Vec::with_capacity(n / 2);
    let local_limit = *nodes + 20_000;
    fn go(
        adj: &[Vec<bool>],
        mate: &mut [usize],
        out: &mut Vec<Block>,
        rng: &mut ChaCha8Rng,
        nodes: &mut u64,
        limit: u64,
    ) -> bool {
        *nodes += 1;
        if *nodes > limit {
            return false;
        }
        let n = adj.len();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for u in 0..n {
            if mate[u] != usize::MAX {
                continue;
            }
            let opts: Vec<usize> = (0..n).filter(|&w| adj[u][w] && mate[w] == usize::MAX).collect();
            if best.as_ref().is_none_or(|b| opts.len() < b.1.len()) {
                let empty = opts.is_empty();
                best = Some((u, opts));
                if empty {
                    break;
                }
            }
        }
        let Some((u, mut opts)) = best else {
            return true;
        };
        opts.shuffle(rng);
        for w in opts {
            mate[u] = w;
            mate[w] = u;
            out.push(Block::pair(u as Point, w as Point));
            if go(adj, mate, out, rng, nodes, limit) {
                return true;
            }
            out.pop();
            mate[u] = usize::MAX;
            mate[w] = usize::MAX;
        }
        false
    }
    if go(adj, &mut mate, &mut out, rng, nodes, local_limit.min(budget)) {
        Some(out)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_robin_factors_complete_graphs() {
        for order in [2, 4, 8, 10, 14] {
            let f = OneFactorization::complete(order).unwrap();
            assert_eq!(f.len(), order - 1);
            let total: usize = f.factors().iter().map(|x| x.len()).sum();
            assert_eq!(total, order * (order - 1) / 2);
        }
        assert!(OneFactorization::complete(7).is_err());
    }

    #[test]
    fn regular_graph_is_peeled_into_matchings() {
        // K8 minus the perfect matching {01, 23, 45, 67} is 6-regular.
        let mut edges = Vec::new();
        for a in 0..8u16 {
            for b in a + 1..8 {
                if !(a % 2 == 0 && b == a + 1) {
                    edges.push(Block::pair(a, b));
                }
            }
        }
        let input = FactorizationInput::Regular { order: 8, edges };
        let f = one_factorization(&input, 1, 1_000_000).unwrap();
        assert_eq!(f.len(), 6);
        assert!(f.factor_containing(&Block::pair(0, 1)).is_none());
    }

    #[test]
    fn irregular_graph_is_rejected() {
        let input = FactorizationInput::Regular { order: 4, edges: vec![Block::pair(0, 1)] };
        assert!(matches!(one_factorization(&input, 0, 100), Err(Error::NotRegular)));
    }

    #[test]
    fn petersen_graph_has_no_factorization() {
        let outer: Vec<Block> = (0..5u16).map(|i| Block::pair(i, (i + 1) % 5)).collect();
        let spokes: Vec<Block> = (0..5u16).map(|i| Block::pair(i, i + 5)).collect();
        let inner: Vec<Block> = (0..5u16).map(|i| Block::pair(i + 5, (i + 2) % 5 + 5)).collect();
        let edges = [outer, spokes, inner].concat();
        let input = FactorizationInput::Regular { order: 10, edges };
        assert!(matches!(one_factorization(&input, 3, 20_000), Err(Error::FactorizationNotFound { .. })));
    }
}
