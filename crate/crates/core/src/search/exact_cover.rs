/// Dancing-links exact cover with primary items (covered exactly once) and secondary
/// items (covered at most once).
pub struct ExactCover {
    n_primary: usize,
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    top: Vec<usize>,
    len: Vec<usize>,
    option_of: Vec<usize>,
    option_range: Vec<(usize, usize)>,
    nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverResult {
    Solution(Vec<usize>),
    NoSolution,
    BudgetExceeded,
}

impl ExactCover {
    /// Items `0..n_primary` are primary, `n_primary..n_items` secondary.
    pub fn new(n_primary: usize, n_items: usize) -> Self {
        let h = n_items + 1;
        let mut s = Self {
            n_primary,
            left: vec![0; h],
            right: vec![0; h],
            up: (0..h).collect(),
            down: (0..h).collect(),
            top: (0..h).collect(),
            len: vec![0; h],
            option_of: vec![usize::MAX; h],
            option_range: Vec::new(),
            nodes: 0,
        };
        for i in 0..h {
            s.left[i] = i;
            s.right[i] = i;
        }
        // Primary headers 1..=n_primary form a ring with the root 0.
        for i in 0..=n_primary {
            let next = if i == n_primary { 0 } else { i + 1 };
            s.right[i] = next;
            s.left[next] = i;
        }
        s
    }

    pub fn add_option(&mut self, items: &[usize]) -> usize {
        let id = self.option_range.len();
        let start = self.top.len();
        for &item in items {
            let hdr = item + 1;
            let node = self.top.len();
            self.top.push(hdr);
            self.option_of.push(id);
            let last = self.up[hdr];
            self.up.push(last);
            self.down.push(hdr);
            self.down[last] = node;
            self.up[hdr] = node;
            self.left.push(node);
            self.right.push(node);
            self.len[hdr] += 1;
        }
        self.option_range.push((start, self.top.len()));
        id
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn siblings(&self, node: usize) -> impl Iterator<Item = usize> {
        let (a, b) = self.option_range[self.option_of[node]];
        let offset = node - a;
        let n = b - a;
        (1..n).map(move |i| a + (offset + i) % n)
    }

    fn cover(&mut self, hdr: usize) {
        let mut p = self.down[hdr];
        while p != hdr {
            let sibs: Vec<usize> = self.siblings(p).collect();
            for q in sibs {
                let (u, d) = (self.up[q], self.down[q]);
                self.down[u] = d;
                self.up[d] = u;
                self.len[self.top[q]] -= 1;
            }
            p = self.down[p];
        }
        let (l, r) = (self.left[hdr], self.right[hdr]);
        self.right[l] = r;
        self.left[r] = l;
    }

    fn uncover(&mut self, hdr: usize) {
        let (l, r) = (self.left[hdr], self.right[hdr]);
        self.right[l] = hdr;
        self.left[r] = hdr;
        let mut p = self.up[hdr];
        while p != hdr {
            let sibs: Vec<usize> = self.siblings(p).collect();
            for q in sibs.into_iter().rev() {
                let (u, d) = (self.up[q], self.down[q]);
                self.down[u] = q;
                self.up[d] = q;
                self.len[self.top[q]] += 1;
            }
            p = self.up[p];
        }
    }

    /// First solution in deterministic order, or the reason there is none.
    pub fn solve(&mut self, node_limit: u64) -> CoverResult {
        let mut chosen = Vec::new();
        match self.search(&mut chosen, node_limit) {
            Some(true) => CoverResult::Solution(chosen),
            Some(false) => CoverResult::NoSolution,
            None => CoverResult::BudgetExceeded,
        }
    }

    fn search(&mut self, chosen: &mut Vec<usize>, limit: u64) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > limit {
            return None;
        }
        if self.right[0] == 0 {
            return Some(true);
        }
        let mut best = self.right[0];
        let mut i = best;
        while i != 0 {
            if self.len[i] < self.len[best] {
                best = i;
            }
            i = self.right[i];
        }
        if self.len[best] == 0 {
            return Some(false);
        }
        self.cover(best);
        let mut r = self.down[best];
        let mut result = Some(false);
        while r != best {
            chosen.push(self.option_of[r]);
            let sibs: Vec<usize> = self.siblings(r).collect();
            for &q in &sibs {
                self.cover(self.top[q]);
            }
            let sub = self.search(chosen, limit);
            for &q in sibs.iter().rev() {
                self.uncover(self.top[q]);
            }
            match sub {
                Some(true) => {
                    result = Some(true);
                    break;
                }
                None => {
                    result = None;
                    chosen.pop();
                    break;
                }
                Some(false) => {
                    chosen.pop();
                }
            }
            r = self.down[r];
        }
        self.uncover(best);
        debug_assert!(self.n_primary > 0 || result != Some(false));
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knuth_example() {
        // Items a..g; the unique cover is {c e}, {a d f}, {b g}.
        let opts: [&[usize]; 6] = [&[2, 4], &[0, 3, 6], &[1, 2, 5], &[0, 3, 5], &[1, 6], &[3, 4, 6]];
        let mut x = ExactCover::new(7, 7);
        for o in opts {
            x.add_option(o);
        }
        let CoverResult::Solution(mut s) = x.solve(1000) else { panic!() };
        s.sort();
        assert_eq!(s, vec![0, 3, 4]);
    }

    #[test]
    fn secondary_items_are_at_most_once() {
        // Primary 0, 1; secondary 2. Both options use item 2, so they cannot combine.
        let mut x = ExactCover::new(2, 3);
        x.add_option(&[0, 2]);
        x.add_option(&[1, 2]);
        assert_eq!(x.solve(100), CoverResult::NoSolution);
        let mut y = ExactCover::new(2, 3);
        y.add_option(&[0, 2]);
        y.add_option(&[1]);
        assert!(matches!(y.solve(100), CoverResult::Solution(_)));
    }
}
