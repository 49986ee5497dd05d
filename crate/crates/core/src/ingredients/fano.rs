use crate::block::{Block, GroundSet};
use crate::ingredients::STSystem;
use crate::search::engine_subsets;

/// Two block-disjoint Fano planes, as found by exact search, and the 21 triples they miss.
#[derive(Clone, Debug)]
pub struct FanoStructures {
    pub f1: STSystem,
    pub f2: STSystem,
    pub f3: Vec<Block>,
}

const F1: [[u16; 3]; 7] = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]];
const F2: [[u16; 3]; 7] = [[1, 2, 4], [1, 3, 6], [1, 5, 7], [2, 3, 7], [2, 5, 6], [3, 4, 5], [4, 6, 7]];

fn system(rows: &[[u16; 3]]) -> STSystem {
    let ground = GroundSet::new(7).expect("order 7");
    STSystem::new(ground, rows.iter().map(|r| Block::triple(r[0] - 1, r[1] - 1, r[2] - 1))).expect("stored Fano plane")
}

pub fn fano_structures() -> FanoStructures {
    let f1 = system(&F1);
    let f2 = system(&F2);
    let f3 = engine_subsets(7, 3).into_iter().filter(|b| !f1.contains(b) && !f2.contains(b)).collect();
    FanoStructures { f1, f2, f3 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{disjoint_sts_search, DisjointOutcome, SearchBudget};

    #[test]
    fn stored_pair_matches_search() {
        let fs = fano_structures();
        assert_eq!(fs.f3.len(), 21);
        let (out, _) = disjoint_sts_search(7, 2, SearchBudget::default());
        let DisjointOutcome::Found(found) = out else { panic!("search should find a pair") };
        assert_eq!(found[0], fs.f1);
        assert_eq!(found[1], fs.f2);
    }
}
