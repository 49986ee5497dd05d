use crate::error::{Error, Result};

/// Volumes one independent piece of a construction can contribute; 0 means "omit".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeFamily {
    pub label: String,
    achievable: Vec<usize>,
}

impl VolumeFamily {
    pub fn new(label: impl Into<String>, values: impl IntoIterator<Item = usize>) -> Self {
        let mut achievable: Vec<usize> = values.into_iter().chain([0]).collect();
        achievable.sort_unstable();
        achievable.dedup();
        Self { label: label.into(), achievable }
    }

    pub fn achievable(&self) -> &[usize] {
        &self.achievable
    }

    pub fn max(&self) -> usize {
        *self.achievable.last().expect("contains 0")
    }
}

/// Picks one volume per family so that the volumes sum to `target`.
///
/// Families with fewer options are settled first, each taking the largest value that
/// still leaves a reachable remainder for the families after it. Reachability is
/// computed exactly, so a selection is returned whenever one exists.
pub fn plan_volumes(families: &[VolumeFamily], target: usize) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..families.len()).collect();
    order.sort_by_key(|&i| families[i].achievable.len());
    // reach[i][x]: the families order[i..] can sum to x.
    let mut reach = vec![vec![false; target + 1]; order.len() + 1];
    reach[order.len()][0] = true;
    for i in (0..order.len()).rev() {
        let (head, tail) = reach.split_at_mut(i + 1);
        let (cur, next) = (&mut head[i], &tail[0]);
        for &a in &families[order[i]].achievable {
            for x in a..=target {
                if next[x - a] {
                    cur[x] = true;
                }
            }
        }
    }
    if !reach[0][target] {
        return Err(Error::Infeasible { target });
    }
    let mut picks = vec![0; families.len()];
    let mut left = target;
    for (i, &f) in order.iter().enumerate() {
        let a = *families[f]
            .achievable
            .iter()
            .rev()
            .find(|&&a| a <= left && reach[i + 1][left - a])
            .expect("reachable by construction");
        picks[f] = a;
        left -= a;
    }
    Ok(picks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarse_family_is_locked_first() {
        let fams = [VolumeFamily::new("coarse", [14]), VolumeFamily::new("dense", 6..=24)];
        assert_eq!(plan_volumes(&fams, 20).unwrap(), vec![14, 6]);
        assert_eq!(plan_volumes(&fams, 38).unwrap(), vec![14, 24]);
        assert_eq!(plan_volumes(&fams, 0).unwrap(), vec![0, 0]);
    }

    #[test]
    fn unreachable_target() {
        let fams = [VolumeFamily::new("only", [4])];
        assert!(matches!(plan_volumes(&fams, 3), Err(Error::Infeasible { target: 3 })));
    }

    #[test]
    fn gap_condition_makes_the_interval_reachable() {
        // A = {0, 14}, B = {0} ∪ [6, 19] with 19 - 6 >= 14 - 0 - 1.
        let fams = [VolumeFamily::new("A", [14]), VolumeFamily::new("B", 6..=19)];
        for c in 6..=33 {
            assert!(plan_volumes(&fams, c).is_ok(), "c = {c}");
        }
    }
}
