use std::fmt;

use serde::Serialize;

/// Why a pair (v, s) has no signed Steiner triple system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Inadmissibility {
    /// v is not 1 or 3 mod 6.
    OrderResidue,
    /// s exceeds the largest possible value.
    AboveMaximum { s_max: usize },
    /// s falls in one of the gaps just below the maximum.
    Gap { s_max: usize },
    /// One of the sporadic missing values for v = 7.
    OrderSevenException,
}

impl fmt::Display for Inadmissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inadmissibility::OrderResidue => write!(f, "v must be 1 or 3 mod 6"),
            Inadmissibility::AboveMaximum { s_max } => write!(f, "s exceeds the maximum {s_max}"),
            Inadmissibility::Gap { s_max } => write!(f, "s lies in a gap below the maximum {s_max}"),
            Inadmissibility::OrderSevenException => write!(f, "s is one of the missing values for v = 7"),
        }
    }
}

/// A set of non-negative integers stored as a dense prefix `0..=M` plus a sorted tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumSet {
    dense_max: Option<usize>,
    tail: Vec<usize>,
}

impl SpectrumSet {
    pub fn empty() -> Self {
        Self { dense_max: None, tail: Vec::new() }
    }

    /// Builds the canonical form from arbitrary values.
    pub fn from_values(values: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = values.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        let run = v.iter().enumerate().take_while(|(i, x)| *i == **x).count();
        let dense_max = if run == 0 { None } else { Some(run - 1) };
        Self { dense_max, tail: v[run..].to_vec() }
    }

    pub fn is_empty(&self) -> bool {
        self.dense_max.is_none() && self.tail.is_empty()
    }

    pub fn dense_max(&self) -> Option<usize> {
        self.dense_max
    }

    pub fn tail(&self) -> &[usize] {
        &self.tail
    }

    pub fn contains(&self, s: usize) -> bool {
        self.dense_max.is_some_and(|m| s <= m) || self.tail.binary_search(&s).is_ok()
    }

    pub fn len(&self) -> usize {
        self.dense_max.map_or(0, |m| m + 1) + self.tail.len()
    }

    pub fn max(&self) -> Option<usize> {
        self.tail.last().copied().or(self.dense_max)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let dense = match self.dense_max {
            Some(m) => 0..m + 1,
            None => 0..0,
        };
        dense.chain(self.tail.iter().copied())
    }

    pub fn values(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Display for SpectrumSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.dense_max {
            None => {}
            Some(0) => parts.push("0".into()),
            Some(1) => parts.push("0,1".into()),
            Some(m) => parts.push(format!("0..{m}")),
        }
        parts.extend(self.tail.iter().map(|x| x.to_string()));
        if parts.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

/// Largest `s` for which an ST(v, s) exists, when `v` is 1 or 3 mod 6.
pub fn s_max(v: usize) -> Option<usize> {
    if !matches!(v % 6, 1 | 3) {
        return None;
    }
    if v == 7 {
        return Some(14);
    }
    Some(v * (v - 1) * v.saturating_sub(3) / 12)
}

pub fn admissible_spectrum(v: usize) -> SpectrumSet {
    let Some(top) = s_max(v) else {
        return SpectrumSet::empty();
    };
    if v == 7 {
        return SpectrumSet::from_values([0, 2, 3, 5, 6, 8, 14]);
    }
    let mut values: Vec<usize> = if top >= 6 { (0..=top - 6).collect() } else { Vec::new() };
    if top >= 4 {
        values.push(top - 4);
    }
    values.push(top);
    SpectrumSet::from_values(values)
}

pub fn admissibility(v: usize, s: usize) -> Result<(), Inadmissibility> {
    let Some(top) = s_max(v) else {
        return Err(Inadmissibility::OrderResidue);
    };
    if s > top {
        return Err(Inadmissibility::AboveMaximum { s_max: top });
    }
    if admissible_spectrum(v).contains(s) {
        Ok(())
    } else if v == 7 {
        Err(Inadmissibility::OrderSevenException)
    } else {
        Err(Inadmissibility::Gap { s_max: top })
    }
}

pub fn is_admissible(v: usize, s: usize) -> bool {
    admissibility(v, s).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_maxima() {
        let expected = [(9, 36), (13, 130), (15, 210), (19, 456), (21, 630), (25, 1100), (27, 1404)];
        for (v, m) in expected {
            assert_eq!(s_max(v), Some(m), "v = {v}");
        }
        assert_eq!(s_max(3), Some(0));
        assert_eq!(s_max(8), None);
    }

    #[test]
    fn small_spectra() {
        assert_eq!(admissible_spectrum(3).values(), vec![0]);
        assert_eq!(admissible_spectrum(7).values(), vec![0, 2, 3, 5, 6, 8, 14]);
        assert_eq!(admissible_spectrum(9).to_string(), "0..30,32,36");
        assert_eq!(admissible_spectrum(7).to_string(), "0,2,3,5,6,8,14");
        assert!(admissible_spectrum(4).is_empty());
        assert_eq!(admissible_spectrum(4).to_string(), "none");
    }

    #[test]
    fn spectrum_sizes() {
        for (v, n) in [(9, 33), (13, 127), (15, 207), (19, 453)] {
            assert_eq!(admissible_spectrum(v).len(), n, "v = {v}");
        }
    }

    #[test]
    fn inadmissibility_reasons() {
        assert_eq!(admissibility(8, 0), Err(Inadmissibility::OrderResidue));
        assert_eq!(admissibility(9, 37), Err(Inadmissibility::AboveMaximum { s_max: 36 }));
        assert_eq!(admissibility(9, 31), Err(Inadmissibility::Gap { s_max: 36 }));
        assert_eq!(admissibility(7, 4), Err(Inadmissibility::OrderSevenException));
        assert!(is_admissible(9, 32));
    }
}
