use crate::block::Point;
use crate::error::{Error, Result};

/// A Latin square whose cells hold ground-set points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    cells: Vec<Vec<Point>>,
}

impl LatinSquare {
    pub fn order(&self) -> usize {
        self.cells.len()
    }

    /// Cell in row `i`, column `j`, both 0-based.
    pub fn get(&self, i: usize, j: usize) -> Point {
        self.cells[i][j]
    }

    pub fn row(&self, i: usize) -> &[Point] {
        &self.cells[i]
    }
}

/// Cyclic square `L(i, j) = first_row[(i + j) mod n]`.
pub fn latin_square(first_row: &[Point]) -> Result<LatinSquare> {
    let mut sorted = first_row.to_vec();
    sorted.sort_unstable();
    if first_row.is_empty() || sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::BadFirstRow);
    }
    let n = first_row.len();
    let cells = (0..n).map(|i| (0..n).map(|j| first_row[(i + j) % n]).collect()).collect();
    Ok(LatinSquare { cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_three() {
        let l = latin_square(&[0, 1, 2]).unwrap();
        assert_eq!(l.row(1), &[1, 2, 0]);
        assert_eq!(l.row(2), &[2, 0, 1]);
        assert!(latin_square(&[0, 0, 1]).is_err());
    }

    #[test]
    fn rows_and_columns_are_permutations() {
        let l = latin_square(&[4, 9, 2, 7, 5]).unwrap();
        for i in 0..5 {
            let mut row = l.row(i).to_vec();
            let mut col: Vec<Point> = (0..5).map(|r| l.get(r, i)).collect();
            row.sort_unstable();
            col.sort_unstable();
            assert_eq!(row, vec![2, 4, 5, 7, 9]);
            assert_eq!(col, row);
        }
    }
}
