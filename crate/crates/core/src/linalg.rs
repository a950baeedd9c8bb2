//! Dense exact linear algebra over the rationals.
//!
//! Small row-major matrices with Gauss–Jordan elimination; pivots are chosen
//! as the first nonzero entry in column order, so ranks and solutions are
//! deterministic.

use num_traits::Zero;

use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Outcome of solving `A·x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve {
    /// No solution exists.
    Inconsistent,
    /// At least one solution; free variables are set to zero. `unique` is
    /// true when every column carries a pivot.
    Solvable { solution: Vec<Rational>, unique: bool },
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = self.get(row, col).recip();
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for c in col..self.cols {
                        let v = self.get(r, c) - &(self.get(row, c) * &factor);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(mut self) -> usize {
        self.rref().len()
    }

    /// Solves `self · x = rhs` by eliminating the augmented matrix.
    pub fn solve(&self, rhs: &[Rational]) -> Solve {
        assert_eq!(rhs.len(), self.rows, "rhs length must match row count");
        let mut aug = QMatrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Solve::Inconsistent;
        }
        let mut solution = vec![Rational::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            solution[col] = aug.get(row, self.cols).clone();
        }
        Solve::Solvable {
            unique: pivots.len() == self.cols,
            solution,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn matrix(rows: &[&[i64]]) -> QMatrix {
        let mut m = QMatrix::zero(rows.len(), rows[0].len());
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, rat(v));
            }
        }
        m
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(matrix(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(matrix(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(QMatrix::zero(3, 2).rank(), 0);
    }

    #[test]
    fn solve_unique() {
        let m = matrix(&[&[2, 0], &[0, 4]]);
        match m.solve(&[rat(1), rat(2)]) {
            Solve::Solvable { solution, unique } => {
                assert!(unique);
                assert_eq!(solution, vec![crate::rational::ratio(1, 2), crate::rational::ratio(1, 2)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn solve_inconsistent_and_free() {
        let m = matrix(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.solve(&[rat(0), rat(1)]), Solve::Inconsistent);
        match m.solve(&[rat(3), rat(3)]) {
            Solve::Solvable { solution, unique } => {
                assert!(!unique);
                // free column set to zero
                assert_eq!(solution, vec![rat(3), rat(0)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
