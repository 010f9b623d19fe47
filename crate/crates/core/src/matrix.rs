//! Dense exact-rational matrices with rank, kernel and solve services.
//!
//! Matrices in scope are small (at most ~150x150) and dense, so plain
//! Gaussian elimination over `Rat` is used, with the pivot in each column
//! chosen as the entry of smallest bit length to control coefficient
//! growth. Empty matrices (0 rows or 0 columns) are allowed: they have
//! rank 0 and a full-dimension kernel.

use crate::rational::{bit_size, is_zero, Rat};
use crate::CoreError;
use num::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Self {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Reduced row echelon form of a row list, in place. Returns pivot columns.
    fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..ncols {
            // smallest nonzero entry by bit size
            let pivot = (next_row..rows.len())
                .filter(|&r| !is_zero(&rows[r][col]))
                .min_by_key(|&r| bit_size(&rows[r][col]));
            let Some(pr) = pivot else { continue };
            rows.swap(next_row, pr);
            let inv = {
                let p = rows[next_row][col].clone();
                Rat::one() / p
            };
            for e in rows[next_row].iter_mut() {
                if !is_zero(e) {
                    *e *= &inv;
                }
            }
            for r in 0..rows.len() {
                if r != next_row && !is_zero(&rows[r][col]) {
                    let factor = rows[r][col].clone();
                    for c in col..ncols {
                        let delta = &factor * &rows[next_row][c];
                        rows[r][c] -= delta;
                    }
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == rows.len() {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Rat>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        Self::rref(&mut rows).len()
    }

    /// Basis of the right null space; length is `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut rows: Vec<Vec<Rat>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let pivots = Self::rref(&mut rows);
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -rows[prow][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One exact solution of `self * x = b` if the system is consistent.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>, CoreError> {
        if b.len() != self.rows {
            return Err(CoreError::DimensionMismatch(format!(
                "solve: {} rows, rhs length {}",
                self.rows,
                b.len()
            )));
        }
        let mut rows: Vec<Vec<Rat>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = Self::rref(&mut rows);
        if pivots.contains(&self.cols) {
            return Ok(None); // inconsistent
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = rows[prow][self.cols].clone();
        }
        Ok(Some(x))
    }
}

/// Incremental rank profile: rows are fed in the given order, and after
/// every group boundary (detected by `group_of`) the running rank is
/// recorded. Returns `(group keys, rank after each group)`.
pub struct IncrementalRank {
    ncols: usize,
    pivots: Vec<(usize, Vec<Rat>)>, // (pivot column, reduced row)
}

impl IncrementalRank {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The accumulated (pivot column, reduced row) pairs.
    pub fn pivot_rows(&self) -> &[(usize, Vec<Rat>)] {
        &self.pivots
    }

    /// Reduce `row` against the accumulated pivots; if independent, absorb
    /// it and return true.
    pub fn add_row(&mut self, mut row: Vec<Rat>) -> bool {
        assert_eq!(row.len(), self.ncols);
        for (pcol, prow) in &self.pivots {
            if !is_zero(&row[*pcol]) {
                let factor = row[*pcol].clone();
                for c in 0..self.ncols {
                    if !is_zero(&prow[c]) {
                        let delta = &factor * &prow[c];
                        row[c] -= delta;
                    }
                }
            }
        }
        match row.iter().position(|e| !is_zero(e)) {
            None => false,
            Some(col) => {
                let inv = Rat::one() / row[col].clone();
                for e in row.iter_mut() {
                    if !is_zero(e) {
                        *e *= &inv;
                    }
                }
                self.pivots.push((col, row));
                true
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(2).rank(), 2);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[0]]).rank(), 0);
        assert_eq!(RationalMatrix::zeros(0, 5).rank(), 0);
        assert_eq!(RationalMatrix::zeros(5, 0).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        // [[0]] (a 1x1 zero Gram entry 2h at h = 0)
        let k = m(&[&[0]]).kernel_basis();
        assert_eq!(k, vec![vec![int(1)]]);

        assert!(RationalMatrix::identity(2).kernel_basis().is_empty());

        let k = m(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // [1, -1] up to scale
        assert_eq!(&k[0][0] + &k[0][1], int(0));
        assert!(!is_zero(&k[0][0]));

        // empty matrix: full-dimension kernel
        assert_eq!(RationalMatrix::zeros(0, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        for v in a.kernel_basis() {
            assert!(a.mul_vec(&v).iter().all(is_zero));
        }
        assert_eq!(a.cols(), a.rank() + a.kernel_basis().len());
    }

    #[test]
    fn solve_examples() {
        let b = vec![int(3), int(7)];
        assert_eq!(
            RationalMatrix::identity(2).solve(&b).unwrap(),
            Some(b.clone())
        );
        assert_eq!(m(&[&[0]]).solve(&[int(1)]).unwrap(), None);
        assert_eq!(
            m(&[&[2, 0], &[0, 3]]).solve(&[int(1), int(1)]).unwrap(),
            Some(vec![rat(1, 2), rat(1, 3)])
        );
        assert!(m(&[&[1]]).solve(&[int(1), int(2)]).is_err());
    }

    #[test]
    fn rank_transpose() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn incremental_matches_batch() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 1, 1]]);
        let mut inc = IncrementalRank::new(3);
        for r in 0..a.rows() {
            inc.add_row(a.row(r).to_vec());
        }
        assert_eq!(inc.rank(), a.rank());
    }
}
