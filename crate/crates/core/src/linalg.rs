//! Dense exact linear algebra over `Q`, sized for the small change-of-basis
//! matrices that appear here (a few hundred rows at most).

use num_traits::{One, Zero};

use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Q::zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, slot) in out.iter_mut().enumerate() {
                let b = &self[(r, c)];
                if !b.is_zero() {
                    *slot += a * b;
                }
            }
        }
        out
    }

    /// Rank by fraction-free-ish Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot = m[(rank, c)].clone();
            for r in (rank + 1)..m.rows {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] / &pivot;
                for cc in c..m.cols {
                    let sub = &f * &m[(rank, cc)];
                    m[(r, cc)] -= sub;
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a[(r, c)].is_zero())?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let pivot = a[(c, c)].clone();
            if !pivot.is_one() {
                for cc in 0..n {
                    if !a[(c, cc)].is_zero() {
                        a[(c, cc)] /= &pivot;
                    }
                    if !inv[(c, cc)].is_zero() {
                        inv[(c, cc)] /= &pivot;
                    }
                }
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for cc in 0..n {
                    if !a[(c, cc)].is_zero() {
                        let sub = &f * &a[(c, cc)];
                        a[(r, cc)] -= sub;
                    }
                    if !inv[(c, cc)].is_zero() {
                        let sub = &f * &inv[(c, cc)];
                        inv[(r, cc)] -= sub;
                    }
                }
            }
        }
        Some(inv)
    }

    /// The unique row vector `x` with `x · self = b`, or `None` when the
    /// system is inconsistent or underdetermined.
    pub fn solve_row(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.cols);
        // Work on the transposed system self^T x^T = b^T, augmented by b.
        let (rows, unknowns) = (self.cols, self.rows);
        let mut a = Matrix::zeros(rows, unknowns + 1);
        for r in 0..rows {
            for c in 0..unknowns {
                a[(r, c)] = self[(c, r)].clone();
            }
            a[(r, unknowns)] = b[r].clone();
        }
        let mut pivot_row = 0;
        for c in 0..unknowns {
            let p = (pivot_row..rows).find(|&r| !a[(r, c)].is_zero())?;
            a.swap_rows(pivot_row, p);
            let pivot = a[(pivot_row, c)].clone();
            for cc in c..=unknowns {
                if !a[(pivot_row, cc)].is_zero() {
                    a[(pivot_row, cc)] /= &pivot;
                }
            }
            for r in 0..rows {
                if r == pivot_row || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for cc in c..=unknowns {
                    if !a[(pivot_row, cc)].is_zero() {
                        let sub = &f * &a[(pivot_row, cc)];
                        a[(r, cc)] -= sub;
                    }
                }
            }
            pivot_row += 1;
        }
        if (pivot_row..rows).any(|r| !a[(r, unknowns)].is_zero()) {
            return None;
        }
        Some((0..unknowns).map(|r| a[(r, unknowns)].clone()).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn from_rows(rows: &[&[i64]]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), rows[0].len());
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m[(r, c)] = q(v);
            }
        }
        m
    }

    #[test]
    fn solve_overdetermined_system() {
        // x · [[1, 0, 1], [0, 1, 1]] = [2, 3, 5]  ⇒  x = [2, 3]
        let m = from_rows(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(m.solve_row(&[q(2), q(3), q(5)]), Some(vec![q(2), q(3)]));
        assert_eq!(m.solve_row(&[q(2), q(3), q(4)]), None);
        let singular = from_rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(singular.solve_row(&[q(1), q(1)]), None);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = from_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = from_rows(&[&[1, 2], &[2, 4]]);
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn unitriangular_example() {
        // k-Schur-in-h matrix at degree 2 for k = 2.
        let m = from_rows(&[&[1, 0], &[-1, 1]]);
        let inv_t = m.inverse().unwrap().transpose();
        assert_eq!(inv_t, from_rows(&[&[1, 1], &[0, 1]]));
    }
}
