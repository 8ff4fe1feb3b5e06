//! Dense exact linear algebra over a [`Field`]: products, determinants,
//! rank, and null-space bases by Gaussian elimination.

use std::fmt;

use crate::error::{CubalError, Result};
use crate::field::{Field, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// An `m × m` matrix; accompanying matrices are of this shape.
pub type SquareMatrix<F = Rational> = Matrix<F>;

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut id = Self::zeros(n, n);
        for i in 0..n {
            id[(i, i)] = F::one();
        }
        id
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(CubalError::Parse("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn matmul(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != rhs.rows {
            return Err(CubalError::SizeMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Matrix::<F>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(CubalError::SizeMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Determinant by Gaussian elimination with exact division.
    pub fn det(&self) -> Result<F> {
        if self.rows != self.cols {
            return Err(CubalError::SizeMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = F::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(F::zero());
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det = det * p.clone();
            let inv = p.inverse().expect("nonzero pivot");
            for r in col + 1..n {
                let factor = a[(r, col)].clone() * inv.clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = factor.clone() * a[(col, c)].clone();
                    a[(r, c)] = a[(r, c)].clone() - sub;
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        for c in 0..self.cols {
            self.data.swap(r1 * self.cols + c, r2 * self.cols + c);
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, row);
            let inv = a[(row, col)].inverse().expect("nonzero pivot");
            for c in col..self.cols {
                a[(row, c)] = a[(row, c)].clone() * inv.clone();
            }
            for r in 0..self.rows {
                if r == row || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for c in col..self.cols {
                    let sub = factor.clone() * a[(row, c)].clone();
                    a[(r, c)] = a[(r, c)].clone() - sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{v : self · v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, free)].clone();
                }
                v
            })
            .collect()
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[F]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, Fp};

    fn q(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn determinants() {
        assert_eq!(q(&[&[2, 0], &[0, 0]]).det().unwrap(), int(0));
        assert_eq!(Matrix::<Rational>::identity(4).det().unwrap(), int(1));
        assert_eq!(q(&[&[1, 2], &[3, 4]]).det().unwrap(), int(-2));
        // needs a row swap
        assert_eq!(q(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).det().unwrap(), int(-2));
        assert!(q(&[&[1, 2, 3]]).det().is_err());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let kernel = a.kernel_basis();
        assert_eq!(kernel.len(), 1);
        assert!(a.apply(&kernel[0]).unwrap().iter().all(|x| *x == int(0)));
        assert!(q(&[&[1, 0], &[0, 1]]).kernel_basis().is_empty());
        assert_eq!(q(&[&[0, 0], &[0, 0]]).kernel_basis().len(), 2);
    }

    #[test]
    fn finite_field_rank() {
        type F2 = Fp<2>;
        let a = Matrix::from_rows(vec![
            vec![F2::new(1), F2::new(1)],
            vec![F2::new(1), F2::new(1)],
        ])
        .unwrap();
        assert_eq!(a.rank(), 1);
        assert_eq!(a.det().unwrap(), F2::new(0));
    }
}
