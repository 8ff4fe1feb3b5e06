//! Cubic matrices `Q = (q_ijk)` and the product `*_a` induced by an
//! associative operation `a`:
//!
//! ```text
//! E_ijk *_a E_lnr = δ_kl E_{i a(j,n) r}
//! (A *_a B)_ijr   = Σ_{l,n : a(l,n) = j} Σ_k a_ilk b_knr
//! ```

use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use crate::error::{CubalError, Result};
use crate::field::{Field, Rational};
use crate::linalg::SquareMatrix;
use crate::semigroup::Operation;

/// A basis label `(i, j, k)`, 0-based.
pub type Triple = (usize, usize, usize);

/// Dense `m × m × m` array, entry `(i, j, k)` stored at `(i·m + j)·m + k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubicMatrix<F = Rational> {
    m: usize,
    entries: Vec<F>,
}

impl<F: Field> CubicMatrix<F> {
    pub fn zeros(m: usize) -> Self {
        CubicMatrix { m, entries: vec![F::zero(); m * m * m] }
    }

    /// The unit matrix `E_ijk`.
    pub fn basis(m: usize, (i, j, k): Triple) -> Result<Self> {
        for index in [i, j, k] {
            if index >= m {
                return Err(CubalError::IndexOutOfRange { index: index + 1, m });
            }
        }
        let mut e = Self::zeros(m);
        e[(i, j, k)] = F::one();
        Ok(e)
    }

    /// Builds from a flat vector in `(i·m + j)·m + k` order.
    pub fn from_vec(m: usize, entries: Vec<F>) -> Result<Self> {
        if entries.len() != m * m * m {
            return Err(CubalError::SizeMismatch { expected: m * m * m, found: entries.len() });
        }
        Ok(CubicMatrix { m, entries })
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(Triple) -> F) -> Self {
        let mut entries = Vec::with_capacity(m * m * m);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    entries.push(f((i, j, k)));
                }
            }
        }
        CubicMatrix { m, entries }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn as_slice(&self) -> &[F] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<F> {
        self.entries
    }

    pub fn flat_index(&self, (i, j, k): Triple) -> usize {
        (i * self.m + j) * self.m + k
    }

    pub fn triple_of(&self, index: usize) -> Triple {
        let m = self.m;
        (index / (m * m), index / m % m, index % m)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(F::is_zero)
    }

    /// Nonzero entries with their labels.
    pub fn support(&self) -> impl Iterator<Item = (Triple, &F)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(idx, x)| (self.triple_of(idx), x))
    }

    fn check_size(&self, m: usize) -> Result<()> {
        if self.m == m {
            Ok(())
        } else {
            Err(CubalError::SizeMismatch { expected: self.m, found: m })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_size(other.m)?;
        Ok(CubicMatrix {
            m: self.m,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    pub fn scale(&self, lambda: &F) -> Self {
        CubicMatrix {
            m: self.m,
            entries: self.entries.iter().map(|x| lambda.clone() * x.clone()).collect(),
        }
    }

    /// `self *_a rhs`. Cost is `O(m^5)` in the worst case; zero entries of
    /// either factor are skipped.
    pub fn mul(&self, rhs: &Self, a: &Operation) -> Result<Self> {
        self.check_size(rhs.m)?;
        self.check_size(a.m())?;
        let m = self.m;
        let mut out = Self::zeros(m);
        for ((i, l, k), x) in self.support() {
            for n in 0..m {
                let j = a.get(l, n);
                for r in 0..m {
                    let y = &rhs[(k, n, r)];
                    if !y.is_zero() {
                        let slot = &mut out[(i, j, r)];
                        *slot = slot.clone() + x.clone() * y.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// `A^[0] = A`, `A^[n] = A^[n-1] *_a A^[n-1]`.
    pub fn plenary_power(&self, n: usize, a: &Operation) -> Result<Self> {
        self.check_size(a.m())?;
        let mut power = self.clone();
        for _ in 0..n {
            power = power.mul(&power, a)?;
        }
        Ok(power)
    }

    /// The accompanying matrix `B_ik = Σ_j a_ijk`.
    pub fn accompanying_matrix(&self) -> SquareMatrix<F> {
        let m = self.m;
        let mut b = SquareMatrix::<F>::zeros(m, m);
        for ((i, _, k), x) in self.support() {
            b[(i, k)] = b[(i, k)].clone() + x.clone();
        }
        b
    }
}

/// Closed form of a basis product: `Some((i, a(j,n), r))` when `k = l`,
/// otherwise `None` (the zero matrix).
pub fn basis_product(a: &Operation, (i, j, k): Triple, (l, n, r): Triple) -> Option<Triple> {
    (k == l).then(|| (i, a.get(j, n), r))
}

/// All `m³` basis labels in storage order.
pub fn triples(m: usize) -> impl Iterator<Item = Triple> + Clone {
    (0..m).flat_map(move |i| (0..m).flat_map(move |j| (0..m).map(move |k| (i, j, k))))
}

impl<F> Index<Triple> for CubicMatrix<F> {
    type Output = F;
    fn index(&self, (i, j, k): Triple) -> &F {
        &self.entries[(i * self.m + j) * self.m + k]
    }
}

impl<F> IndexMut<Triple> for CubicMatrix<F> {
    fn index_mut(&mut self, (i, j, k): Triple) -> &mut F {
        &mut self.entries[(i * self.m + j) * self.m + k]
    }
}

impl<F: Field> Neg for CubicMatrix<F> {
    type Output = Self;
    fn neg(self) -> Self {
        CubicMatrix { m: self.m, entries: self.entries.into_iter().map(|x| -x).collect() }
    }
}

/// Panics on size mismatch; use [`CubicMatrix::try_add`] for fallible code.
impl<F: Field> Add for &CubicMatrix<F> {
    type Output = CubicMatrix<F>;
    fn add(self, rhs: Self) -> CubicMatrix<F> {
        self.try_add(rhs).expect("cubic matrices of equal size")
    }
}

impl<F: Field> Sub for &CubicMatrix<F> {
    type Output = CubicMatrix<F>;
    fn sub(self, rhs: Self) -> CubicMatrix<F> {
        self.try_sub(rhs).expect("cubic matrices of equal size")
    }
}

impl<F: fmt::Debug> fmt::Debug for CubicMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubicMatrix(m={}, {:?})", self.m, self.entries)
    }
}
