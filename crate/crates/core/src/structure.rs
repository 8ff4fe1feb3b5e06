//! Structural results about the algebras `C_a`: relabeling isomorphisms,
//! characters, the accompanying algebra and the map onto it, zero divisors,
//! and subalgebras/ideals spanned by basis matrices.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::cubic::{basis_product, triples, CubicMatrix, Triple};
use crate::error::{CubalError, Result};
use crate::field::{Field, Rational};
use crate::linalg::{Matrix, SquareMatrix};
use crate::semigroup::{Operation, Permutation, Subset};

fn check_size(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(CubalError::SizeMismatch { expected, found })
    }
}

// ---------------------------------------------------------------------------
// Accompanying algebra

/// An element `Σ u_ij η_ij` of the matrix-unit algebra
/// `η_ij η_kl = δ_jk η_il`.
#[derive(Clone, PartialEq, Eq)]
pub struct AccompanyingElement<F = Rational> {
    coeffs: SquareMatrix<F>,
}

impl<F: Field> AccompanyingElement<F> {
    pub fn zero(m: usize) -> Self {
        AccompanyingElement { coeffs: SquareMatrix::zeros(m, m) }
    }

    /// The unit `η_ij`, 0-based.
    pub fn unit(m: usize, i: usize, j: usize) -> Result<Self> {
        for index in [i, j] {
            if index >= m {
                return Err(CubalError::IndexOutOfRange { index: index + 1, m });
            }
        }
        let mut u = Self::zero(m);
        u.coeffs[(i, j)] = F::one();
        Ok(u)
    }

    pub fn from_coeffs(coeffs: SquareMatrix<F>) -> Result<Self> {
        check_size(coeffs.rows(), coeffs.cols())?;
        Ok(AccompanyingElement { coeffs })
    }

    pub fn m(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn coeffs(&self) -> &SquareMatrix<F> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Bilinear extension of the unit rule, i.e. the matrix product of the
    /// coefficient arrays.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_size(self.m(), other.m())?;
        Ok(AccompanyingElement { coeffs: self.coeffs.matmul(&other.coeffs)? })
    }
}

impl<F: fmt::Debug> fmt::Debug for AccompanyingElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AccompanyingElement({:?})", self.coeffs)
    }
}

/// `φ(E_inj) = η_ij`, so `φ(X)_ij = Σ_n x_inj`.
pub fn phi<F: Field>(x: &CubicMatrix<F>) -> AccompanyingElement<F> {
    AccompanyingElement { coeffs: x.accompanying_matrix() }
}

/// Membership in `ker φ`: every fiber sum `Σ_n x_inj` vanishes.
pub fn in_kernel_ideal<F: Field>(x: &CubicMatrix<F>) -> bool {
    let m = x.m();
    (0..m).cartesian_product(0..m).all(|(i, j)| {
        (0..m).fold(F::zero(), |acc, n| acc + x[(i, n, j)].clone()).is_zero()
    })
}

/// Rank of the span of `φ(E_ijk)` over all basis matrices.
pub fn phi_image_rank(m: usize) -> usize {
    let rows: Vec<Vec<Rational>> = triples(m)
        .map(|t| {
            let e = CubicMatrix::<Rational>::basis(m, t).expect("in range");
            let image = phi(&e);
            image.coeffs().to_rows().into_iter().flatten().collect()
        })
        .collect();
    Matrix::from_rows(rows).expect("rectangular").rank()
}

// ---------------------------------------------------------------------------
// Relabeling isomorphisms

/// Linear extension of `E_ijk ↦ E_{π(i) π(j) π(k)}`.
pub fn iso_map<F: Field>(pi: &Permutation, x: &CubicMatrix<F>) -> Result<CubicMatrix<F>> {
    check_size(x.m(), pi.m())?;
    let mut out = CubicMatrix::zeros(x.m());
    for ((i, j, k), value) in x.support() {
        out[(pi.apply(i), pi.apply(j), pi.apply(k))] = value.clone();
    }
    Ok(out)
}

/// Checks `f(E *_a E') = f(E) *_b f(E')` on every pair of basis matrices,
/// with `f = iso_map(pi, ·)`. Holds whenever `πa = b`.
pub fn verify_isomorphism(a: &Operation, b: &Operation, pi: &Permutation) -> Result<bool> {
    check_size(a.m(), b.m())?;
    check_size(a.m(), pi.m())?;
    let m = a.m();
    let basis: Vec<CubicMatrix> = triples(m)
        .map(|t| CubicMatrix::basis(m, t).expect("in range"))
        .collect();
    let images: Vec<CubicMatrix> = basis.iter().map(|e| iso_map(pi, e)).try_collect()?;
    for (x, fx) in basis.iter().zip(&images) {
        for (y, fy) in basis.iter().zip(&images) {
            if iso_map(pi, &x.mul(y, a)?)? != fx.mul(fy, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Characters

/// `χ(X) = Σ α_ijk x_ijk`, coefficients laid out like a cubic matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearForm<F = Rational> {
    coeffs: CubicMatrix<F>,
}

impl<F: Field> LinearForm<F> {
    pub fn new(coeffs: CubicMatrix<F>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(m: usize) -> Self {
        LinearForm { coeffs: CubicMatrix::zeros(m) }
    }

    pub fn m(&self) -> usize {
        self.coeffs.m()
    }

    pub fn coeffs(&self) -> &CubicMatrix<F> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn eval(&self, x: &CubicMatrix<F>) -> Result<F> {
        check_size(self.m(), x.m())?;
        Ok(self
            .coeffs
            .as_slice()
            .iter()
            .zip(x.as_slice())
            .fold(F::zero(), |acc, (alpha, v)| acc + alpha.clone() * v.clone()))
    }
}

impl<F: fmt::Debug> fmt::Debug for LinearForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearForm({:?})", self.coeffs)
    }
}

/// A character is a nonzero form with `α_ijk α_lnr = δ_kl α_{i a(j,n) r}`
/// for every pair of basis labels.
pub fn is_character<F: Field>(chi: &LinearForm<F>, a: &Operation) -> Result<bool> {
    check_size(chi.m(), a.m())?;
    if chi.is_zero() {
        return Ok(false);
    }
    let m = a.m();
    let alpha = chi.coeffs();
    for s in triples(m) {
        for t in triples(m) {
            let lhs = alpha[s].clone() * alpha[t].clone();
            let rhs = match basis_product(a, s, t) {
                Some(u) => alpha[u].clone(),
                None => F::zero(),
            };
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// What the multiplicativity constraints force on one diagonal slice
/// `β_j = α_{k j k}` (all other coefficients being zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceReduction {
    pub slice: usize,
    /// Indices `j` with `β_j` forced to zero.
    pub forced_zero: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterAnalysis<F = Rational> {
    pub slices: Vec<SliceReduction>,
    pub characters: Vec<LinearForm<F>>,
}

/// Every character of `C_a`, found by reducing the multiplicativity system
/// rather than by solving it blindly:
///
/// 1. `α_ijk² = 0` for `i ≠ k` (the `δ` vanishes), so only the diagonal
///    slices `α_kjk` survive.
/// 2. `α_kjk α_lnl = 0` for `k ≠ l`, so the support lies in one slice `k₀`.
/// 3. With `β_j = α_{k₀ j k₀}` and any `k ≠ k₀`, the pair
///    `(k₀ j k)·(k n k₀)` gives `0 = β_{a(j,n)}`: `β` vanishes on the image.
/// 4. `β_j² = β_{a(j,j)}` then forces `β_j = 0` whenever `a(j,j)` is forced.
///
/// Whatever survives (only possible for `m = 1`) satisfies `β² = β` and is
/// enumerated over the idempotents of `F`, each candidate being confirmed by
/// [`is_character`].
pub fn character_analysis<F: Field>(a: &Operation) -> CharacterAnalysis<F> {
    let m = a.m();
    let mut slices = Vec::with_capacity(m);
    let mut characters = Vec::new();
    for k0 in 0..m {
        let mut forced: BTreeSet<usize> = BTreeSet::new();
        if m >= 2 {
            forced.extend(a.image().iter());
        }
        loop {
            let grown: Vec<usize> = (0..m)
                .filter(|j| !forced.contains(j) && forced.contains(&a.get(*j, *j)))
                .collect();
            if grown.is_empty() {
                break;
            }
            forced.extend(grown);
        }
        let free: Vec<usize> = (0..m).filter(|j| !forced.contains(j)).collect();
        let candidates = free
            .iter()
            .map(|_| F::idempotents())
            .multi_cartesian_product()
            .filter(|values| values.iter().any(|v| !v.is_zero()));
        for values in candidates {
            let mut coeffs = CubicMatrix::zeros(m);
            for (&j, v) in free.iter().zip(values) {
                coeffs[(k0, j, k0)] = v;
            }
            let form = LinearForm::new(coeffs);
            if is_character(&form, a).expect("sizes agree") {
                characters.push(form);
            }
        }
        slices.push(SliceReduction {
            slice: k0,
            forced_zero: Subset::new(m, forced).expect("in range"),
        });
    }
    CharacterAnalysis { slices, characters }
}

pub fn character_search<F: Field>(a: &Operation) -> Vec<LinearForm<F>> {
    character_analysis(a).characters
}

// ---------------------------------------------------------------------------
// Zero divisors

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `A *_a X = 0`
    Left,
    /// `X *_a A = 0`
    Right,
}

/// The `m³ × m³` matrix of `X ↦ A *_a X` (left) or `X ↦ X *_a A` (right)
/// in the basis `E_ijk`, flat index `(i·m + j)·m + k`.
pub fn multiplication_operator<F: Field>(
    x: &CubicMatrix<F>,
    a: &Operation,
    side: Side,
) -> Result<Matrix<F>> {
    check_size(x.m(), a.m())?;
    let m = a.m();
    let dim = m * m * m;
    let flat = |(i, j, k): Triple| (i * m + j) * m + k;
    let mut op = Matrix::<F>::zeros(dim, dim);
    for ((p, q, s), value) in x.support() {
        for n in 0..m {
            for r in 0..m {
                // (p, q, s) is the fixed factor; the other one is a basis element.
                let (row, col) = match side {
                    // E_pqs * E_{s n r} = E_{p a(q,n) r}
                    Side::Left => (flat((p, a.get(q, n), r)), flat((s, n, r))),
                    // E_{r n p} * E_pqs = E_{r a(n,q) s}
                    Side::Right => (flat((r, a.get(n, q), s)), flat((r, n, p))),
                };
                op[(row, col)] = op[(row, col)].clone() + value.clone();
            }
        }
    }
    Ok(op)
}

/// A basis of all `X` with `A *_a X = 0` (left) or `X *_a A = 0` (right).
pub fn annihilator_basis<F: Field>(
    x: &CubicMatrix<F>,
    a: &Operation,
    side: Side,
) -> Result<Vec<CubicMatrix<F>>> {
    let op = multiplication_operator(x, a, side)?;
    op.kernel_basis()
        .into_iter()
        .map(|v| CubicMatrix::from_vec(a.m(), v))
        .collect()
}

pub fn zero_divisor_witness<F: Field>(
    x: &CubicMatrix<F>,
    a: &Operation,
    side: Side,
) -> Result<Option<CubicMatrix<F>>> {
    Ok(annihilator_basis(x, a, side)?.into_iter().next())
}

pub fn left_zero_divisor_witness<F: Field>(
    x: &CubicMatrix<F>,
    a: &Operation,
) -> Result<Option<CubicMatrix<F>>> {
    zero_divisor_witness(x, a, Side::Left)
}

pub fn right_zero_divisor_witness<F: Field>(
    x: &CubicMatrix<F>,
    a: &Operation,
) -> Result<Option<CubicMatrix<F>>> {
    zero_divisor_witness(x, a, Side::Right)
}

// ---------------------------------------------------------------------------
// Subalgebras and ideals

/// The span of a set of basis matrices `E_ijk`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpannedSubspace {
    m: usize,
    triples: BTreeSet<Triple>,
}

impl SpannedSubspace {
    pub fn new(m: usize, triples: impl IntoIterator<Item = Triple>) -> Result<Self> {
        let triples: BTreeSet<Triple> = triples.into_iter().collect();
        for &(i, j, k) in &triples {
            for index in [i, j, k] {
                if index >= m {
                    return Err(CubalError::IndexOutOfRange { index: index + 1, m });
                }
            }
        }
        Ok(SpannedSubspace { m, triples })
    }

    pub fn whole(m: usize) -> Self {
        SpannedSubspace { m, triples: triples(m).collect() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        self.triples.iter().copied()
    }

    pub fn contains_basis(&self, t: Triple) -> bool {
        self.triples.contains(&t)
    }

    /// Whether every nonzero entry of `x` lies on a spanning label.
    pub fn contains<F: Field>(&self, x: &CubicMatrix<F>) -> bool {
        x.m() == self.m && x.support().all(|(t, _)| self.triples.contains(&t))
    }

    /// Spans of basis subsets intersect in the span of the common labels.
    pub fn intersection(&self, other: &Self) -> SpannedSubspace {
        SpannedSubspace {
            m: self.m,
            triples: self.triples.intersection(&other.triples).copied().collect(),
        }
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.triples.is_subset(&other.triples)
    }

    pub fn is_trivial(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn one_based(&self) -> Vec<[usize; 3]> {
        self.triples().map(|(i, j, k)| [i + 1, j + 1, k + 1]).collect()
    }
}

impl fmt::Debug for SpannedSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpannedSubspace(m={}, {:?})", self.m, self.one_based())
    }
}

/// `span{E_ijk : j ∈ J}` for fixed `i, k` and a nonempty invariant `J`.
pub fn subalgebra_span(a: &Operation, subset: &Subset, i: usize, k: usize) -> Result<SpannedSubspace> {
    check_size(a.m(), subset.m())?;
    if subset.is_empty() {
        return Err(CubalError::EmptySubset);
    }
    if !a.is_invariant(subset)? {
        return Err(CubalError::NotInvariant { subset: subset.to_string() });
    }
    SpannedSubspace::new(a.m(), subset.iter().map(|j| (i, j, k)))
}

/// `span{E_ijk : j ∈ J_a}`, the ideal cut out by the image of `a`.
pub fn image_ideal_span(a: &Operation) -> SpannedSubspace {
    let m = a.m();
    let image = a.image();
    SpannedSubspace {
        m,
        triples: triples(m).filter(|&(_, j, _)| image.contains(j)).collect(),
    }
}

pub fn is_subalgebra(s: &SpannedSubspace, a: &Operation) -> Result<bool> {
    check_size(a.m(), s.m())?;
    Ok(s.triples().all(|x| {
        s.triples()
            .all(|y| basis_product(a, x, y).is_none_or(|z| s.contains_basis(z)))
    }))
}

/// Closed under multiplication on the left by the whole algebra.
pub fn is_left_ideal(s: &SpannedSubspace, a: &Operation) -> Result<bool> {
    check_size(a.m(), s.m())?;
    Ok(triples(a.m()).all(|t| {
        s.triples()
            .all(|x| basis_product(a, t, x).is_none_or(|z| s.contains_basis(z)))
    }))
}

pub fn is_right_ideal(s: &SpannedSubspace, a: &Operation) -> Result<bool> {
    check_size(a.m(), s.m())?;
    Ok(triples(a.m()).all(|t| {
        s.triples()
            .all(|x| basis_product(a, x, t).is_none_or(|z| s.contains_basis(z)))
    }))
}

pub fn is_ideal(s: &SpannedSubspace, a: &Operation) -> Result<bool> {
    Ok(is_left_ideal(s, a)? && is_right_ideal(s, a)?)
}

/// Subalgebras obtained from invariant subsets. Each nonempty invariant `J`
/// gives one subalgebra per block `(i, k)`, so these are lower bounds on the
/// number of subalgebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraCount {
    pub invariant_subsets: Vec<Subset>,
    /// Nonempty invariant subsets, i.e. subalgebras per fixed `(i, k)`.
    pub per_block: usize,
    /// `per_block · m²`.
    pub total: usize,
}

pub fn count_subalgebras_from_invariants(a: &Operation) -> Result<SubalgebraCount> {
    let invariant_subsets: Vec<Subset> = a
        .invariant_subsets()?
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    let per_block = invariant_subsets.len();
    Ok(SubalgebraCount { invariant_subsets, per_block, total: per_block * a.m() * a.m() })
}
