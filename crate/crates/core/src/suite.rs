//! Per-operation verification of the structural identities of `C_a`.
//! Every check is exhaustive over basis matrices, so results are exact and
//! deterministic.

use itertools::Itertools;
use serde::Serialize;

use crate::cubic::{triples, CubicMatrix, Triple};
use crate::error::Result;
use crate::field::{format_rational, Rational};
use crate::semigroup::{Operation, Permutation, SequenceClass, Subset, Symmetry};
use crate::structure::{
    character_search, image_ideal_span, in_kernel_ideal, is_ideal, is_subalgebra, phi,
    phi_image_rank, subalgebra_span, zero_divisor_witness, Side,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    /// `(x, y)` with `x *_a y != y *_a x`, 1-based labels.
    pub non_commuting_pair: Option<[[usize; 3]; 2]>,
    /// Left annihilator of `E_111`, as a list of `(label, value)` entries.
    pub left_annihilator_of_e111: Option<Vec<([usize; 3], String)>>,
    pub right_annihilator_of_e111: Option<Vec<([usize; 3], String)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OperationReport {
    pub operation: Vec<Vec<usize>>,
    /// Every relabeling of `a` is associative.
    pub lemma_1: bool,
    /// `iso_map(π, ·)` is an isomorphism `C_a → C_{πa}` for every `π`.
    pub theorem_1: bool,
    /// No character exists when `m ≥ 2`; exactly one when `m = 1`.
    pub theorem_2: bool,
    /// `φ` is multiplicative on basis pairs and onto.
    pub theorem_3: bool,
    /// Subalgebras from invariant subsets, the image ideal, `ker φ`, and
    /// the block-intersection identities.
    pub theorem_4: bool,
    /// `*_a` is associative on all basis triples.
    pub associative: bool,
    /// Commutative iff `m = 1`.
    pub commutativity: bool,
    /// Zero-divisor criteria for the symmetric operations; vacuous otherwise.
    pub zero_divisors: bool,
    /// `E_jij^[n] = E_{j i_n j}` for `n ≤ 2m`.
    pub plenary_powers: bool,
    pub witnesses: Witnesses,
}

impl OperationReport {
    pub fn checks(&self) -> [(&'static str, bool); 9] {
        [
            ("lemma_1", self.lemma_1),
            ("theorem_1", self.theorem_1),
            ("theorem_2", self.theorem_2),
            ("theorem_3", self.theorem_3),
            ("theorem_4", self.theorem_4),
            ("associative", self.associative),
            ("commutativity", self.commutativity),
            ("zero_divisors", self.zero_divisors),
            ("plenary_powers", self.plenary_powers),
        ]
    }

    pub fn all_passed(&self) -> bool {
        self.checks().iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks().iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect()
    }
}

fn basis(m: usize, t: Triple) -> CubicMatrix {
    CubicMatrix::basis(m, t).expect("in range")
}

fn one_based(t: Triple) -> [usize; 3] {
    [t.0 + 1, t.1 + 1, t.2 + 1]
}

fn sparse_entries(x: &CubicMatrix) -> Vec<([usize; 3], String)> {
    x.support().map(|(t, v)| (one_based(t), format_rational(v))).collect()
}

pub fn check_lemma_1(a: &Operation) -> bool {
    Permutation::all(a.m()).all(|pi| a.act(&pi).expect("sizes agree").is_associative())
}

pub fn check_theorem_1(a: &Operation) -> Result<bool> {
    for pi in Permutation::all(a.m()) {
        let b = a.act(&pi)?;
        if !crate::structure::verify_isomorphism(a, &b, &pi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn check_theorem_2(a: &Operation) -> bool {
    let found = character_search::<Rational>(a).len();
    if a.m() == 1 {
        found == 1
    } else {
        found == 0
    }
}

pub fn check_theorem_3(a: &Operation) -> Result<bool> {
    let m = a.m();
    let all: Vec<CubicMatrix> = triples(m).map(|t| basis(m, t)).collect();
    for x in &all {
        for y in &all {
            if phi(&x.mul(y, a)?) != phi(x).mul(&phi(y))? {
                return Ok(false);
            }
        }
    }
    Ok(phi_image_rank(m) == m * m)
}

/// Spanning set of `ker φ`: `E_inj - E_{i n' j}` for consecutive `n`.
pub fn kernel_spanning_set(m: usize) -> Vec<CubicMatrix> {
    (0..m)
        .cartesian_product(0..m)
        .cartesian_product(1..m)
        .map(|((i, j), n)| &basis(m, (i, n, j)) - &basis(m, (i, n - 1, j)))
        .collect()
}

pub fn check_theorem_4(a: &Operation) -> Result<bool> {
    let m = a.m();
    let invariant: Vec<Subset> = a.invariant_subsets()?.into_iter().filter(|s| !s.is_empty()).collect();
    let blocks: Vec<(usize, usize)> = (0..m).cartesian_product(0..m).collect();
    for subset in &invariant {
        for &(i, k) in &blocks {
            if !is_subalgebra(&subalgebra_span(a, subset, i, k)?, a)? {
                return Ok(false);
            }
        }
        // distinct blocks meet only in zero
        for (&b1, &b2) in blocks.iter().tuple_combinations() {
            let s1 = subalgebra_span(a, subset, b1.0, b1.1)?;
            let s2 = subalgebra_span(a, subset, b2.0, b2.1)?;
            if !s1.intersection(&s2).is_trivial() {
                return Ok(false);
            }
        }
    }
    for (small, big) in invariant.iter().cartesian_product(&invariant) {
        for &(i, k) in &blocks {
            let s1 = subalgebra_span(a, small, i, k)?;
            let s2 = subalgebra_span(a, big, i, k)?;
            if small.is_subset(big) && !s1.is_subspace_of(&s2) {
                return Ok(false);
            }
            if small.is_disjoint(big) && !s1.intersection(&s2).is_trivial() {
                return Ok(false);
            }
        }
    }
    if !is_ideal(&image_ideal_span(a), a)? {
        return Ok(false);
    }
    let all: Vec<CubicMatrix> = triples(m).map(|t| basis(m, t)).collect();
    for x in kernel_spanning_set(m) {
        if !in_kernel_ideal(&x) {
            return Ok(false);
        }
        for y in &all {
            if !in_kernel_ideal(&x.mul(y, a)?) || !in_kernel_ideal(&y.mul(&x, a)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn check_associative_product(a: &Operation) -> Result<bool> {
    let m = a.m();
    let all: Vec<CubicMatrix> = triples(m).map(|t| basis(m, t)).collect();
    for x in &all {
        for y in &all {
            let xy = x.mul(y, a)?;
            for z in &all {
                if xy.mul(z, a)? != x.mul(&y.mul(z, a)?, a)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A basis pair that fails to commute.
pub fn non_commuting_pair(a: &Operation) -> Result<Option<(Triple, Triple)>> {
    let m = a.m();
    for s in triples(m) {
        for t in triples(m) {
            let (x, y) = (basis(m, s), basis(m, t));
            if x.mul(&y, a)? != y.mul(&x, a)? {
                return Ok(Some((s, t)));
            }
        }
    }
    Ok(None)
}

/// Test matrices for the zero-divisor criteria: every basis matrix
/// (singular accompanying matrix when `m ≥ 2`) and `Σ_i E_{i j i}` for each
/// `j` (identity accompanying matrix).
fn zero_divisor_probes(m: usize) -> Vec<CubicMatrix> {
    let mut probes: Vec<CubicMatrix> = triples(m).map(|t| basis(m, t)).collect();
    for j in 0..m {
        probes.push(CubicMatrix::from_fn(m, |(i, jj, k)| {
            if i == k && jj == j {
                Rational::from_integer(1.into())
            } else {
                Rational::from_integer(0.into())
            }
        }));
    }
    probes
}

pub fn check_zero_divisors(a: &Operation) -> Result<bool> {
    let m = a.m();
    let (criterion_side, always_side) = match a.symmetry() {
        Symmetry::Right => (Side::Left, Side::Right),
        Symmetry::Left => (Side::Right, Side::Left),
        Symmetry::Both | Symmetry::None => return Ok(true),
    };
    for x in zero_divisor_probes(m) {
        let singular = x.accompanying_matrix().det()? == Rational::from_integer(0.into());
        let witness = zero_divisor_witness(&x, a, criterion_side)?;
        if witness.is_some() != singular {
            return Ok(false);
        }
        let always = zero_divisor_witness(&x, a, always_side)?;
        if always.is_none() {
            return Ok(false);
        }
        for (w, side) in [(witness, criterion_side), (always, always_side)] {
            if let Some(w) = w {
                let product = match side {
                    Side::Left => x.mul(&w, a)?,
                    Side::Right => w.mul(&x, a)?,
                };
                if w.is_zero() || !product.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Unrolls `i_n` directly.
pub fn squaring_trajectory(a: &Operation, i: usize, steps: usize) -> Vec<usize> {
    std::iter::successors(Some(i), |&x| Some(a.get(x, x))).take(steps + 1).collect()
}

pub fn check_plenary_powers(a: &Operation) -> Result<bool> {
    let m = a.m();
    for i in 0..m {
        let trajectory = squaring_trajectory(a, i, 2 * m);
        for j in 0..m {
            let mut power = basis(m, (j, i, j));
            for (n, &i_n) in trajectory.iter().enumerate() {
                if power != basis(m, (j, i_n, j)) {
                    return Ok(false);
                }
                if n < trajectory.len() - 1 {
                    power = power.mul(&power, a)?;
                }
            }
        }
    }
    Ok(true)
}

/// Classifies a sequence of labels `(j, i_n, j)` the same way
/// [`Operation::power_sequence`] classifies `i_n`, given enough terms
/// (`2m` steps suffice on an `m`-element set).
pub fn classify_trajectory(m: usize, start: usize, terms: &[usize]) -> SequenceClass {
    let first_repeat = (1..terms.len())
        .find(|&n| terms[..n].contains(&terms[n]))
        .expect("a repeat within m + 1 terms");
    let entry = terms.iter().position(|&x| x == terms[first_repeat]).expect("seen");
    let period = first_repeat - entry;
    let cycle = Subset::new(m, terms[entry..first_repeat].iter().copied()).expect("in range");
    debug_assert_eq!(terms[0], start);
    if entry == 0 {
        SequenceClass::Periodic { period, cycle }
    } else if period == 1 {
        SequenceClass::Convergent { entry, limit: terms[entry] }
    } else {
        SequenceClass::EventuallyPeriodic { entry, period, cycle }
    }
}

pub fn verify_operation(a: &Operation) -> Result<OperationReport> {
    let m = a.m();
    let pair = non_commuting_pair(a)?;
    let e111 = basis(m, (0, 0, 0));
    Ok(OperationReport {
        operation: a.rows_one_based(),
        lemma_1: check_lemma_1(a),
        theorem_1: check_theorem_1(a)?,
        theorem_2: check_theorem_2(a),
        theorem_3: check_theorem_3(a)?,
        theorem_4: check_theorem_4(a)?,
        associative: check_associative_product(a)?,
        commutativity: pair.is_none() == (m == 1),
        zero_divisors: check_zero_divisors(a)?,
        plenary_powers: check_plenary_powers(a)?,
        witnesses: Witnesses {
            non_commuting_pair: pair.map(|(s, t)| [one_based(s), one_based(t)]),
            left_annihilator_of_e111: zero_divisor_witness(&e111, a, Side::Left)?
                .map(|w| sparse_entries(&w)),
            right_annihilator_of_e111: zero_divisor_witness(&e111, a, Side::Right)?
                .map(|w| sparse_entries(&w)),
        },
    })
}
