//! Binary operations on `I = {0, .., m-1}`, the relabeling action of the
//! symmetric group on them, and the set-level machinery (images, invariant
//! subsets, squaring sequences, closures).
//!
//! Indices are 0-based throughout the Rust API. Text and JSON formats, and
//! the `Display` impls, use the 1-based convention.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{CubalError, Result};

/// Largest `m` for which [`Operation::invariant_subsets`] scans all `2^m`
/// subsets.
pub const MAX_SUBSET_SCAN: usize = 20;

/// A binary operation given by its Cayley table, stored row-major and
/// 0-based. `Ord` is lexicographic on the flattened table (for equal `m`),
/// which is the canonical order used for orbit representatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operation {
    m: usize,
    table: Vec<u8>,
}

impl Operation {
    /// Builds an associative operation from a 0-based row-major table.
    pub fn new(m: usize, table: Vec<u8>) -> Result<Self> {
        let op = Self::new_unchecked(m, table)?;
        if let Some((i, j, k)) = op.associativity_violation() {
            return Err(CubalError::NotAssociative { i: i + 1, j: j + 1, k: k + 1 });
        }
        Ok(op)
    }

    /// Like [`Operation::new`] but only checks shape and entry ranges.
    pub fn new_unchecked(m: usize, table: Vec<u8>) -> Result<Self> {
        if m == 0 || m > u8::MAX as usize {
            return Err(CubalError::MalformedTable(format!("m = {m} must lie in 1..=255")));
        }
        if table.len() != m * m {
            return Err(CubalError::MalformedTable(format!(
                "expected {} entries, found {}",
                m * m,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= m) {
            return Err(CubalError::IndexOutOfRange { index: bad as usize + 1, m });
        }
        Ok(Operation { m, table })
    }

    /// Builds an operation from 1-based rows, as written in a Cayley table.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let (m, table) = flatten_rows(rows)?;
        Self::new(m, table)
    }

    pub fn from_rows_unchecked<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let (m, table) = flatten_rows(rows)?;
        Self::new_unchecked(m, table)
    }

    /// `a(i, j) = i`.
    pub fn left_symmetric(m: usize) -> Self {
        let table = (0..m).flat_map(|i| std::iter::repeat(i as u8).take(m)).collect();
        Operation { m, table }
    }

    /// `a(i, j) = j`.
    pub fn right_symmetric(m: usize) -> Self {
        let table = (0..m).flat_map(|_| 0..m as u8).collect();
        Operation { m, table }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `a(i, j)`, 0-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.table[i * self.m + j] as usize
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn rows_one_based(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.m)
            .map(|row| row.iter().map(|&v| v as usize + 1).collect())
            .collect()
    }

    /// First triple (0-based) violating associativity, if any.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let m = self.m;
        (0..m)
            .cartesian_product(0..m)
            .cartesian_product(0..m)
            .map(|((i, j), k)| (i, j, k))
            .find(|&(i, j, k)| self.get(self.get(i, j), k) != self.get(i, self.get(j, k)))
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    fn check_size(&self, m: usize) -> Result<()> {
        if self.m == m {
            Ok(())
        } else {
            Err(CubalError::SizeMismatch { expected: self.m, found: m })
        }
    }

    /// The relabeled operation `πa(i, j) = π(a(π⁻¹(i), π⁻¹(j)))`.
    pub fn act(&self, pi: &Permutation) -> Result<Operation> {
        self.check_size(pi.m())?;
        let m = self.m;
        let mut table = vec![0u8; m * m];
        for i in 0..m {
            for j in 0..m {
                table[pi.apply(i) * m + pi.apply(j)] = pi.apply(self.get(i, j)) as u8;
            }
        }
        Ok(Operation { m, table })
    }

    /// `Orb(a)`, in canonical order.
    pub fn orbit(&self) -> BTreeSet<Operation> {
        Permutation::all(self.m)
            .map(|pi| self.act(&pi).expect("sizes agree"))
            .collect()
    }

    /// Lexicographic minimum of the orbit.
    pub fn canonical_representative(&self) -> Operation {
        Permutation::all(self.m)
            .map(|pi| self.act(&pi).expect("sizes agree"))
            .min()
            .expect("S_m is nonempty")
    }

    /// Some `π` with `πa = b`, if `a ∼ b`. The identity is tried first.
    pub fn equivalence_to(&self, other: &Operation) -> Result<Option<Permutation>> {
        self.check_size(other.m)?;
        for pi in Permutation::all(self.m) {
            if &self.act(&pi)? == other {
                return Ok(Some(pi));
            }
        }
        Ok(None)
    }

    pub fn symmetry(&self) -> Symmetry {
        let left = *self == Operation::left_symmetric(self.m);
        let right = *self == Operation::right_symmetric(self.m);
        match (left, right) {
            (true, true) => Symmetry::Both,
            (true, false) => Symmetry::Left,
            (false, true) => Symmetry::Right,
            (false, false) => Symmetry::None,
        }
    }

    /// True iff every relabeling fixes the operation.
    pub fn is_symmetric(&self) -> bool {
        Permutation::all(self.m).all(|pi| self.act(&pi).expect("sizes agree") == *self)
    }

    /// `J_a`, the set of values taken by the operation.
    pub fn image(&self) -> Subset {
        Subset {
            m: self.m,
            members: self.table.iter().map(|&v| v as usize).collect(),
        }
    }

    /// A pair `(s, t)` in `J × J` with `a(s, t) ∉ J`.
    pub fn invariant_violation(&self, subset: &Subset) -> Result<Option<(usize, usize)>> {
        self.check_size(subset.m)?;
        Ok(subset
            .iter()
            .cartesian_product(subset.iter())
            .find(|&(s, t)| !subset.contains(self.get(s, t))))
    }

    pub fn is_invariant(&self, subset: &Subset) -> Result<bool> {
        Ok(self.invariant_violation(subset)?.is_none())
    }

    /// Every invariant subset, ordered by bitmask (element `i` ↦ bit `i`),
    /// starting with the empty set.
    pub fn invariant_subsets(&self) -> Result<Vec<Subset>> {
        if self.m > MAX_SUBSET_SCAN {
            return Err(CubalError::Capacity {
                m: self.m,
                limit: MAX_SUBSET_SCAN,
                hint: "exhaustive subset scan visits 2^m subsets; use closure() on chosen seeds instead"
                    .into(),
            });
        }
        let m = self.m;
        let closed = |mask: u32| {
            (0..m).filter(|s| mask >> s & 1 == 1).all(|s| {
                (0..m)
                    .filter(|t| mask >> t & 1 == 1)
                    .all(|t| mask >> self.get(s, t) & 1 == 1)
            })
        };
        Ok((0u32..1 << m)
            .filter(|&mask| closed(mask))
            .map(|mask| Subset::from_mask(m, mask as u64))
            .collect())
    }

    /// Classifies `i_0 = i`, `i_n = a(i_{n-1}, i_{n-1})`.
    pub fn power_sequence(&self, i: usize) -> Result<SequenceClass> {
        if i >= self.m {
            return Err(CubalError::IndexOutOfRange { index: i + 1, m: self.m });
        }
        let mut first_seen = vec![usize::MAX; self.m];
        let mut trajectory = Vec::with_capacity(self.m + 1);
        let mut x = i;
        while first_seen[x] == usize::MAX {
            first_seen[x] = trajectory.len();
            trajectory.push(x);
            x = self.get(x, x);
        }
        let entry = first_seen[x];
        let period = trajectory.len() - entry;
        let cycle = Subset {
            m: self.m,
            members: trajectory[entry..].iter().copied().collect(),
        };
        Ok(if entry == 0 {
            SequenceClass::Periodic { period, cycle }
        } else if period == 1 {
            SequenceClass::Convergent { entry, limit: x }
        } else {
            SequenceClass::EventuallyPeriodic { entry, period, cycle }
        })
    }

    /// The sets `J_{a,n}(K)`: `J_0 = K`, `J_n = J_{n-1} ∪ a(J_{n-1}, J_{n-1})`,
    /// up to and including the first repeated set.
    pub fn closure_chain(&self, seed: &Subset) -> Result<Vec<Subset>> {
        self.check_size(seed.m)?;
        let mut chain = vec![seed.clone()];
        loop {
            let current = chain.last().expect("nonempty");
            let mut next = current.clone();
            for s in current.iter() {
                for t in current.iter() {
                    next.members.insert(self.get(s, t));
                }
            }
            if next == *current {
                return Ok(chain);
            }
            chain.push(next);
        }
    }

    /// Least invariant superset of `seed`.
    pub fn closure(&self, seed: &Subset) -> Result<Subset> {
        Ok(self.closure_chain(seed)?.pop().expect("nonempty"))
    }
}

fn flatten_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<(usize, Vec<u8>)> {
    let m = rows.len();
    if m == 0 || m > u8::MAX as usize {
        return Err(CubalError::MalformedTable(format!("m = {m} must lie in 1..=255")));
    }
    let mut table = Vec::with_capacity(m * m);
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_ref();
        if row.len() != m {
            return Err(CubalError::MalformedTable(format!(
                "row {} has {} entries, expected {m}",
                r + 1,
                row.len()
            )));
        }
        for &v in row {
            if v == 0 || v > m {
                return Err(CubalError::IndexOutOfRange { index: v, m });
            }
            table.push((v - 1) as u8);
        }
    }
    Ok((m, table))
}

/// Associativity test on a raw 1-based table.
pub fn check_associative<R: AsRef<[usize]>>(rows: &[R]) -> Result<bool> {
    Ok(Operation::from_rows_unchecked(rows)?.is_associative())
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows_one_based();
        let text = rows.iter().map(|r| r.iter().join(" ")).join(" | ");
        write!(f, "[{text}]")
    }
}

impl fmt::Debug for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operation{self}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    /// `a(i, j) = i`
    Left,
    /// `a(i, j) = j`
    Right,
    /// `m = 1`: left and right coincide.
    Both,
    None,
}

/// A bijection of `{0, .., m-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let m = map.len();
        if m == 0 {
            return Err(CubalError::InvalidPermutation("empty map".into()));
        }
        let mut seen = vec![false; m];
        for &v in &map {
            if v >= m || std::mem::replace(&mut seen[v], true) {
                return Err(CubalError::InvalidPermutation(format!("{map:?} is not a bijection")));
            }
        }
        Ok(Permutation { map })
    }

    pub fn from_one_based(map: &[usize]) -> Result<Self> {
        if map.contains(&0) {
            return Err(CubalError::InvalidPermutation("entries are 1-based".into()));
        }
        Self::new(map.iter().map(|v| v - 1).collect())
    }

    pub fn identity(m: usize) -> Self {
        Permutation { map: (0..m).collect() }
    }

    /// Swaps `i` and `j`.
    pub fn transposition(m: usize, i: usize, j: usize) -> Self {
        let mut map: Vec<usize> = (0..m).collect();
        map.swap(i, j);
        Permutation { map }
    }

    /// All of `S_m` in lexicographic order of the image vector.
    pub fn all(m: usize) -> impl Iterator<Item = Permutation> {
        (0..m).permutations(m).map(|map| Permutation { map })
    }

    pub fn m(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.m() != other.m() {
            return Err(CubalError::SizeMismatch { expected: self.m(), found: other.m() });
        }
        Ok(Permutation { map: other.map.iter().map(|&x| self.map[x]).collect() })
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.map.iter().map(|v| v + 1).collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.one_based())
    }
}

/// A subset of `{0, .., m-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    m: usize,
    members: BTreeSet<usize>,
}

impl Subset {
    pub fn new(m: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&x| x >= m) {
            return Err(CubalError::IndexOutOfRange { index: bad + 1, m });
        }
        Ok(Subset { m, members })
    }

    pub fn from_one_based(m: usize, members: &[usize]) -> Result<Self> {
        if let Some(&bad) = members.iter().find(|&&x| x == 0 || x > m) {
            return Err(CubalError::IndexOutOfRange { index: bad, m });
        }
        Self::new(m, members.iter().map(|x| x - 1))
    }

    pub fn empty(m: usize) -> Self {
        Subset { m, members: BTreeSet::new() }
    }

    pub fn full(m: usize) -> Self {
        Subset { m, members: (0..m).collect() }
    }

    pub fn singleton(m: usize, i: usize) -> Result<Self> {
        Self::new(m, [i])
    }

    fn from_mask(m: usize, mask: u64) -> Self {
        Subset { m, members: (0..m).filter(|i| mask >> i & 1 == 1).collect() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + Clone + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.members.is_disjoint(&other.members)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.iter().map(|x| x + 1).collect()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.one_based().iter().join(","))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset{self}")
    }
}

/// Long-run behaviour of `i_n = a(i_{n-1}, i_{n-1})` on a finite set.
/// Indices inside are 0-based; `entry` counts squaring steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceClass {
    /// `i` lies on its own cycle: `i_p = i` for the minimal `p`.
    Periodic { period: usize, cycle: Subset },
    /// `i_n = limit` for all `n >= entry`, with `entry >= 1`.
    Convergent { entry: usize, limit: usize },
    /// Enters a cycle of length `period > 1` that does not contain `i`.
    EventuallyPeriodic { entry: usize, period: usize, cycle: Subset },
}
