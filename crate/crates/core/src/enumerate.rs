//! Census of associative operations on a finite set by backtracking over
//! Cayley-table cells with incremental associativity checking.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{CubalError, Result};
use crate::semigroup::Operation;

/// Default ceiling on `m` for enumeration.
pub const DEFAULT_MAX_M: usize = 5;
/// Nothing past this is ever enumerated, overrides included.
pub const HARD_MAX_M: usize = 6;
/// Default ceiling on `m` for the orbit pass.
pub const ORBIT_CENSUS_MAX_M: usize = 4;

const UNSET: u8 = u8::MAX;

/// Enumeration driver. Output order is the canonical (lexicographic) order
/// for every job count.
#[derive(Debug, Clone)]
pub struct Enumerator {
    m: usize,
    jobs: usize,
}

impl Enumerator {
    /// Uses [`DEFAULT_MAX_M`] as the budget.
    pub fn new(m: usize) -> Result<Self> {
        Self::with_budget(m, DEFAULT_MAX_M)
    }

    /// `max_m` may raise the budget up to [`HARD_MAX_M`].
    pub fn with_budget(m: usize, max_m: usize) -> Result<Self> {
        let limit = max_m.min(HARD_MAX_M);
        if m == 0 {
            return Err(CubalError::Capacity { m, limit, hint: "m must be at least 1".into() });
        }
        if m > limit {
            let hint = if m <= HARD_MAX_M {
                format!("raise the budget to {m} explicitly (CUBAL_MAX_M) to run it")
            } else {
                format!("enumeration is capped at m = {HARD_MAX_M}")
            };
            return Err(CubalError::Capacity { m, limit, hint });
        }
        Ok(Enumerator { m, jobs: 1 })
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Streams every associative table, in canonical order, on the calling
    /// thread.
    pub fn for_each(&self, mut visit: impl FnMut(Operation)) {
        let mut search = Search::new(self.m);
        search.run(0, &mut |cells: &[u8]| {
            visit(Operation::new_unchecked(self.m, cells.to_vec()).expect("in range"))
        });
    }

    pub fn collect(&self) -> Vec<Operation> {
        if self.jobs == 1 {
            let mut out = Vec::new();
            self.for_each(|op| out.push(op));
            return out;
        }
        let m = self.m;
        self.partitioned(|search, depth| {
            let mut out = Vec::new();
            search.run(depth, &mut |cells: &[u8]| {
                out.push(Operation::new_unchecked(m, cells.to_vec()).expect("in range"))
            });
            out
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// `τ(m)` without materializing tables.
    pub fn count(&self) -> u64 {
        let count_subtree = |search: &mut Search, depth: usize| {
            let mut n = 0u64;
            search.run(depth, &mut |_: &[u8]| n += 1);
            n
        };
        if self.jobs == 1 {
            return count_subtree(&mut Search::new(self.m), 0);
        }
        self.partitioned(count_subtree).into_iter().sum()
    }

    /// Splits the tree at a fixed prefix depth and runs `work` on each
    /// consistent prefix in parallel; results come back in prefix order.
    fn partitioned<T: Send>(&self, work: impl Fn(&mut Search, usize) -> T + Sync) -> Vec<T> {
        let cells = self.m * self.m;
        let mut depth = 0;
        let mut width = 1usize;
        while depth < cells && width < 16 * self.jobs {
            depth += 1;
            width *= self.m;
        }
        let mut prefixes = Vec::new();
        Search::new(self.m).prefixes(0, depth, &mut prefixes);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            prefixes
                .par_iter()
                .map(|prefix| {
                    let mut search = Search::new(self.m);
                    search.cells[..depth].copy_from_slice(prefix);
                    work(&mut search, depth)
                })
                .collect()
        })
    }
}

/// Every associative operation on an `m`-element set, in canonical order.
pub fn enumerate_operations(m: usize) -> Result<Vec<Operation>> {
    Ok(Enumerator::new(m)?.collect())
}

pub fn count_operations(m: usize) -> Result<u64> {
    Ok(Enumerator::new(m)?.count())
}

struct Search {
    m: usize,
    cells: Vec<u8>,
}

impl Search {
    fn new(m: usize) -> Self {
        Search { m, cells: vec![UNSET; m * m] }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> Option<usize> {
        match self.cells[i * self.m + j] {
            UNSET => None,
            v => Some(v as usize),
        }
    }

    #[inline]
    fn compose(&self, i: usize, j: Option<usize>) -> Option<usize> {
        j.and_then(|j| self.get(i, j))
    }

    /// Checks every triple that has `(x, y)` in one of its four lookups and
    /// whose two sides are both determined.
    fn consistent(&self, x: usize, y: usize) -> bool {
        let m = self.m;
        let v = self.get(x, y).expect("cell just assigned");
        let agree = |lhs: Option<usize>, rhs: Option<usize>| match (lhs, rhs) {
            (Some(l), Some(r)) => l == r,
            _ => true,
        };
        for k in 0..m {
            // (x, y, k): a(v, k) = a(x, a(y, k))
            if !agree(self.get(v, k), self.compose(x, self.get(y, k))) {
                return false;
            }
            // (k, x, y): a(a(k, x), y) = a(k, v)
            let kx = self.get(k, x);
            if !agree(kx.and_then(|t| self.get(t, y)), self.get(k, v)) {
                return false;
            }
        }
        for i in 0..m {
            for j in 0..m {
                // (i, j, y) with a(i, j) = x: v = a(i, a(j, y))
                if self.get(i, j) == Some(x) && !agree(Some(v), self.compose(i, self.get(j, y))) {
                    return false;
                }
                // (x, i, j) with a(i, j) = y: a(a(x, i), j) = v
                if self.get(i, j) == Some(y) {
                    let lhs = self.get(x, i).and_then(|t| self.get(t, j));
                    if !agree(lhs, Some(v)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, cell: usize, visit: &mut dyn FnMut(&[u8])) {
        if cell == self.cells.len() {
            visit(&self.cells);
            return;
        }
        let (x, y) = (cell / self.m, cell % self.m);
        for v in 0..self.m as u8 {
            self.cells[cell] = v;
            if self.consistent(x, y) {
                self.run(cell + 1, visit);
            }
        }
        self.cells[cell] = UNSET;
    }

    fn prefixes(&mut self, cell: usize, depth: usize, out: &mut Vec<Vec<u8>>) {
        if cell == depth {
            out.push(self.cells[..depth].to_vec());
            return;
        }
        let (x, y) = (cell / self.m, cell % self.m);
        for v in 0..self.m as u8 {
            self.cells[cell] = v;
            if self.consistent(x, y) {
                self.prefixes(cell + 1, depth, out);
            }
        }
        self.cells[cell] = UNSET;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSummary {
    /// Lexicographic minimum of the orbit.
    pub representative: Operation,
    pub size: usize,
}

/// The census split into `S_m`-orbits, ordered by representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub m: usize,
    pub total: u64,
    pub orbit_count: usize,
    pub orbits: Vec<OrbitSummary>,
}

pub fn orbit_census(m: usize) -> Result<CensusResult> {
    orbit_census_with(m, ORBIT_CENSUS_MAX_M, 1)
}

pub fn orbit_census_with(m: usize, max_m: usize, jobs: usize) -> Result<CensusResult> {
    if m > max_m {
        return Err(CubalError::Capacity {
            m,
            limit: max_m,
            hint: "the orbit pass relabels every table by all of S_m".into(),
        });
    }
    let ops = Enumerator::with_budget(m, max_m)?.jobs(jobs).collect();
    Ok(census_from_operations(m, &ops))
}

/// Groups an already enumerated census into orbits.
pub fn census_from_operations(m: usize, ops: &[Operation]) -> CensusResult {
    let mut sizes: BTreeMap<Operation, usize> = BTreeMap::new();
    for op in ops {
        *sizes.entry(op.canonical_representative()).or_default() += 1;
    }
    let orbits: Vec<OrbitSummary> = sizes
        .into_iter()
        .map(|(representative, size)| OrbitSummary { representative, size })
        .collect();
    CensusResult { m, total: ops.len() as u64, orbit_count: orbits.len(), orbits }
}
