//! Oracles and fixtures shared by the integration tests. Nothing here calls
//! into the enumerator or the structure solvers.
#![allow(dead_code)]

use std::collections::BTreeSet;

use cubal::field::rational;
use cubal::{CubicMatrix, Operation, Permutation, Rational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn op<R: AsRef<[usize]>>(rows: &[R]) -> Operation {
    Operation::from_rows(rows).unwrap()
}

/// Tables I..VIII on a two-element set, in that order.
pub fn two_element_tables() -> Vec<Operation> {
    vec![
        op(&[[1, 1], [1, 1]]),
        op(&[[1, 1], [1, 2]]),
        op(&[[1, 1], [2, 2]]),
        op(&[[1, 2], [1, 2]]),
        op(&[[1, 2], [2, 1]]),
        op(&[[1, 2], [2, 2]]),
        op(&[[2, 1], [1, 2]]),
        op(&[[2, 2], [2, 2]]),
    ]
}

/// Tables i..viii on a three-element set.
pub fn three_element_tables() -> Vec<Operation> {
    vec![
        op(&[[1, 2, 3], [2, 2, 2], [3, 2, 2]]),
        op(&[[1, 2, 3], [2, 3, 3], [3, 3, 3]]),
        op(&[[1, 1, 1], [1, 2, 3], [1, 3, 1]]),
        op(&[[2, 2, 1], [2, 2, 2], [1, 2, 3]]),
        op(&[[1, 1, 1], [1, 1, 2], [1, 2, 3]]),
        op(&[[3, 1, 3], [1, 2, 3], [3, 3, 3]]),
        op(&[[1, 2, 3], [1, 2, 3], [1, 2, 3]]),
        op(&[[1, 1, 1], [2, 2, 2], [3, 3, 3]]),
    ]
}

pub fn cyclic_three() -> Operation {
    op(&[[1, 2, 3], [2, 3, 1], [3, 1, 2]])
}

pub fn semilattice_three() -> Operation {
    op(&[[1, 1, 1], [1, 2, 2], [1, 3, 3]])
}

/// Every table in `m^(m²)` order, filtered by the triple-loop test.
pub fn naive_enumerate(m: usize) -> Vec<Operation> {
    let cells = m * m;
    let total = m.pow(cells as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut table = vec![0u8; cells];
        let mut c = code;
        for cell in (0..cells).rev() {
            table[cell] = (c % m) as u8;
            c /= m;
        }
        let mut assoc = true;
        'outer: for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let ij = table[i * m + j] as usize;
                    let jk = table[j * m + k] as usize;
                    if table[ij * m + k] != table[i * m + jk] {
                        assoc = false;
                        break 'outer;
                    }
                }
            }
        }
        if assoc {
            out.push(Operation::new_unchecked(m, table).unwrap());
        }
    }
    out
}

/// `πa` written out from the definition, independently of `Operation::act`.
pub fn relabel(a: &Operation, pi: &[usize]) -> Operation {
    let m = a.m();
    let mut inv = vec![0; m];
    for (x, &y) in pi.iter().enumerate() {
        inv[y] = x;
    }
    let table = (0..m * m)
        .map(|cell| pi[a.get(inv[cell / m], inv[cell % m])] as u8)
        .collect();
    Operation::new_unchecked(m, table).unwrap()
}

pub fn all_perms(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, m: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        for x in 0..m {
            if !prefix.contains(&x) {
                prefix.push(x);
                rec(prefix, m, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), m, &mut out);
    out
}

pub fn brute_orbit(a: &Operation) -> BTreeSet<Operation> {
    all_perms(a.m()).iter().map(|p| relabel(a, p)).collect()
}

pub fn perm(map: &[usize]) -> Permutation {
    Permutation::new(map.to_vec()).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut StdRng) -> Rational {
    rational(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// Dense random matrix; about a quarter of the entries are zero.
pub fn random_cubic(rng: &mut StdRng, m: usize) -> CubicMatrix {
    CubicMatrix::from_fn(m, |_| {
        if rng.gen_bool(0.25) {
            rational(0, 1)
        } else {
            random_rational(rng)
        }
    })
}

pub fn basis(m: usize, t: (usize, usize, usize)) -> CubicMatrix {
    CubicMatrix::basis(m, t).unwrap()
}

/// `E_ijk` from 1-based labels.
pub fn e(m: usize, i: usize, j: usize, k: usize) -> CubicMatrix {
    CubicMatrix::basis(m, (i - 1, j - 1, k - 1)).unwrap()
}

/// Unrolls `i_n = a(i_{n-1}, i_{n-1})`.
pub fn unroll(a: &Operation, i: usize, steps: usize) -> Vec<usize> {
    let mut seq = vec![i];
    for _ in 0..steps {
        let x = *seq.last().unwrap();
        seq.push(a.get(x, x));
    }
    seq
}
