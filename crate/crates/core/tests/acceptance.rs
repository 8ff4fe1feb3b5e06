//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any blocking criterion fails.

mod common;

use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use cubal::cubic::triples;
use cubal::structure::{
    character_search, count_subalgebras_from_invariants, image_ideal_span, in_kernel_ideal,
    is_character, is_ideal, is_subalgebra, left_zero_divisor_witness, phi, phi_image_rank,
    right_zero_divisor_witness, subalgebra_span, verify_isomorphism, LinearForm,
};
use cubal::suite::classify_trajectory;
use cubal::{
    count_operations, enumerate_operations, orbit_census, CubicMatrix, Fp, Operation, Rational,
    Subset, Symmetry,
};

type Check = fn() -> Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn with_trivial(m: usize) -> Vec<Operation> {
    if m == 1 {
        vec![op(&[[1]])]
    } else {
        enumerate_operations(m).unwrap()
    }
}

fn census_counts() -> Result<(), String> {
    let start = Instant::now();
    for (m, tau) in [(1, 1u64), (2, 8), (3, 113), (4, 3492)] {
        let got = count_operations(m).map_err(|e| e.to_string())?;
        ensure(got == tau, || format!("tau({m}) = {got}, expected {tau}"))?;
    }
    within(start, Duration::from_secs(10), "tau(1..4)")
}

fn census_count_five() -> Result<(), String> {
    let start = Instant::now();
    let got = count_operations(5).map_err(|e| e.to_string())?;
    ensure(got == 183_732, || format!("tau(5) = {got}"))?;
    within(start, Duration::from_secs(300), "tau(5)")
}

fn two_element_census() -> Result<(), String> {
    let t = two_element_tables();
    let mut expected = t.clone();
    expected.sort();
    ensure(enumerate_operations(2).unwrap() == expected, || "census differs from tables I..VIII".into())?;
    let census = orbit_census(2).unwrap();
    ensure(census.orbit_count == 5, || format!("{} orbits", census.orbit_count))?;
    for (x, y) in [(0, 7), (1, 5), (4, 6)] {
        ensure(t[x].equivalence_to(&t[y]).unwrap().is_some(), || format!("table {} !~ {}", x + 1, y + 1))?;
        ensure(t[x].orbit().len() == 2, || format!("orbit of table {} is not a pair", x + 1))?;
    }
    for s in [2, 3] {
        ensure(t[s].orbit().len() == 1, || format!("table {} is not a singleton orbit", s + 1))?;
    }
    let symmetric: Vec<&Operation> = t.iter().filter(|a| a.is_symmetric()).collect();
    ensure(symmetric.len() == 2, || format!("{} symmetric operations", symmetric.len()))?;
    ensure(t[2].symmetry() == Symmetry::Left && t[3].symmetry() == Symmetry::Right, || {
        "III/IV are not the (ls)/(rs) forms".into()
    })
}

fn three_element_examples() -> Result<(), String> {
    let t = three_element_tables();
    let orbit = t[0].orbit();
    ensure(orbit.len() == 6, || format!("|Orb(i)| = {}", orbit.len()))?;
    ensure(t[1..6].iter().all(|b| orbit.contains(b)), || "Orb(i) misses one of ii..vi".into())?;
    ensure(t[6].is_symmetric() && t[7].is_symmetric(), || "vii/viii not symmetric".into())
}

fn relabeling_isomorphisms() -> Result<(), String> {
    let start = Instant::now();
    let two = enumerate_operations(2).unwrap();
    let mut pairs = 0;
    for a in &two {
        for b in &two {
            if let Some(pi) = a.equivalence_to(b).unwrap() {
                pairs += 1;
                ensure(verify_isomorphism(a, b, &pi).unwrap(), || format!("{a} -> {b} via {pi:?}"))?;
            }
        }
    }
    ensure(pairs == 8 + 2 * 3, || format!("{pairs} equivalent ordered pairs in O_2"))?;
    let orbit: Vec<Operation> = three_element_tables()[0].orbit().into_iter().collect();
    for a in &orbit {
        for b in &orbit {
            let pi = a.equivalence_to(b).unwrap().ok_or("orbit members not equivalent")?;
            ensure(verify_isomorphism(a, b, &pi).unwrap(), || format!("{a} -> {b} via {pi:?}"))?;
        }
    }
    within(start, Duration::from_secs(30), "isomorphism suite")
}

fn finite_field_characters<const P: u64>(a: &Operation) -> usize {
    (0..P.pow(8))
        .filter(|&code| {
            let mut c = code;
            let coeffs = CubicMatrix::from_fn(2, |_| {
                let v = Fp::<P>::new(c % P);
                c /= P;
                v
            });
            is_character(&LinearForm::new(coeffs), a).unwrap()
        })
        .count()
}

fn characters() -> Result<(), String> {
    for m in 2..=3 {
        for a in enumerate_operations(m).unwrap() {
            let found = character_search::<Rational>(&a);
            ensure(found.is_empty(), || format!("{a} has {} characters", found.len()))?;
        }
    }
    let one = character_search::<Rational>(&op(&[[1]]));
    ensure(one.len() == 1, || format!("m = 1 has {} characters", one.len()))?;
    for a in enumerate_operations(2).unwrap() {
        ensure(finite_field_characters::<2>(&a) == 0, || format!("F_2 character for {a}"))?;
        ensure(finite_field_characters::<3>(&a) == 0, || format!("F_3 character for {a}"))?;
    }
    Ok(())
}

fn accompanying_algebra() -> Result<(), String> {
    let mut r = rng(31);
    for m in 1..=3 {
        for a in with_trivial(m) {
            for s in triples(m) {
                for t in triples(m) {
                    let (x, y) = (basis(m, s), basis(m, t));
                    ensure(phi(&x.mul(&y, &a).unwrap()) == phi(&x).mul(&phi(&y)).unwrap(), || {
                        format!("phi not multiplicative on {s:?}, {t:?} for {a}")
                    })?;
                }
            }
        }
        ensure(phi_image_rank(m) == m * m, || format!("phi not onto for m = {m}"))?;
        for _ in 0..50 {
            let mut x = random_cubic(&mut r, m);
            if m > 1 && r_bool(&mut r) {
                for i in 0..m {
                    for j in 0..m {
                        let rest = (1..m).fold(int0(), |acc, n| acc + x[(i, n, j)].clone());
                        x[(i, 0, j)] = -rest;
                    }
                }
            }
            let fiber_sums_vanish = (0..m).all(|i| {
                (0..m).all(|j| (0..m).fold(int0(), |acc, n| acc + x[(i, n, j)].clone()) == int0())
            });
            ensure(in_kernel_ideal(&x) == fiber_sums_vanish, || "kernel membership mismatch".into())?;
            ensure(phi(&x).is_zero() == fiber_sums_vanish, || "phi kernel mismatch".into())?;
        }
    }
    Ok(())
}

fn int0() -> Rational {
    Rational::from_integer(0.into())
}

fn r_bool(r: &mut rand::rngs::StdRng) -> bool {
    use rand::Rng;
    r.gen_bool(0.5)
}

fn zero_divisors() -> Result<(), String> {
    let start = Instant::now();
    let mut r = rng(37);
    for m in 2..=3 {
        let rs = Operation::right_symmetric(m);
        let ls = Operation::left_symmetric(m);
        let (mut singular_seen, mut regular_seen) = (0, 0);
        for trial in 0..120 {
            let mut x = random_cubic(&mut r, m);
            if trial % 4 == 0 {
                // second column of the accompanying matrix := first column
                for i in 0..m {
                    for j in 0..m {
                        x[(i, j, 1)] = x[(i, j, 0)].clone();
                    }
                }
            }
            let singular = x.accompanying_matrix().det().unwrap() == int0();
            if singular {
                singular_seen += 1;
            } else {
                regular_seen += 1;
            }
            let left = left_zero_divisor_witness(&x, &rs).unwrap();
            ensure(left.is_some() == singular, || format!("m = {m}: kernel vs det disagree"))?;
            if let Some(w) = left {
                ensure(!w.is_zero() && x.mul(&w, &rs).unwrap().is_zero(), || "bad witness".into())?;
            }
            let w = left_zero_divisor_witness(&x, &ls).unwrap().ok_or("no left witness for (ls)")?;
            ensure(!w.is_zero() && x.mul(&w, &ls).unwrap().is_zero(), || "bad (ls) witness".into())?;
            let right = right_zero_divisor_witness(&x, &ls).unwrap();
            ensure(right.is_some() == singular, || "right criterion for (ls) fails".into())?;
            if let Some(w) = right {
                ensure(!w.is_zero() && w.mul(&x, &ls).unwrap().is_zero(), || "bad right witness".into())?;
            }
        }
        ensure(singular_seen >= 30 && regular_seen >= 30, || {
            format!("m = {m}: {singular_seen} singular / {regular_seen} regular samples")
        })?;
    }
    within(start, Duration::from_secs(60), "zero-divisor suite")
}

fn subalgebras_and_ideals() -> Result<(), String> {
    for m in 2..=3 {
        for a in enumerate_operations(m).unwrap() {
            let invariant: Vec<Subset> =
                a.invariant_subsets().unwrap().into_iter().filter(|s| !s.is_empty()).collect();
            for j in &invariant {
                for i in 0..m {
                    for k in 0..m {
                        let span = subalgebra_span(&a, j, i, k).unwrap();
                        ensure(is_subalgebra(&span, &a).unwrap(), || format!("{a}: {j} at ({i},{k})"))?;
                    }
                }
            }
            ensure(cubal::suite::check_theorem_4(&a).unwrap(), || format!("block identities fail for {a}"))?;
            ensure(is_ideal(&image_ideal_span(&a), &a).unwrap(), || format!("image ideal fails for {a}"))?;
            for seed in 0..m {
                let closed = a.closure(&Subset::singleton(m, seed).unwrap()).unwrap();
                let span = subalgebra_span(&a, &closed, 0, m - 1).unwrap();
                ensure(is_subalgebra(&span, &a).unwrap(), || format!("closure span fails for {a}"))?;
            }
        }
    }
    let count = count_subalgebras_from_invariants(&semilattice_three()).unwrap();
    ensure(count.per_block == 7, || format!("{} nonempty invariant subsets", count.per_block))?;
    let z3 = cyclic_three();
    let cycle = z3.power_sequence(1).unwrap();
    let i_a2 = Subset::from_one_based(3, &[2, 3]).unwrap();
    ensure(
        cycle == cubal::SequenceClass::Periodic { period: 2, cycle: i_a2.clone() },
        || format!("I_a(2) classified as {cycle:?}"),
    )?;
    let witness = z3.invariant_violation(&i_a2).unwrap();
    ensure(
        matches!(witness, Some((1, 2)) | Some((2, 1))) && z3.get(1, 2) == 0,
        || format!("witness {witness:?}"),
    )
}

fn plenary_powers() -> Result<(), String> {
    for m in 2..=3 {
        for a in enumerate_operations(m).unwrap() {
            for i in 0..m {
                let sequence = unroll(&a, i, 2 * m);
                for j in 0..m {
                    let mut middles = Vec::new();
                    let mut power = basis(m, (j, i, j));
                    for (n, &i_n) in sequence.iter().enumerate() {
                        ensure(power == basis(m, (j, i_n, j)), || format!("{a}: E_jij^[{n}]"))?;
                        let support: Vec<_> = power.support().map(|(t, _)| t).collect();
                        middles.push(support[0].1);
                        power = power.mul(&power, &a).unwrap();
                    }
                    let class = classify_trajectory(m, i, &middles);
                    ensure(class == a.power_sequence(i).unwrap(), || {
                        format!("{a}: i = {i}, plenary class {class:?}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn oracle_equivalence() -> Result<(), String> {
    for m in 1..=3 {
        ensure(enumerate_operations(m).unwrap() == naive_enumerate(m), || format!("m = {m} differs"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, bool, Check); 11] = [
        ("census counts tau(1..4), < 10 s", true, census_counts),
        ("stretch: tau(5) = 183732, < 5 min", false, census_count_five),
        ("m=2 census, orbits and symmetric operations", true, two_element_census),
        ("m=3 orbit of table i and symmetric vii, viii", true, three_element_examples),
        ("relabeling isomorphisms, < 30 s", true, relabeling_isomorphisms),
        ("no characters for m >= 2, one for m = 1, finite-field oracle", true, characters),
        ("phi homomorphism, onto, kernel membership", true, accompanying_algebra),
        ("zero-divisor criteria, < 60 s", true, zero_divisors),
        ("subalgebras, ideals, block identities, examples", true, subalgebras_and_ideals),
        ("plenary powers and sequence classes", true, plenary_powers),
        ("backtracking equals full scan for m <= 3", true, oracle_equivalence),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, (name, blocking, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS  AC{:02} {name} ({elapsed:.2}s)", n + 1),
            Err(why) => {
                let tag = if *blocking { "FAIL" } else { "MISS" };
                println!("{tag}  AC{:02} {name} ({elapsed:.2}s): {why}", n + 1);
                if *blocking {
                    failed += 1;
                }
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all blocking criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} blocking criteria failed");
        ExitCode::FAILURE
    }
}
