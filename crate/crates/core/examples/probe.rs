//! Scratch probe: random round-trip realifications at various degrees,
//! with structured unit-determinant conjugators.

use num::{BigInt, BigRational};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use realcyc_core::cyclotomic::Cyclotomic;
use realcyc_core::group::Representation;
use realcyc_core::matrix::CycMatrix;
use realcyc_core::realify::realify;

fn rotation_reflection_pair(m: u64) -> (u64, Vec<CycMatrix>) {
    let n = num::integer::lcm(4, m);
    let step = (n / m) as i64;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let cos = Cyclotomic::zeta_pow(n, step)
        .checked_add(&Cyclotomic::zeta_pow(n, -step))
        .unwrap()
        .scale(&half);
    let two_i = Cyclotomic::zeta_pow(n, (n / 4) as i64)
        .scale(&BigRational::from_integer(BigInt::from(2)));
    let sin = Cyclotomic::zeta_pow(n, step)
        .checked_sub(&Cyclotomic::zeta_pow(n, -step))
        .unwrap()
        .checked_div(&two_i)
        .unwrap();
    assert!(cos.is_real() && sin.is_real());
    let z = CycMatrix::from_rows(
        n,
        vec![
            vec![cos.clone(), sin.neg()],
            vec![sin.clone(), cos.clone()],
        ],
    )
    .unwrap();
    let r0 = CycMatrix::from_rows(
        n,
        vec![
            vec![Cyclotomic::one(n), Cyclotomic::zero(n)],
            vec![Cyclotomic::zero(n), Cyclotomic::from_integer(n, -1)],
        ],
    )
    .unwrap();
    (n, vec![z, r0])
}

/// T = permutation * diag(roots of unity) * unipotent(upper) * unipotent(lower):
/// invertible with unit determinant, entries generic cyclotomic integers.
fn random_structured(rng: &mut ChaCha8Rng, n: u64, d: usize) -> CycMatrix {
    let mut t = CycMatrix::zero(n, d, d);
    // Permutation.
    let mut perm: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    let mut entries = vec![Cyclotomic::zero(n); d * d];
    for (r, &p) in perm.iter().enumerate() {
        entries[r * d + p] = Cyclotomic::zeta_pow(n, rng.random_range(0..n as i64));
    }
    t = CycMatrix::new(n, d, d, entries).unwrap();
    // Unipotent shears with rational entries.
    for upper in [true, false] {
        let mut ue = CycMatrix::identity(n, d).entries().to_vec();
        for r in 0..d {
            for c in 0..d {
                if (upper && c > r) || (!upper && c < r) {
                    let k = rng.random_range(-1i64..=1);
                    if k != 0 {
                        ue[r * d + c] = Cyclotomic::from_integer(n, k);
                    }
                }
            }
        }
        let u = CycMatrix::new(n, d, d, ue).unwrap();
        t = t.mul(&u).unwrap();
    }
    t
}

fn conjugate_rep(gens: &[CycMatrix], t: &CycMatrix, n: u64, d: usize) -> Representation {
    let t_inv = t.inverse().unwrap();
    let conj: Vec<CycMatrix> = gens
        .iter()
        .map(|g| t_inv.mul(g).unwrap().mul(t).unwrap())
        .collect();
    Representation::new(n, d, conj, None).unwrap()
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for m in [3u64, 4, 6, 8, 12] {
        let (n, gens) = rotation_reflection_pair(m);
        let mut strategies = std::collections::BTreeMap::new();
        let mut failures = 0;
        let trials = 25;
        let start = std::time::Instant::now();
        for trial in 0..trials {
            let t = random_structured(&mut rng, n, 2);
            let rep = conjugate_rep(&gens, &t, n, 2);
            match realify(&rep) {
                Ok(res) => {
                    let s = res
                        .diagnostics
                        .norm_solution
                        .map(|s| s.strategy.name())
                        .unwrap_or("none");
                    *strategies.entry(s).or_insert(0) += 1;
                    for g in &res.generators_real {
                        assert!(g.is_conj_fixed());
                    }
                }
                Err(e) => {
                    failures += 1;
                    println!("  m={m} n={n} trial={trial} FAIL: {e}");
                }
            }
        }
        println!(
            "m={m:2} n={n:2}: {trials} trials, {failures} failures, strategies {strategies:?}, {:?}",
            start.elapsed()
        );
    }

    // Degree 3: standard representation of S4 over rationals, lifted.
    let n = 8u64;
    let s4_a = CycMatrix::from_fn(n, 3, 3, |r, c| {
        let v = [[-1i64, 1, 0], [0, 1, 0], [0, 0, 1]][r][c];
        Cyclotomic::from_integer(n, v)
    })
    .unwrap();
    let s4_b = CycMatrix::from_fn(n, 3, 3, |r, c| {
        let v = [[0i64, 0, -1], [1, 0, -1], [0, 1, -1]][r][c];
        Cyclotomic::from_integer(n, v)
    })
    .unwrap();
    let mut failures = 0;
    let start = std::time::Instant::now();
    for trial in 0..10 {
        let t = random_structured(&mut rng, n, 3);
        let rep = conjugate_rep(&[s4_a.clone(), s4_b.clone()], &t, n, 3);
        match realify(&rep) {
            Ok(res) => {
                assert!(res.generators_real.iter().all(|g| g.is_conj_fixed()));
            }
            Err(e) => {
                failures += 1;
                println!("  d=3 trial={trial} FAIL: {e}");
            }
        }
    }
    println!(
        "d=3 S4 over n=8: 10 trials, {failures} failures, {:?}",
        start.elapsed()
    );

    // Degree 4: tensor of two dihedral pairs over conductor 12.
    let (na, ga) = rotation_reflection_pair(4);
    let (nb, gb) = rotation_reflection_pair(3);
    let n = num::integer::lcm(na, nb);
    let kron = |a: &CycMatrix, b: &CycMatrix| -> CycMatrix {
        CycMatrix::from_fn(n, 4, 4, |r, c| {
            let (ra, rb) = (r / 2, r % 2);
            let (ca, cb) = (c / 2, c % 2);
            a.at(ra, ca)
                .lift_conductor(n)
                .unwrap()
                .checked_mul(&b.at(rb, cb).lift_conductor(n).unwrap())
                .unwrap()
        })
        .unwrap()
    };
    let id2a = CycMatrix::identity(na, 2);
    let id2b = CycMatrix::identity(nb, 2);
    let tensor_gens = vec![
        kron(&ga[0], &id2b),
        kron(&ga[1], &id2b),
        kron(&id2a, &gb[0]),
        kron(&id2a, &gb[1]),
    ];
    let mut failures = 0;
    let start = std::time::Instant::now();
    for trial in 0..6 {
        let t = random_structured(&mut rng, n, 4);
        let rep = conjugate_rep(&tensor_gens, &t, n, 4);
        match realify(&rep) {
            Ok(res) => {
                assert!(res.generators_real.iter().all(|g| g.is_conj_fixed()));
                println!(
                    "  d=4 trial {trial}: ok, strategy {:?}, xi_attempts {}",
                    res.diagnostics.norm_solution.map(|s| s.strategy.name()),
                    res.diagnostics.xi_attempts
                );
            }
            Err(e) => {
                failures += 1;
                println!("  d=4 trial {trial} FAIL: {e}");
            }
        }
    }
    println!(
        "d=4 tensor over n={n}: 6 trials, {failures} failures, {:?}",
        start.elapsed()
    );
}
