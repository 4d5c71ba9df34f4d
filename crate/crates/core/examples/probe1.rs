//! Single-trial stage timing probe.

use num::{BigInt, BigRational};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use realcyc_core::cyclotomic::Cyclotomic;
use realcyc_core::group::{character, char_inner, frobenius_schur, Representation};
use realcyc_core::matrix::CycMatrix;
use realcyc_core::normeq::solve_norm;
use realcyc_core::realify::{
    build_q, compute_intertwiner, compute_mu, find_xi, invariant_bilinear, invariant_hermitian,
    normalize_intertwiner,
};
use std::time::Instant;

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
    let z = CycMatrix::from_rows(
        n,
        vec![vec![cos.clone(), sin.neg()], vec![sin.clone(), cos.clone()]],
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

fn random_structured(rng: &mut ChaCha8Rng, n: u64, d: usize) -> CycMatrix {
    let mut perm: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    let mut entries = vec![Cyclotomic::zero(n); d * d];
    for (r, &p) in perm.iter().enumerate() {
        entries[r * d + p] = Cyclotomic::zeta_pow(n, rng.random_range(0..n as i64));
    }
    let mut t = CycMatrix::new(n, d, d, entries).unwrap();
    for upper in [true, false] {
        let mut ue = CycMatrix::identity(n, d).entries().to_vec();
        for r in 0..d {
            for c in 0..d {
                if (upper && c > r) || (!upper && c < r) {
                    let k = rng.random_range(-1i64..=1);
                    let pow = rng.random_range(0..n as i64);
                    if k != 0 {
                        ue[r * d + c] = Cyclotomic::zeta_pow(n, pow)
                            .scale(&BigRational::from_integer(BigInt::from(k)));
                    }
                }
            }
        }
        let u = CycMatrix::new(n, d, d, ue).unwrap();
        t = t.mul(&u).unwrap();
    }
    t
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (n, gens) = rotation_reflection_pair(3);
    println!("n = {n}");
    let t = random_structured(&mut rng, n, 2);
    println!("T = {t:?}");
    let t_inv = t.inverse().unwrap();
    let conj: Vec<CycMatrix> = gens
        .iter()
        .map(|g| t_inv.mul(g).unwrap().mul(&t).unwrap())
        .collect();
    let rep = Representation::new(n, 2, conj, None).unwrap();

    let s = Instant::now();
    let closure = rep.closure().unwrap();
    println!("closure: order {} in {:?}", closure.order(), s.elapsed());

    let s = Instant::now();
    let chi = character(&closure).unwrap();
    let inner = char_inner(&chi, &chi).unwrap();
    println!("[chi,chi] = {inner} in {:?}", s.elapsed());

    let s = Instant::now();
    let nu2 = frobenius_schur(&rep, &closure).unwrap();
    println!("nu2 = {nu2} in {:?}", s.elapsed());

    let s = Instant::now();
    let m = invariant_bilinear(&rep, &closure).unwrap();
    println!("M in {:?}: {m:?}", s.elapsed());

    let s = Instant::now();
    let sigma = invariant_hermitian(&rep, &closure).unwrap();
    println!("Sigma in {:?}: {sigma:?}", s.elapsed());

    let s = Instant::now();
    let p = compute_intertwiner(&m, &sigma, &rep).unwrap();
    println!("P in {:?}: {p:?}", s.elapsed());

    let s = Instant::now();
    let mu = compute_mu(&p).unwrap();
    println!("mu in {:?}: {mu}", s.elapsed());

    let s = Instant::now();
    let result = solve_norm(&mu, n, 4);
    println!("solve_norm in {:?}: {result:?}", s.elapsed());

    if let Ok(sol) = result {
        let s = Instant::now();
        let (p_prime, _) = normalize_intertwiner(&p, &mu, 4).unwrap();
        let search = find_xi(&p_prime, n).unwrap();
        let q = build_q(&p_prime, &search.xi).unwrap();
        let q_inv = q.inverse().unwrap();
        for g in rep.generators() {
            let c = q_inv.mul(g).unwrap().mul(&q).unwrap();
            assert!(c.is_conj_fixed());
        }
        println!("rest in {:?}, x = {}", s.elapsed(), sol.x);
    }
}
