//! Exact arithmetic in the cyclotomic field Q(zeta_n) and its maximal real
//! subfield.
//!
//! Elements are stored in the power basis {zeta^i : 0 <= i < phi(n)} with
//! rational coefficients, reduced modulo the n-th cyclotomic polynomial at
//! construction time. The representation is canonical: two elements are equal
//! iff their conductors and coefficient vectors are identical. Complex
//! conjugation is the ring automorphism zeta -> zeta^(n-1); the real subfield
//! is exactly its fixed set.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Euler's totient of `n`.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn euler_phi(n: u64) -> usize {
    assert!(n >= 1, "euler_phi: n must be positive");
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

/// All divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

// Integer polynomials are coefficient vectors indexed by degree, monic for
// every cyclotomic polynomial, with no trailing zeros.

fn int_poly_div_exact(dividend: &[BigInt], divisor: &[BigInt]) -> Vec<BigInt> {
    let dn = dividend.len();
    let dv = divisor.len();
    assert!(dv >= 1 && dn >= dv);
    assert!(divisor[dv - 1].is_one(), "divisor must be monic");
    let mut rem = dividend.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dv + 1];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dv - 1].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for j in 0..dv {
            rem[i + j] -= &c * &divisor[j];
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quot
}

fn phi_poly(n: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        // (x^n - 1) divided by Phi_d for every proper divisor d of n.
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let pd = phi_poly(d);
            num = int_poly_div_exact(&num, &pd);
        }
        num
    };
    debug_assert_eq!(poly.len(), euler_phi(n) + 1);
    let arc = Arc::new(poly);
    cache
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| arc.clone())
        .clone()
}

/// Coefficients of the n-th cyclotomic polynomial, ascending degree order.
/// The result is monic of degree phi(n).
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_polynomial: n must be positive");
    phi_poly(n).as_ref().clone()
}

/// An exact element of Q(zeta_n), reduced into the power basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    /// The zero element of Q(zeta_n).
    pub fn zero(n: u64) -> Self {
        Cyclotomic {
            conductor: n,
            coeffs: vec![BigRational::zero(); euler_phi(n)],
        }
    }

    /// The unit element of Q(zeta_n).
    pub fn one(n: u64) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    /// A rational constant as an element of Q(zeta_n).
    pub fn from_rational(n: u64, r: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); euler_phi(n)];
        coeffs[0] = r;
        Cyclotomic {
            conductor: n,
            coeffs,
        }
    }

    /// An integer constant as an element of Q(zeta_n).
    pub fn from_integer(n: u64, value: i64) -> Self {
        Self::from_rational(n, BigRational::from_integer(BigInt::from(value)))
    }

    /// The primitive root of unity zeta_n.
    pub fn zeta(n: u64) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// zeta_n^k for any integer exponent (negative exponents wrap mod n).
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::from_coeffs(n, poly)
    }

    /// Builds an element from an arbitrary-degree coefficient vector,
    /// reducing it modulo the n-th cyclotomic polynomial.
    pub fn from_coeffs(n: u64, coeffs: Vec<BigRational>) -> Self {
        let phi = phi_poly(n);
        let m = phi.len() - 1;
        let mut c = coeffs;
        while c.len() > m {
            let lead = c.pop().expect("nonempty");
            if lead.is_zero() {
                continue;
            }
            let base = c.len() - m;
            for (j, pj) in phi.iter().take(m).enumerate() {
                let delta = &lead * BigRational::from_integer(pj.clone());
                c[base + j] -= delta;
            }
        }
        c.resize(m, BigRational::zero());
        Cyclotomic {
            conductor: n,
            coeffs: c,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Coefficients over the power basis; length is always phi(n).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Returns the value as a rational if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn ensure_same_conductor(&self, other: &Cyclotomic) -> Result<()> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch {
                left: self.conductor,
                right: other.conductor,
            });
        }
        Ok(())
    }

    /// Exact sum; fails on conductor mismatch.
    pub fn checked_add(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.ensure_same_conductor(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs,
        })
    }

    /// Exact difference; fails on conductor mismatch.
    pub fn checked_sub(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.ensure_same_conductor(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs,
        })
    }

    /// Exact product, reduced modulo Phi_n; fails on conductor mismatch.
    pub fn checked_mul(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.ensure_same_conductor(other)?;
        let m = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * m - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        Ok(Cyclotomic::from_coeffs(self.conductor, prod))
    }

    /// Additive inverse.
    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, r: &BigRational) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_n in Q[x].
    pub fn inv(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero {
                conductor: self.conductor,
            });
        }
        let phi: Vec<BigRational> = phi_poly(self.conductor)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // Track r = t * a (mod Phi_n); on termination r0 is a nonzero
        // constant because Phi_n is irreducible and a != 0 has lower degree.
        let mut r0 = poly_trim(phi);
        let mut r1 = poly_trim(self.coeffs.clone());
        let mut t0: Vec<BigRational> = vec![];
        let mut t1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, rem) = poly_divrem(&r0, &r1);
            let qt1 = poly_mul(&q, &t1);
            let t2 = poly_sub(&t0, &qt1);
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = t2;
        }
        debug_assert_eq!(r0.len(), 1, "gcd with irreducible Phi_n is constant");
        let g = r0[0].clone();
        let u: Vec<BigRational> = t0.iter().map(|c| c / &g).collect();
        Ok(Cyclotomic::from_coeffs(self.conductor, u))
    }

    /// Exact quotient self / other.
    pub fn checked_div(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.checked_mul(&other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Cyclotomic> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Cyclotomic::one(self.conductor);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            sq = sq.checked_mul(&sq)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Complex conjugation: the automorphism zeta -> zeta^(n-1). Involutive,
    /// and fixes exactly the elements of the real subfield.
    pub fn conj(&self) -> Cyclotomic {
        let n = self.conductor;
        let mut poly = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as u64 * (n - 1)) % n;
            poly[e as usize] += c;
        }
        Cyclotomic::from_coeffs(n, poly)
    }

    /// Membership test for the real subfield: true iff conj(a) == a.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Re-expresses the element in Q(zeta_m) for a multiple m of the
    /// conductor, via zeta_n = zeta_m^(m/n).
    pub fn lift_conductor(&self, target: u64) -> Result<Cyclotomic> {
        if target == 0 || target % self.conductor != 0 {
            return Err(Error::NotDivisible {
                from: self.conductor,
                to: target,
            });
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let ratio = (target / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * ratio + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * ratio] = c.clone();
            }
        }
        Ok(Cyclotomic::from_coeffs(target, poly))
    }

    /// Floating-point embedding at zeta_n = exp(2*pi*i/n), as (re, im).
    ///
    /// Debug/rendering aid only (f64 precision); never used in decisions.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.numer().to_f64().unwrap_or(f64::NAN)
                / c.denom().to_f64().unwrap_or(f64::NAN);
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / n;
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = if first || !c.is_negative() {
                c.clone()
            } else {
                -c.clone()
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "z{}^{}", self.conductor, i)?;
            } else {
                write!(f, "{mag}*z{}^{}", self.conductor, i)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic(n={}, {})", self.conductor, self)
    }
}

// Rational polynomial helpers for the extended Euclidean algorithm.
// Vectors are indexed by degree with no trailing zeros; empty means zero.

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); len];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    poly_trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut quot = vec![BigRational::zero(); a.len() - b.len() + 1];
    let lead = b.last().expect("nonempty").clone();
    for i in (0..quot.len()).rev() {
        let c = &rem[i + b.len() - 1] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let delta = &c * bj;
            rem[i + j] -= delta;
        }
    }
    (poly_trim(quot), poly_trim(rem))
}
