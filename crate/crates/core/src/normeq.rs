//! Solving the relative norm equation x * conj(x) = mu for x in Q(zeta_n),
//! with mu in the real subfield.
//!
//! The cascade is deliberately desk-scale: detect rational squares, search
//! for a real square root, then run a bounded coefficient search. Failure is
//! reported honestly as a solver limitation; when mu arises from the
//! realification pipeline a solution always exists in the ambient field.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::cyclotomic::{divisors, euler_phi, Cyclotomic};
use crate::error::{Error, Result};
use crate::matrix::CycMatrix;

/// How a norm-equation solution was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormStrategy {
    /// mu was the square of a rational.
    RationalSquare,
    /// A square root of mu was found in the real subfield.
    RealSqrtSearch,
    /// General bounded coefficient search over Q(zeta_n).
    BoundedSearch,
    /// Closed form mu^-k * det(P) for odd degree d = 2k + 1.
    OddDegreeClosedForm,
}

impl NormStrategy {
    /// Stable name used in serialized diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            NormStrategy::RationalSquare => "rational_square",
            NormStrategy::RealSqrtSearch => "real_sqrt_search",
            NormStrategy::BoundedSearch => "bounded_search",
            NormStrategy::OddDegreeClosedForm => "odd_degree_closed_form",
        }
    }
}

/// A verified solution of x * conj(x) = mu.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormSolution {
    pub x: Cyclotomic,
    pub strategy: NormStrategy,
}

/// Default coefficient bound for the searches.
pub const DEFAULT_NORM_BOUND: u32 = 4;

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Odometer over coefficient vectors in [-bound, bound]^len, in ascending
/// lexicographic order with the first coordinate most significant.
struct CoeffBox {
    coords: Vec<i64>,
    bound: i64,
    done: bool,
}

impl CoeffBox {
    fn new(len: usize, bound: u32) -> Self {
        CoeffBox {
            coords: vec![-(bound as i64); len],
            bound: bound as i64,
            done: len == 0,
        }
    }
}

impl Iterator for CoeffBox {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let current = self.coords.clone();
        let mut i = self.coords.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.coords[i] < self.bound {
                self.coords[i] += 1;
                for c in &mut self.coords[i + 1..] {
                    *c = -self.bound;
                }
                break;
            }
        }
        Some(current)
    }
}

/// Enumerates [-bound, bound]^len by shells of increasing max-coefficient
/// size, lexicographic within each shell. Small-height candidates come
/// first, which keeps the search tractable at larger field degrees; the
/// order is still fixed, so searches stay deterministic.
fn coeff_shells(len: usize, bound: u32) -> impl Iterator<Item = Vec<i64>> {
    (0..=bound).flat_map(move |shell| {
        CoeffBox::new(len, shell)
            .filter(move |c| shell == 0 || c.iter().any(|a| a.unsigned_abs() == shell as u64))
    })
}

fn combine(
    basis: &[Cyclotomic],
    coords: &[i64],
    denom: u64,
    conductor: u64,
) -> Result<Cyclotomic> {
    let mut acc = Cyclotomic::zero(conductor);
    for (b, &a) in basis.iter().zip(coords) {
        if a == 0 {
            continue;
        }
        acc = acc.checked_add(&b.scale(&BigRational::from_integer(BigInt::from(a))))?;
    }
    Ok(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(denom))))
}

/// Solves x * conj(x) = mu for x in Q(zeta_n) by a cascade of exact
/// strategies, returning the first solution in a fixed enumeration order.
///
/// `mu` must be conjugation-fixed and nonzero; its conductor must divide `n`.
pub fn solve_norm(mu: &Cyclotomic, n: u64, bound: u32) -> Result<NormSolution> {
    let mu = mu.lift_conductor(n)?;
    if !mu.is_real() {
        return Err(Error::MuNotReal {
            mu: mu.to_string(),
        });
    }
    if mu.is_zero() {
        return Err(Error::InternalInvariantViolation(
            "norm equation with mu = 0".into(),
        ));
    }

    // (a) mu the square of a rational.
    if let Some(r) = mu.as_rational() {
        if let Some(root) = rational_sqrt(&r) {
            return Ok(NormSolution {
                x: Cyclotomic::from_rational(n, root),
                strategy: NormStrategy::RationalSquare,
            });
        }
    }

    let phi = euler_phi(n);
    let denoms = divisors(2 * n);

    // (b) a square root of mu in the real subfield: y real with y^2 = mu.
    let real_rank = if n <= 2 { 1 } else { phi / 2 };
    let mut real_basis = vec![Cyclotomic::one(n)];
    for j in 1..real_rank {
        real_basis.push(
            Cyclotomic::zeta_pow(n, j as i64)
                .checked_add(&Cyclotomic::zeta_pow(n, -(j as i64)))?,
        );
    }
    for &d in &denoms {
        for coords in coeff_shells(real_rank, bound) {
            if coords.iter().all(|&a| a == 0) {
                continue;
            }
            let y = combine(&real_basis, &coords, d, n)?;
            if y.checked_mul(&y)? == mu {
                return Ok(NormSolution {
                    x: y,
                    strategy: NormStrategy::RealSqrtSearch,
                });
            }
        }
    }

    // (c) bounded search over x = (sum a_i zeta^i) / D. Each candidate is
    // tested directly, and also as a norm factor: if mu * N(y) is the square
    // of a rational r, then x = r * y / N(y) solves the equation.
    let power_basis: Vec<Cyclotomic> = (0..phi)
        .map(|i| Cyclotomic::zeta_pow(n, i as i64))
        .collect();
    for &d in &denoms {
        for coords in coeff_shells(phi, bound) {
            if coords.iter().all(|&a| a == 0) {
                continue;
            }
            let y = combine(&power_basis, &coords, d, n)?;
            let nrm = y.checked_mul(&y.conj())?;
            if nrm == mu {
                return Ok(NormSolution {
                    x: y,
                    strategy: NormStrategy::BoundedSearch,
                });
            }
            if let Some(q) = mu.checked_mul(&nrm)?.as_rational() {
                if let Some(r) = rational_sqrt(&q) {
                    if r.is_zero() {
                        continue;
                    }
                    let x = y.checked_mul(&nrm.inv()?)?.scale(&r);
                    if x.checked_mul(&x.conj())? != mu {
                        return Err(Error::InternalInvariantViolation(
                            "norm factor reduction produced a wrong solution".into(),
                        ));
                    }
                    return Ok(NormSolution {
                        x,
                        strategy: NormStrategy::BoundedSearch,
                    });
                }
            }
        }
    }

    Err(Error::NormEquationNotSolved {
        mu: mu.to_string(),
        conductor: n,
        bound,
    })
}

/// Closed-form solution for odd degree: if P * conj(P) = mu I with
/// d = 2k + 1, then x = mu^-k * det(P) satisfies x * conj(x) = mu.
pub fn solve_norm_odd_degree(p: &CycMatrix, mu: &Cyclotomic) -> Result<NormSolution> {
    let d = p.rows();
    if !p.is_square() {
        return Err(Error::NotSquare {
            rows: p.rows(),
            cols: p.cols(),
        });
    }
    assert!(d % 2 == 1, "closed form requires odd degree");
    let product = p.mul(&p.conj_entries())?;
    match product.as_scalar() {
        Some(s) if s == *mu => {}
        _ => return Err(Error::NotScalar),
    }
    if !mu.is_real() {
        return Err(Error::MuNotReal {
            mu: mu.to_string(),
        });
    }
    let k = (d as i64 - 1) / 2;
    let x = mu.pow(-k)?.checked_mul(&p.det()?)?;
    if x.checked_mul(&x.conj())? != *mu {
        return Err(Error::InternalInvariantViolation(
            "odd-degree closed form failed its defining identity".into(),
        ));
    }
    Ok(NormSolution {
        x,
        strategy: NormStrategy::OddDegreeClosedForm,
    })
}
