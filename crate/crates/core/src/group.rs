//! Matrix-group layer: closure from generators, trace characters, character
//! inner products, irreducibility, the Frobenius-Schur indicator, and the
//! built-in example representations.
//!
//! The group is identified with its matrix image: every sum below runs over
//! the deduplicated closure of the generators, not over an abstract group.

use std::collections::HashSet;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::matrix::CycMatrix;

/// Default cap on the number of closure elements.
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

/// A representation given by invertible generator matrices over Q(zeta_n).
#[derive(Clone, Debug)]
pub struct Representation {
    conductor: u64,
    degree: usize,
    generators: Vec<CycMatrix>,
    closure_cap: usize,
}

impl Representation {
    /// Validates and wraps a generator list. Generators must be square of one
    /// shared degree and conductor, and invertible.
    pub fn new(
        conductor: u64,
        degree: usize,
        generators: Vec<CycMatrix>,
        closure_cap: Option<usize>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ParseError("degree must be at least 1".into()));
        }
        for g in &generators {
            if g.rows() != degree || g.cols() != degree {
                return Err(Error::DimensionMismatch {
                    left_rows: degree,
                    left_cols: degree,
                    right_rows: g.rows(),
                    right_cols: g.cols(),
                });
            }
            if g.conductor() != conductor {
                return Err(Error::ConductorMismatch {
                    left: conductor,
                    right: g.conductor(),
                });
            }
            if g.det()?.is_zero() {
                return Err(Error::Singular);
            }
        }
        Ok(Representation {
            conductor,
            degree,
            generators,
            closure_cap: closure_cap.unwrap_or(DEFAULT_CLOSURE_CAP),
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[CycMatrix] {
        &self.generators
    }

    pub fn closure_cap(&self) -> usize {
        self.closure_cap
    }

    /// Returns a copy with a different closure cap.
    pub fn with_closure_cap(&self, cap: usize) -> Self {
        let mut r = self.clone();
        r.closure_cap = cap;
        r
    }

    /// Breadth-first closure of the generators under multiplication,
    /// starting from the identity. Deterministic insertion order.
    pub fn closure(&self) -> Result<GroupClosure> {
        let identity = CycMatrix::identity(self.conductor, self.degree);
        let mut elements = vec![identity.clone()];
        let mut seen: HashSet<CycMatrix> = HashSet::from([identity]);
        let mut next = 0;
        while next < elements.len() {
            let current = elements[next].clone();
            next += 1;
            for g in &self.generators {
                let product = current.mul(g)?;
                if seen.insert(product.clone()) {
                    if elements.len() >= self.closure_cap {
                        return Err(Error::ClosureCapExceeded {
                            cap: self.closure_cap,
                        });
                    }
                    elements.push(product);
                }
            }
        }
        Ok(GroupClosure {
            conductor: self.conductor,
            degree: self.degree,
            elements,
        })
    }
}

/// The full matrix image of a representation: a finite set closed under
/// multiplication and inverse, containing the identity.
#[derive(Clone, Debug)]
pub struct GroupClosure {
    conductor: u64,
    degree: usize,
    elements: Vec<CycMatrix>,
}

impl GroupClosure {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }
}

/// The trace character: one value per closure element, in closure order.
pub fn character(closure: &GroupClosure) -> Result<Vec<Cyclotomic>> {
    closure.elements.iter().map(|g| g.trace()).collect()
}

/// The scalar product of two characters over the same closure,
/// (1/|G|) * sum over g of chi1(g) * conj(chi2(g)).
pub fn char_inner(chi1: &[Cyclotomic], chi2: &[Cyclotomic]) -> Result<Cyclotomic> {
    if chi1.len() != chi2.len() || chi1.is_empty() {
        return Err(Error::DimensionMismatch {
            left_rows: chi1.len(),
            left_cols: 1,
            right_rows: chi2.len(),
            right_cols: 1,
        });
    }
    let n = chi1[0].conductor();
    let mut sum = Cyclotomic::zero(n);
    for (a, b) in chi1.iter().zip(chi2) {
        sum = sum.checked_add(&a.checked_mul(&b.conj())?)?;
    }
    let order = BigRational::new(BigInt::one(), BigInt::from(chi1.len()));
    Ok(sum.scale(&order))
}

/// True iff the trace character chi satisfies [chi, chi] = 1.
pub fn is_irreducible(rep: &Representation) -> Result<bool> {
    let closure = rep.closure()?;
    let chi = character(&closure)?;
    Ok(char_inner(&chi, &chi)?.is_one())
}

/// The Frobenius-Schur indicator (1/|G|) * sum over g of chi(g^2).
///
/// Requires an irreducible input; the result is exactly -1, 0, or 1
/// (1 = real type, -1 = quaternionic type, 0 = character not real-valued).
pub fn frobenius_schur(rep: &Representation, closure: &GroupClosure) -> Result<i8> {
    if rep.conductor != closure.conductor || rep.degree != closure.degree {
        return Err(Error::ConductorMismatch {
            left: rep.conductor,
            right: closure.conductor,
        });
    }
    let chi = character(closure)?;
    let inner = char_inner(&chi, &chi)?;
    if !inner.is_one() {
        return Err(Error::NotIrreducible {
            inner: inner.to_string(),
        });
    }
    let mut sum = Cyclotomic::zero(closure.conductor);
    for g in &closure.elements {
        sum = sum.checked_add(&g.mul(g)?.trace()?)?;
    }
    let order = BigRational::new(BigInt::one(), BigInt::from(closure.order()));
    let nu = sum.scale(&order);
    let value = nu.as_rational().ok_or_else(|| {
        Error::InternalInvariantViolation(format!("indicator sum is not rational: {nu}"))
    })?;
    if !value.is_integer() || value.numer().abs() > BigInt::one() {
        return Err(Error::InternalInvariantViolation(format!(
            "indicator {value} outside {{-1, 0, 1}}"
        )));
    }
    Ok(if value.is_zero() {
        0
    } else if value.is_negative() {
        -1
    } else {
        1
    })
}

/// Built-in example representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    /// The 2-dimensional dihedral representation over conductor m:
    /// rotation diag(zeta_m, zeta_m^-1) and the coordinate swap. m >= 3.
    Dihedral(u64),
    /// The 2-dimensional quaternion representation over conductor 4;
    /// the classic indicator -1 witness.
    Quaternion,
    /// The 1-dimensional representation over conductor m sending the
    /// generator to zeta_m^k.
    CyclicLinear(u64, i64),
}

impl Fixture {
    /// Looks a fixture up by name; `m` and `k` are interpreted per fixture.
    pub fn by_name(name: &str, m: Option<u64>, k: Option<i64>) -> Result<Fixture> {
        match name {
            "dihedral" => {
                let m = m.ok_or_else(|| {
                    Error::UnknownFixture("dihedral requires a parameter m".into())
                })?;
                Ok(Fixture::Dihedral(m))
            }
            "quaternion" => Ok(Fixture::Quaternion),
            "cyclic_linear" => {
                let m = m.ok_or_else(|| {
                    Error::UnknownFixture("cyclic_linear requires a parameter m".into())
                })?;
                Ok(Fixture::CyclicLinear(m, k.unwrap_or(1)))
            }
            other => Err(Error::UnknownFixture(other.into())),
        }
    }

    /// Builds the fixture representation.
    pub fn build(&self) -> Result<Representation> {
        match *self {
            Fixture::Dihedral(m) => {
                if m < 3 {
                    return Err(Error::UnknownFixture(format!(
                        "dihedral requires m >= 3, got {m}"
                    )));
                }
                let z = Cyclotomic::zeta(m);
                let zero = Cyclotomic::zero(m);
                let one = Cyclotomic::one(m);
                let rotation = CycMatrix::from_rows(
                    m,
                    vec![
                        vec![z.clone(), zero.clone()],
                        vec![zero.clone(), Cyclotomic::zeta_pow(m, -1)],
                    ],
                )?;
                let reflection = CycMatrix::from_rows(
                    m,
                    vec![
                        vec![zero.clone(), one.clone()],
                        vec![one, zero],
                    ],
                )?;
                Representation::new(m, 2, vec![rotation, reflection], None)
            }
            Fixture::Quaternion => {
                let z = Cyclotomic::zeta(4);
                let zero = Cyclotomic::zero(4);
                let one = Cyclotomic::one(4);
                let gen_i = CycMatrix::from_rows(
                    4,
                    vec![
                        vec![z.clone(), zero.clone()],
                        vec![zero.clone(), z.neg()],
                    ],
                )?;
                let gen_j = CycMatrix::from_rows(
                    4,
                    vec![
                        vec![zero.clone(), one.clone()],
                        vec![one.neg(), zero],
                    ],
                )?;
                Representation::new(4, 2, vec![gen_i, gen_j], None)
            }
            Fixture::CyclicLinear(m, k) => {
                if m == 0 {
                    return Err(Error::UnknownFixture(
                        "cyclic_linear requires m >= 1".into(),
                    ));
                }
                let entry = Cyclotomic::zeta_pow(m, k);
                let g = CycMatrix::new(m, 1, 1, vec![entry])?;
                Representation::new(m, 1, vec![g], None)
            }
        }
    }
}
