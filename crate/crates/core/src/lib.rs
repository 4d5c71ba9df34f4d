//! Exact realification of finite-group matrix representations.
//!
//! Given an irreducible representation of a finite group by matrices over a
//! cyclotomic field Q(zeta_n), realizable over the reals, this crate computes
//! an explicit change of basis Q such that every conjugated matrix has all
//! entries in the maximal real subfield E = Q(zeta_n) with conjugation fixed.
//! All arithmetic is exact over the rationals; every intermediate identity
//! the construction relies on is re-checked at runtime.

pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod json;
pub mod matrix;
pub mod normeq;
pub mod realify;

pub use cyclotomic::{cyclotomic_polynomial, divisors, euler_phi, Cyclotomic};
pub use error::{Error, Result};
pub use group::{
    char_inner, character, frobenius_schur, is_irreducible, Fixture, GroupClosure,
    Representation, DEFAULT_CLOSURE_CAP,
};
pub use matrix::CycMatrix;
pub use normeq::{solve_norm, solve_norm_odd_degree, NormSolution, NormStrategy, DEFAULT_NORM_BOUND};
pub use realify::{
    build_q, compute_intertwiner, compute_mu, find_xi, find_xi_seeded, invariant_bilinear,
    invariant_bilinear_kernel, invariant_hermitian, normalize_intertwiner, realify, realify_with,
    verify_realization, Diagnostics, GeneratorCheck, RealifyOptions, RealizationResult, XiSearch,
    XiStrategy,
};
