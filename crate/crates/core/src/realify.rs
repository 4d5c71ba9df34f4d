//! The realification pipeline: from an irreducible representation over
//! Q(zeta_n) with real-type character to an equivalent representation whose
//! matrices all have conjugation-fixed entries.
//!
//! Stages: group closure, irreducibility and indicator checks, the invariant
//! bilinear form M and Hermitian form Sigma, the intertwiner P = Sigma^-1 M
//! with P rho(g) = conj(rho(g)) P, its scalar mu with P conj(P) = mu I,
//! normalization to P' conj(P') = I via the norm equation, selection of xi
//! with det(conj(xi) conj(P') + xi I) != 0, and conjugation by the resulting
//! Q. Every identity the construction relies on is re-checked exactly; a
//! failed check is a bug, never a numerical artifact.

use num::{BigInt, BigRational, One};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{character, char_inner, frobenius_schur, GroupClosure, Representation};
use crate::matrix::CycMatrix;
use crate::normeq::{solve_norm, solve_norm_odd_degree, NormSolution, DEFAULT_NORM_BOUND};

/// How the conjugation-twisting scalar xi is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiStrategy {
    /// The fixed candidate list 1, zeta_n, 1 + zeta_n, 1 + 2 zeta_n, ...
    Deterministic,
    /// Random small candidates from a seeded generator; for experimentation.
    Seeded(u64),
}

/// Tunable knobs for the pipeline.
#[derive(Clone, Debug)]
pub struct RealifyOptions {
    /// Coefficient bound handed to the norm-equation search.
    pub norm_bound: u32,
    /// Overrides the representation's closure cap when set.
    pub closure_cap: Option<usize>,
    /// xi selection strategy.
    pub xi: XiStrategy,
    /// Compute the invariant bilinear form by a kernel solve over the
    /// stacked generator constraints instead of group averaging.
    pub kernel_bilinear: bool,
}

impl Default for RealifyOptions {
    fn default() -> Self {
        RealifyOptions {
            norm_bound: DEFAULT_NORM_BOUND,
            closure_cap: None,
            xi: XiStrategy::Deterministic,
            kernel_bilinear: false,
        }
    }
}

/// Outcome of the xi search.
#[derive(Clone, Debug)]
pub struct XiSearch {
    pub xi: Cyclotomic,
    /// Number of candidates actually tested (distinct ratios only).
    pub attempts: u32,
    /// Candidates tested and rejected, in order.
    pub rejected: Vec<Cyclotomic>,
}

/// Everything the pipeline computed along the way. Fields are absent on the
/// short-circuit paths (conductor <= 2, degree 1) that skip the stage.
#[derive(Clone, Debug, Default)]
pub struct Diagnostics {
    pub nu2: Option<i8>,
    pub bilinear_form: Option<CycMatrix>,
    pub hermitian_form: Option<CycMatrix>,
    /// The intertwiner P = Sigma^-1 M before normalization.
    pub intertwiner: Option<CycMatrix>,
    pub mu: Option<Cyclotomic>,
    pub norm_solution: Option<NormSolution>,
    pub xi: Option<Cyclotomic>,
    pub xi_attempts: u32,
    pub xi_rejected: Vec<Cyclotomic>,
    pub group_order: Option<usize>,
}

/// The transformation Q together with the conjugated generators and full
/// diagnostics.
#[derive(Clone, Debug)]
pub struct RealizationResult {
    pub q: CycMatrix,
    pub generators_real: Vec<CycMatrix>,
    pub diagnostics: Diagnostics,
}

// Seed order: identity, unit diagonals, symmetric pairs, antisymmetric
// pairs. The antisymmetric tail is what reaches the invariant form of a
// quaternionic-type input.
fn seed_matrices(conductor: u64, d: usize) -> Vec<CycMatrix> {
    let one = Cyclotomic::one(conductor);
    let make = |cells: &[(usize, usize, Cyclotomic)]| {
        let mut entries = vec![Cyclotomic::zero(conductor); d * d];
        for (r, c, v) in cells {
            entries[r * d + c] = v.clone();
        }
        CycMatrix::new(conductor, d, d, entries).expect("consistent seed")
    };
    let mut seeds = vec![CycMatrix::identity(conductor, d)];
    for j in 0..d {
        seeds.push(make(&[(j, j, one.clone())]));
    }
    for j in 0..d {
        for k in j + 1..d {
            seeds.push(make(&[(j, k, one.clone()), (k, j, one.clone())]));
        }
    }
    for j in 0..d {
        for k in j + 1..d {
            seeds.push(make(&[(j, k, one.clone()), (k, j, one.neg())]));
        }
    }
    seeds
}

/// A nonzero matrix M with rho(g)^T M rho(g) = M for every group element,
/// found by averaging seed matrices over the closure. Symmetric for
/// indicator 1, antisymmetric for indicator -1; fails with `NotRealValued`
/// when no invariant form exists (indicator 0).
pub fn invariant_bilinear(rep: &Representation, closure: &GroupClosure) -> Result<CycMatrix> {
    let d = rep.degree();
    let order = BigRational::new(BigInt::one(), BigInt::from(closure.order()));
    for seed in seed_matrices(rep.conductor(), d) {
        let mut sum = CycMatrix::zero(rep.conductor(), d, d);
        for g in closure.elements() {
            let term = g.transpose().mul(&seed)?.mul(g)?;
            sum = sum.add(&term)?;
        }
        let m = sum.scale_rational(&order);
        if m.entries().iter().all(|e| e.is_zero()) {
            continue;
        }
        // Invariance under the generators implies invariance under the
        // whole group; re-check the defining relation exactly.
        for g in rep.generators() {
            if g.transpose().mul(&m)?.mul(g)? != m {
                return Err(Error::InternalInvariantViolation(
                    "averaged bilinear form is not invariant".into(),
                ));
            }
        }
        if m.det()?.is_zero() {
            return Err(Error::InternalInvariantViolation(
                "invariant bilinear form is singular, contradicting irreducibility".into(),
            ));
        }
        return Ok(m);
    }
    Err(Error::NotRealValued)
}

/// Kernel-solve alternative to `invariant_bilinear`: stacks the linear
/// constraints g^T M g - M = 0 over all generators and extracts the
/// one-dimensional solution space.
pub fn invariant_bilinear_kernel(rep: &Representation) -> Result<CycMatrix> {
    let d = rep.degree();
    let n = rep.conductor();
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    for g in rep.generators() {
        // Constraint (i, j): sum_{k,l} g[k][i] g[l][j] M[k][l] - M[i][j] = 0.
        for i in 0..d {
            for j in 0..d {
                let mut row = Vec::with_capacity(d * d);
                for k in 0..d {
                    for l in 0..d {
                        let mut coeff = g.at(k, i).checked_mul(g.at(l, j))?;
                        if k == i && l == j {
                            coeff = coeff.checked_sub(&Cyclotomic::one(n))?;
                        }
                        row.push(coeff);
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = CycMatrix::from_rows(n, rows)?;
    let basis = system.kernel();
    if basis.is_empty() {
        return Err(Error::NotRealValued);
    }
    if basis.len() != 1 {
        return Err(Error::InternalInvariantViolation(format!(
            "invariant form space has dimension {}, expected 1",
            basis.len()
        )));
    }
    let v = &basis[0];
    let m = CycMatrix::from_fn(n, d, d, |r, c| v.at(r * d + c, 0).clone())?;
    if m.det()?.is_zero() {
        return Err(Error::InternalInvariantViolation(
            "invariant bilinear form is singular, contradicting irreducibility".into(),
        ));
    }
    Ok(m)
}

/// The Hermitian invariant Sigma = sum over all h in the closure of
/// h^T conj(h); positive definite by construction.
pub fn invariant_hermitian(rep: &Representation, closure: &GroupClosure) -> Result<CycMatrix> {
    let d = rep.degree();
    let mut sigma = CycMatrix::zero(rep.conductor(), d, d);
    for h in closure.elements() {
        sigma = sigma.add(&h.transpose().mul(&h.conj_entries())?)?;
    }
    if sigma.conj_entries().transpose() != sigma {
        return Err(Error::InternalInvariantViolation(
            "Hermitian form sum is not Hermitian".into(),
        ));
    }
    for g in rep.generators() {
        if g.transpose().mul(&sigma)?.mul(&g.conj_entries())? != sigma {
            return Err(Error::InternalInvariantViolation(
                "Hermitian form is not invariant".into(),
            ));
        }
    }
    if sigma.det()?.is_zero() {
        return Err(Error::InternalInvariantViolation(
            "Hermitian form is singular".into(),
        ));
    }
    Ok(sigma)
}

/// The intertwiner P = Sigma^-1 M, verified to satisfy
/// P rho(g) = conj(rho(g)) P against every generator.
pub fn compute_intertwiner(
    bilinear: &CycMatrix,
    hermitian: &CycMatrix,
    rep: &Representation,
) -> Result<CycMatrix> {
    let p = hermitian.inverse()?.mul(bilinear)?;
    for (index, g) in rep.generators().iter().enumerate() {
        if p.mul(g)? != g.conj_entries().mul(&p)? {
            return Err(Error::IntertwinerCheckFailed { generator: index });
        }
    }
    Ok(p)
}

/// The scalar mu with P conj(P) = mu I; checks scalarity and that mu is
/// conjugation-fixed.
pub fn compute_mu(p: &CycMatrix) -> Result<Cyclotomic> {
    let product = p.mul(&p.conj_entries())?;
    let mu = product.as_scalar().ok_or(Error::NotScalar)?;
    if !mu.is_real() {
        return Err(Error::MuNotReal {
            mu: mu.to_string(),
        });
    }
    Ok(mu)
}

/// Scales P by the inverse of a solution of x conj(x) = mu so that
/// P' conj(P') = I. Odd degree uses the closed form mu^-k det(P); even
/// degree runs the norm-equation cascade.
pub fn normalize_intertwiner(
    p: &CycMatrix,
    mu: &Cyclotomic,
    bound: u32,
) -> Result<(CycMatrix, NormSolution)> {
    let d = p.rows();
    let solution = if d % 2 == 1 {
        solve_norm_odd_degree(p, mu)?
    } else {
        solve_norm(mu, p.conductor(), bound)?
    };
    let p_prime = p.scale(&solution.x.inv()?)?;
    if p_prime.mul(&p_prime.conj_entries())? != CycMatrix::identity(p.conductor(), d) {
        return Err(Error::InternalInvariantViolation(
            "normalized intertwiner does not satisfy P' conj(P') = I".into(),
        ));
    }
    Ok((p_prime, solution))
}

fn candidate_q(p_prime_conj: &CycMatrix, xi: &Cyclotomic) -> Result<CycMatrix> {
    let d = p_prime_conj.rows();
    let n = p_prime_conj.conductor();
    p_prime_conj
        .scale(&xi.conj())?
        .add(&CycMatrix::identity(n, d).scale(xi)?)
}

/// Deterministic xi selection: walk the candidate list 1, zeta_n,
/// 1 + zeta_n, 1 + 2 zeta_n, ... skipping candidates whose ratio
/// -conj(xi)/xi repeats one already tested, until
/// det(conj(xi) conj(P') + xi I) != 0. At most d + 1 candidates with
/// distinct ratios are ever tested.
pub fn find_xi(p_prime: &CycMatrix, n: u64) -> Result<XiSearch> {
    let d = p_prime.rows();
    let p_conj = p_prime.conj_entries();
    let mut tested_ratios: Vec<Cyclotomic> = Vec::new();
    let mut rejected = Vec::new();
    let limit = 2 * (d as u32 + 2) + 2;
    for index in 0..limit {
        let xi = match index {
            0 => Cyclotomic::one(n),
            1 => Cyclotomic::zeta(n),
            j => Cyclotomic::one(n).checked_add(
                &Cyclotomic::zeta(n)
                    .scale(&BigRational::from_integer(BigInt::from(j - 1))),
            )?,
        };
        if xi.is_zero() {
            continue;
        }
        let ratio = xi.conj().neg().checked_div(&xi)?;
        if tested_ratios.contains(&ratio) {
            continue;
        }
        tested_ratios.push(ratio);
        if tested_ratios.len() > d + 1 {
            return Err(Error::InternalInvariantViolation(
                "xi search exceeded the d + 1 distinct-ratio bound".into(),
            ));
        }
        let q = candidate_q(&p_conj, &xi)?;
        if q.det()?.is_zero() {
            rejected.push(xi);
            continue;
        }
        return Ok(XiSearch {
            xi,
            attempts: tested_ratios.len() as u32,
            rejected,
        });
    }
    Err(Error::XiSearchExhausted {
        attempts: tested_ratios.len() as u32,
    })
}

/// Randomized xi selection from a seeded generator; every candidate is still
/// verified by the exact determinant test.
pub fn find_xi_seeded(p_prime: &CycMatrix, n: u64, seed: u64) -> Result<XiSearch> {
    let p_conj = p_prime.conj_entries();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phi = crate::cyclotomic::euler_phi(n);
    let mut rejected = Vec::new();
    for attempt in 1..=200u32 {
        let coeffs: Vec<BigRational> = (0..phi)
            .map(|_| BigRational::from_integer(BigInt::from(rng.random_range(-3i64..=3))))
            .collect();
        let xi = Cyclotomic::from_coeffs(n, coeffs);
        if xi.is_zero() {
            continue;
        }
        let q = candidate_q(&p_conj, &xi)?;
        if q.det()?.is_zero() {
            rejected.push(xi);
            continue;
        }
        return Ok(XiSearch {
            xi,
            attempts: attempt,
            rejected,
        });
    }
    Err(Error::XiSearchExhausted { attempts: 200 })
}

/// Q = conj(xi) conj(P') + xi I, verified to satisfy P' Q = conj(Q) and
/// det Q != 0.
pub fn build_q(p_prime: &CycMatrix, xi: &Cyclotomic) -> Result<CycMatrix> {
    let q = candidate_q(&p_prime.conj_entries(), xi)?;
    if p_prime.mul(&q)? != q.conj_entries() {
        return Err(Error::InternalInvariantViolation(
            "Q does not satisfy P' Q = conj(Q)".into(),
        ));
    }
    if q.det()?.is_zero() {
        return Err(Error::InternalInvariantViolation(
            "Q is singular despite the xi determinant test".into(),
        ));
    }
    Ok(q)
}

/// Runs the full pipeline with default options.
pub fn realify(rep: &Representation) -> Result<RealizationResult> {
    realify_with(rep, &RealifyOptions::default())
}

/// Runs the full pipeline.
pub fn realify_with(rep: &Representation, opts: &RealifyOptions) -> Result<RealizationResult> {
    let rep = match opts.closure_cap {
        Some(cap) => rep.with_closure_cap(cap),
        None => rep.clone(),
    };
    let n = rep.conductor();
    let d = rep.degree();

    // Conductor 1 or 2 means every entry is rational, hence already fixed
    // by conjugation; nothing to do.
    if n <= 2 {
        return Ok(RealizationResult {
            q: CycMatrix::identity(n, d),
            generators_real: rep.generators().to_vec(),
            diagnostics: Diagnostics::default(),
        });
    }

    let closure = rep.closure()?;
    let chi = character(&closure)?;
    let inner = char_inner(&chi, &chi)?;
    if !inner.is_one() {
        return Err(Error::NotIrreducible {
            inner: inner.to_string(),
        });
    }
    let nu2 = frobenius_schur(&rep, &closure)?;
    match nu2 {
        0 => return Err(Error::NotRealValued),
        -1 => return Err(Error::QuaternionicType),
        _ => {}
    }

    let mut diagnostics = Diagnostics {
        nu2: Some(nu2),
        group_order: Some(closure.order()),
        ..Diagnostics::default()
    };

    // Degree 1 with a real-valued character: the entries are +-1 already.
    if d == 1 {
        for g in rep.generators() {
            if !g.is_conj_fixed() {
                return Err(Error::InternalInvariantViolation(
                    "degree-1 generator entry not conjugation-fixed despite indicator 1".into(),
                ));
            }
        }
        return Ok(RealizationResult {
            q: CycMatrix::identity(n, 1),
            generators_real: rep.generators().to_vec(),
            diagnostics,
        });
    }

    let bilinear = if opts.kernel_bilinear {
        invariant_bilinear_kernel(&rep)?
    } else {
        invariant_bilinear(&rep, &closure)?
    };
    let hermitian = invariant_hermitian(&rep, &closure)?;
    let p = compute_intertwiner(&bilinear, &hermitian, &rep)?;
    let mu = compute_mu(&p)?;
    let (p_prime, norm_solution) = normalize_intertwiner(&p, &mu, opts.norm_bound)?;

    let search = match opts.xi {
        XiStrategy::Deterministic => find_xi(&p_prime, n)?,
        XiStrategy::Seeded(seed) => find_xi_seeded(&p_prime, n, seed)?,
    };
    let q = build_q(&p_prime, &search.xi)?;

    let q_inv = q.inverse()?;
    let mut generators_real = Vec::with_capacity(rep.generators().len());
    for g in rep.generators() {
        let conjugated = q_inv.mul(g)?.mul(&q)?;
        if !conjugated.is_conj_fixed() {
            return Err(Error::InternalInvariantViolation(
                "conjugated generator has an entry not fixed by conjugation".into(),
            ));
        }
        if conjugated.trace()? != g.trace()? {
            return Err(Error::InternalInvariantViolation(
                "conjugation changed a generator trace".into(),
            ));
        }
        generators_real.push(conjugated);
    }

    diagnostics.bilinear_form = Some(bilinear);
    diagnostics.hermitian_form = Some(hermitian);
    diagnostics.intertwiner = Some(p);
    diagnostics.mu = Some(mu);
    diagnostics.norm_solution = Some(norm_solution);
    diagnostics.xi = Some(search.xi);
    diagnostics.xi_attempts = search.attempts;
    diagnostics.xi_rejected = search.rejected;

    Ok(RealizationResult {
        q,
        generators_real,
        diagnostics,
    })
}

/// Per-generator outcome of an independent re-check of a claimed
/// realization.
#[derive(Clone, Debug)]
pub struct GeneratorCheck {
    pub index: usize,
    pub conj_fixed: bool,
    pub trace_preserved: bool,
    pub matches_claimed: bool,
    /// First offending entry (row, col) when a check failed.
    pub offending_entry: Option<(usize, usize)>,
}

impl GeneratorCheck {
    pub fn passed(&self) -> bool {
        self.conj_fixed && self.trace_preserved && self.matches_claimed
    }
}

/// Recomputes Q^-1 rho(g) Q for every generator and checks exact
/// conjugation-fixedness, trace preservation, and agreement with the claimed
/// conjugated generators.
pub fn verify_realization(
    rep: &Representation,
    q: &CycMatrix,
    claimed: &[CycMatrix],
) -> Result<Vec<GeneratorCheck>> {
    if q.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let q_inv = q.inverse()?;
    let mut checks = Vec::new();
    for (index, g) in rep.generators().iter().enumerate() {
        let conjugated = q_inv.mul(g)?.mul(q)?;
        let mut offending_entry = None;
        let mut conj_fixed = true;
        'outer: for r in 0..conjugated.rows() {
            for c in 0..conjugated.cols() {
                if !conjugated.at(r, c).is_real() {
                    conj_fixed = false;
                    offending_entry = Some((r, c));
                    break 'outer;
                }
            }
        }
        let trace_preserved = conjugated.trace()? == g.trace()?;
        let matches_claimed = match claimed.get(index) {
            Some(m) => {
                if *m == conjugated {
                    true
                } else {
                    if offending_entry.is_none() {
                        'cmp: for r in 0..conjugated.rows() {
                            for c in 0..conjugated.cols() {
                                if m.at(r, c) != conjugated.at(r, c) {
                                    offending_entry = Some((r, c));
                                    break 'cmp;
                                }
                            }
                        }
                    }
                    false
                }
            }
            None => false,
        };
        checks.push(GeneratorCheck {
            index,
            conj_fixed,
            trace_preserved,
            matches_claimed,
            offending_entry,
        });
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Fixture;
    use crate::normeq::NormStrategy;

    fn swap2(n: u64) -> CycMatrix {
        CycMatrix::from_rows(
            n,
            vec![
                vec![Cyclotomic::zero(n), Cyclotomic::one(n)],
                vec![Cyclotomic::one(n), Cyclotomic::zero(n)],
            ],
        )
        .unwrap()
    }

    fn rot_j(n: u64) -> CycMatrix {
        // [[0, 1], [-1, 0]]
        CycMatrix::from_rows(
            n,
            vec![
                vec![Cyclotomic::zero(n), Cyclotomic::one(n)],
                vec![Cyclotomic::one(n).neg(), Cyclotomic::zero(n)],
            ],
        )
        .unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bilinear_form_of_dihedral_4_is_the_swap() {
        let rep = Fixture::Dihedral(4).build().unwrap();
        let closure = rep.closure().unwrap();
        let m = invariant_bilinear(&rep, &closure).unwrap();
        assert_eq!(m, swap2(4));
        assert_eq!(m.transpose(), m);
    }

    #[test]
    fn bilinear_form_of_quaternion_is_antisymmetric() {
        let rep = Fixture::Quaternion.build().unwrap();
        let closure = rep.closure().unwrap();
        let m = invariant_bilinear(&rep, &closure).unwrap();
        assert_eq!(m, rot_j(4));
        assert_eq!(m.transpose(), m.neg());
    }

    #[test]
    fn bilinear_form_of_d1_sign_rep_is_scalar() {
        // Degree-1 representation with entries +-1 over conductor 4.
        let g = CycMatrix::new(4, 1, 1, vec![Cyclotomic::from_integer(4, -1)]).unwrap();
        let rep = Representation::new(4, 1, vec![g], None).unwrap();
        let closure = rep.closure().unwrap();
        let m = invariant_bilinear(&rep, &closure).unwrap();
        assert!(!m.at(0, 0).is_zero());
    }

    #[test]
    fn kernel_route_agrees_up_to_scalar() {
        let rep = Fixture::Dihedral(4).build().unwrap();
        let closure = rep.closure().unwrap();
        let averaged = invariant_bilinear(&rep, &closure).unwrap();
        let kerneled = invariant_bilinear_kernel(&rep).unwrap();
        // Both span the same one-dimensional space.
        let ratio = kerneled.at(0, 1).checked_div(averaged.at(0, 1)).unwrap();
        assert_eq!(kerneled, averaged.scale(&ratio).unwrap());
    }

    #[test]
    fn bilinear_form_rejects_nonreal_character() {
        let rep = Fixture::CyclicLinear(3, 1).build().unwrap();
        let closure = rep.closure().unwrap();
        assert!(matches!(
            invariant_bilinear(&rep, &closure),
            Err(Error::NotRealValued)
        ));
    }

    #[test]
    fn hermitian_form_of_dihedral_fixtures_is_scaled_identity() {
        for (m, order) in [(4u64, 8i64), (3, 6)] {
            let rep = Fixture::Dihedral(m).build().unwrap();
            let closure = rep.closure().unwrap();
            let sigma = invariant_hermitian(&rep, &closure).unwrap();
            let expect = CycMatrix::identity(m, 2)
                .scale(&Cyclotomic::from_integer(m, order))
                .unwrap();
            assert_eq!(sigma, expect, "m = {m}");
        }
    }

    #[test]
    fn hermitian_form_of_trivial_rep_is_group_order() {
        let rep = Fixture::CyclicLinear(1, 0).build().unwrap();
        let closure = rep.closure().unwrap();
        let sigma = invariant_hermitian(&rep, &closure).unwrap();
        assert_eq!(*sigma.at(0, 0), Cyclotomic::from_integer(1, 1));
    }

    #[test]
    fn intertwiner_of_dihedral_4() {
        let rep = Fixture::Dihedral(4).build().unwrap();
        let closure = rep.closure().unwrap();
        let m = invariant_bilinear(&rep, &closure).unwrap();
        let sigma = invariant_hermitian(&rep, &closure).unwrap();
        let p = compute_intertwiner(&m, &sigma, &rep).unwrap();
        assert_eq!(p, swap2(4).scale_rational(&rat(1, 8)));
    }

    #[test]
    fn intertwiner_degenerate_identity_case() {
        let rep = Representation::new(4, 2, vec![CycMatrix::identity(4, 2)], None).unwrap();
        let i = CycMatrix::identity(4, 2);
        let p = compute_intertwiner(&i, &i, &rep).unwrap();
        assert_eq!(p, i);
    }

    #[test]
    fn mu_examples() {
        let p = swap2(4).scale_rational(&rat(1, 8));
        assert_eq!(
            compute_mu(&p).unwrap(),
            Cyclotomic::from_rational(4, rat(1, 64))
        );
        assert!(compute_mu(&CycMatrix::identity(4, 3)).unwrap().is_one());
        // Quaternionic case: P conj(P) = -I.
        assert_eq!(
            compute_mu(&rot_j(4)).unwrap(),
            Cyclotomic::from_integer(4, -1)
        );
    }

    #[test]
    fn mu_rejects_nonscalar_products() {
        let bad = CycMatrix::from_rows(
            4,
            vec![
                vec![Cyclotomic::one(4), Cyclotomic::one(4)],
                vec![Cyclotomic::zero(4), Cyclotomic::one(4)],
            ],
        )
        .unwrap();
        assert!(matches!(compute_mu(&bad), Err(Error::NotScalar)));
    }

    #[test]
    fn normalize_identity_odd_degree() {
        let p = CycMatrix::identity(4, 3);
        let mu = Cyclotomic::one(4);
        let (p_prime, sol) = normalize_intertwiner(&p, &mu, 4).unwrap();
        assert_eq!(p_prime, p);
        assert!(sol.x.is_one());
        assert_eq!(sol.strategy, NormStrategy::OddDegreeClosedForm);
    }

    #[test]
    fn normalize_dihedral_4_intertwiner() {
        let p = swap2(4).scale_rational(&rat(1, 8));
        let mu = Cyclotomic::from_rational(4, rat(1, 64));
        let (p_prime, sol) = normalize_intertwiner(&p, &mu, 4).unwrap();
        assert_eq!(p_prime, swap2(4));
        assert_eq!(sol.x, Cyclotomic::from_rational(4, rat(1, 8)));
        assert_eq!(sol.strategy, NormStrategy::RationalSquare);
    }

    #[test]
    fn normalize_degree_1_root_of_unity() {
        let p = CycMatrix::new(5, 1, 1, vec![Cyclotomic::zeta(5)]).unwrap();
        let mu = Cyclotomic::one(5);
        let (p_prime, sol) = normalize_intertwiner(&p, &mu, 4).unwrap();
        assert_eq!(sol.x, Cyclotomic::zeta(5));
        assert!(p_prime.at(0, 0).is_one());
    }

    #[test]
    fn xi_search_on_the_swap() {
        let search = find_xi(&swap2(4), 4).unwrap();
        assert_eq!(search.rejected, vec![Cyclotomic::one(4), Cyclotomic::zeta(4)]);
        assert_eq!(
            search.xi,
            Cyclotomic::one(4).checked_add(&Cyclotomic::zeta(4)).unwrap()
        );
        assert_eq!(search.attempts, 3);
    }

    #[test]
    fn xi_search_on_identity_succeeds_immediately() {
        let search = find_xi(&CycMatrix::identity(4, 2), 4).unwrap();
        assert!(search.xi.is_one());
        assert_eq!(search.attempts, 1);
        let q = build_q(&CycMatrix::identity(4, 2), &search.xi).unwrap();
        assert_eq!(
            q,
            CycMatrix::identity(4, 2)
                .scale(&Cyclotomic::from_integer(4, 2))
                .unwrap()
        );
    }

    #[test]
    fn xi_search_on_minus_identity_skips_one() {
        let minus_i = CycMatrix::identity(4, 2).neg();
        let search = find_xi(&minus_i, 4).unwrap();
        assert_eq!(search.rejected, vec![Cyclotomic::one(4)]);
        assert_eq!(search.xi, Cyclotomic::zeta(4));
        assert_eq!(search.attempts, 2);
    }

    #[test]
    fn q_for_dihedral_4() {
        let xi = Cyclotomic::one(4).checked_add(&Cyclotomic::zeta(4)).unwrap();
        let q = build_q(&swap2(4), &xi).unwrap();
        let one_plus = xi.clone();
        let one_minus = Cyclotomic::one(4).checked_sub(&Cyclotomic::zeta(4)).unwrap();
        let expect = CycMatrix::from_rows(
            4,
            vec![
                vec![one_plus.clone(), one_minus.clone()],
                vec![one_minus, one_plus],
            ],
        )
        .unwrap();
        assert_eq!(q, expect);
    }

    #[test]
    fn realify_dihedral_4_end_to_end() {
        let rep = Fixture::Dihedral(4).build().unwrap();
        let result = realify(&rep).unwrap();
        assert_eq!(result.generators_real[0], rot_j(4));
        assert_eq!(result.generators_real[1], swap2(4));
        for g in &result.generators_real {
            assert!(g.is_conj_fixed());
        }
        let d = result.diagnostics;
        assert_eq!(d.nu2, Some(1));
        assert_eq!(d.group_order, Some(8));
        assert_eq!(d.xi_attempts, 3);
        assert_eq!(
            d.norm_solution.unwrap().strategy,
            NormStrategy::RationalSquare
        );
    }

    #[test]
    fn realify_rejects_quaternion() {
        let rep = Fixture::Quaternion.build().unwrap();
        assert!(matches!(realify(&rep), Err(Error::QuaternionicType)));
    }

    #[test]
    fn realify_rejects_nonreal_linear() {
        let rep = Fixture::CyclicLinear(3, 1).build().unwrap();
        assert!(matches!(realify(&rep), Err(Error::NotRealValued)));
    }

    #[test]
    fn realify_rejects_reducible() {
        let rep = Representation::new(4, 2, vec![CycMatrix::identity(4, 2)], None).unwrap();
        assert!(matches!(realify(&rep), Err(Error::NotIrreducible { .. })));
    }

    #[test]
    fn realify_trivial_conductor_is_identity() {
        let g = CycMatrix::new(1, 1, 1, vec![Cyclotomic::one(1)]).unwrap();
        let rep = Representation::new(1, 1, vec![g.clone()], None).unwrap();
        let result = realify(&rep).unwrap();
        assert_eq!(result.q, CycMatrix::identity(1, 1));
        assert_eq!(result.generators_real, vec![g]);
    }

    #[test]
    fn realify_degree_1_sign_rep() {
        let g = CycMatrix::new(4, 1, 1, vec![Cyclotomic::from_integer(4, -1)]).unwrap();
        let rep = Representation::new(4, 1, vec![g.clone()], None).unwrap();
        let result = realify(&rep).unwrap();
        assert_eq!(result.q, CycMatrix::identity(4, 1));
        assert_eq!(result.diagnostics.nu2, Some(1));
    }

    #[test]
    fn realify_with_seeded_xi_still_exact() {
        let rep = Fixture::Dihedral(4).build().unwrap();
        let opts = RealifyOptions {
            xi: XiStrategy::Seeded(7),
            ..RealifyOptions::default()
        };
        let result = realify_with(&rep, &opts).unwrap();
        for g in &result.generators_real {
            assert!(g.is_conj_fixed());
        }
    }

    #[test]
    fn realify_kernel_bilinear_route() {
        let rep = Fixture::Dihedral(6).build().unwrap();
        let opts = RealifyOptions {
            kernel_bilinear: true,
            ..RealifyOptions::default()
        };
        let result = realify_with(&rep, &opts).unwrap();
        for g in &result.generators_real {
            assert!(g.is_conj_fixed());
        }
    }

    #[test]
    fn verify_realization_round_trip() {
        let rep = Fixture::Dihedral(4).build().unwrap();
        let result = realify(&rep).unwrap();
        let checks = verify_realization(&rep, &result.q, &result.generators_real).unwrap();
        assert!(checks.iter().all(|c| c.passed()));
    }

    #[test]
    fn verify_realization_flags_perturbed_entry() {
        let rep = Fixture::Dihedral(4).build().unwrap();
        let result = realify(&rep).unwrap();
        let mut claimed = result.generators_real.clone();
        let perturbed = claimed[0]
            .add(
                &CycMatrix::from_fn(4, 2, 2, |r, c| {
                    if r == 0 && c == 0 {
                        Cyclotomic::zeta(4)
                    } else {
                        Cyclotomic::zero(4)
                    }
                })
                .unwrap(),
            )
            .unwrap();
        claimed[0] = perturbed;
        let checks = verify_realization(&rep, &result.q, &claimed).unwrap();
        assert!(!checks[0].passed());
        assert!(!checks[0].matches_claimed);
        assert_eq!(checks[0].offending_entry, Some((0, 0)));
        assert!(checks[1].passed());
    }

    #[test]
    fn verify_realization_rejects_singular_q() {
        let rep = Fixture::Dihedral(4).build().unwrap();
        let result = realify(&rep).unwrap();
        let singular = CycMatrix::zero(4, 2, 2);
        assert!(matches!(
            verify_realization(&rep, &singular, &result.generators_real),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn conjugated_generators_satisfy_sampled_words() {
        let rep = Fixture::Dihedral(5).build().unwrap();
        let result = realify(&rep).unwrap();
        let q_inv = result.q.inverse().unwrap();
        let a = &rep.generators()[0];
        let b = &rep.generators()[1];
        let a2 = &result.generators_real[0];
        let b2 = &result.generators_real[1];
        // Words ab, ba, aab over both sides.
        for (w, w2) in [
            (a.mul(b).unwrap(), a2.mul(b2).unwrap()),
            (b.mul(a).unwrap(), b2.mul(a2).unwrap()),
            (
                a.mul(a).unwrap().mul(b).unwrap(),
                a2.mul(a2).unwrap().mul(b2).unwrap(),
            ),
        ] {
            assert_eq!(q_inv.mul(&w).unwrap().mul(&result.q).unwrap(), w2);
        }
    }
}
