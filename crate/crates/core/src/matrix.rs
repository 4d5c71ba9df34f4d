//! Exact dense linear algebra over Q(zeta_n): products, transpose, entrywise
//! conjugation, determinant, inverse, and kernel.
//!
//! Elimination uses classical Gaussian elimination with exact field division
//! and first-nonzero pivoting, so identical inputs always produce identical
//! outputs.

use num::BigRational;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// A dense row-major matrix whose entries all share one conductor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycMatrix {
    conductor: u64,
    rows: usize,
    cols: usize,
    entries: Vec<Cyclotomic>,
}

impl CycMatrix {
    /// Builds a matrix from a row-major entry vector.
    pub fn new(conductor: u64, rows: usize, cols: usize, entries: Vec<Cyclotomic>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                left_rows: rows,
                left_cols: cols,
                right_rows: entries.len(),
                right_cols: 1,
            });
        }
        for e in &entries {
            if e.conductor() != conductor {
                return Err(Error::ConductorMismatch {
                    left: conductor,
                    right: e.conductor(),
                });
            }
        }
        Ok(CycMatrix {
            conductor,
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix entry by entry from a closure over (row, col).
    pub fn from_fn(
        conductor: u64,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Cyclotomic,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self::new(conductor, rows, cols, entries)
    }

    /// Builds a matrix from nested row vectors.
    pub fn from_rows(conductor: u64, rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    left_rows: r,
                    left_cols: c,
                    right_rows: 1,
                    right_cols: row.len(),
                });
            }
        }
        Self::new(conductor, r, c, rows.into_iter().flatten().collect())
    }

    /// The d x d identity.
    pub fn identity(conductor: u64, d: usize) -> Self {
        let mut entries = vec![Cyclotomic::zero(conductor); d * d];
        for i in 0..d {
            entries[i * d + i] = Cyclotomic::one(conductor);
        }
        CycMatrix {
            conductor,
            rows: d,
            cols: d,
            entries,
        }
    }

    /// The all-zero matrix.
    pub fn zero(conductor: u64, rows: usize, cols: usize) -> Self {
        CycMatrix {
            conductor,
            rows,
            cols,
            entries: vec![Cyclotomic::zero(conductor); rows * cols],
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Cyclotomic {
        &self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    fn at_mut(&mut self, r: usize, c: usize) -> &mut Cyclotomic {
        &mut self.entries[r * self.cols + c]
    }

    fn ensure_same_conductor(&self, other: &CycMatrix) -> Result<()> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch {
                left: self.conductor,
                right: other.conductor,
            });
        }
        Ok(())
    }

    /// Exact matrix product.
    pub fn mul(&self, other: &CycMatrix) -> Result<CycMatrix> {
        self.ensure_same_conductor(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = CycMatrix::zero(self.conductor, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.checked_mul(b)?;
                    let cur = out.at(i, j).checked_add(&prod)?;
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        Ok(out)
    }

    /// Exact entrywise sum.
    pub fn add(&self, other: &CycMatrix) -> Result<CycMatrix> {
        self.ensure_same_conductor(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycMatrix {
            conductor: self.conductor,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Exact entrywise difference.
    pub fn sub(&self, other: &CycMatrix) -> Result<CycMatrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycMatrix {
        CycMatrix {
            conductor: self.conductor,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    /// Multiplies every entry by a field scalar.
    pub fn scale(&self, s: &Cyclotomic) -> Result<CycMatrix> {
        if s.conductor() != self.conductor {
            return Err(Error::ConductorMismatch {
                left: self.conductor,
                right: s.conductor(),
            });
        }
        let entries = self
            .entries
            .iter()
            .map(|e| e.checked_mul(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycMatrix {
            conductor: self.conductor,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Multiplies every entry by a rational scalar.
    pub fn scale_rational(&self, r: &BigRational) -> CycMatrix {
        CycMatrix {
            conductor: self.conductor,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.scale(r)).collect(),
        }
    }

    pub fn transpose(&self) -> CycMatrix {
        let mut out = CycMatrix::zero(self.conductor, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    /// Entrywise complex conjugation.
    pub fn conj_entries(&self) -> CycMatrix {
        CycMatrix {
            conductor: self.conductor,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.conj()).collect(),
        }
    }

    /// Sum of the diagonal.
    pub fn trace(&self) -> Result<Cyclotomic> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut t = Cyclotomic::zero(self.conductor);
        for i in 0..self.rows {
            t = t.checked_add(self.at(i, i))?;
        }
        Ok(t)
    }

    /// Exact determinant by Gaussian elimination (product of pivots, with a
    /// sign flip per row swap).
    pub fn det(&self) -> Result<Cyclotomic> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let d = self.rows;
        let mut work = self.clone();
        let mut det = Cyclotomic::one(self.conductor);
        let mut negate = false;
        for col in 0..d {
            let pivot_row = match (col..d).find(|&r| !work.at(r, col).is_zero()) {
                Some(r) => r,
                None => return Ok(Cyclotomic::zero(self.conductor)),
            };
            if pivot_row != col {
                work.swap_rows(pivot_row, col);
                negate = !negate;
            }
            let pivot = work.at(col, col).clone();
            det = det.checked_mul(&pivot)?;
            let pivot_inv = pivot.inv()?;
            for r in col + 1..d {
                let factor = work.at(r, col).checked_mul(&pivot_inv)?;
                if factor.is_zero() {
                    continue;
                }
                for c in col..d {
                    let delta = factor.checked_mul(work.at(col, c))?;
                    let v = work.at(r, c).checked_sub(&delta)?;
                    *work.at_mut(r, c) = v;
                }
            }
        }
        Ok(if negate { det.neg() } else { det })
    }

    /// Exact inverse by Gauss-Jordan elimination on the augmented matrix.
    pub fn inverse(&self) -> Result<CycMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let d = self.rows;
        let mut work = self.clone();
        let mut inv = CycMatrix::identity(self.conductor, d);
        for col in 0..d {
            let pivot_row = (col..d)
                .find(|&r| !work.at(r, col).is_zero())
                .ok_or(Error::Singular)?;
            if pivot_row != col {
                work.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            let pivot_inv = work.at(col, col).inv()?;
            for c in 0..d {
                let v = work.at(col, c).checked_mul(&pivot_inv)?;
                *work.at_mut(col, c) = v;
                let w = inv.at(col, c).checked_mul(&pivot_inv)?;
                *inv.at_mut(col, c) = w;
            }
            for r in 0..d {
                if r == col || work.at(r, col).is_zero() {
                    continue;
                }
                let factor = work.at(r, col).clone();
                for c in 0..d {
                    let delta = factor.checked_mul(work.at(col, c))?;
                    let v = work.at(r, c).checked_sub(&delta)?;
                    *work.at_mut(r, c) = v;
                    let delta = factor.checked_mul(inv.at(col, c))?;
                    let w = inv.at(r, c).checked_sub(&delta)?;
                    *inv.at_mut(r, c) = w;
                }
            }
        }
        Ok(inv)
    }

    /// Exact basis of the right null space, as column vectors. Empty iff the
    /// matrix has full column rank.
    pub fn kernel(&self) -> Vec<CycMatrix> {
        let mut work = self.clone();
        let rows = self.rows;
        let cols = self.cols;
        // Reduced row echelon form.
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row >= rows {
                break;
            }
            let pivot_row = match (row..rows).find(|&r| !work.at(r, col).is_zero()) {
                Some(r) => r,
                None => continue,
            };
            if pivot_row != row {
                work.swap_rows(pivot_row, row);
            }
            let pivot_inv = work.at(row, col).inv().expect("nonzero pivot");
            for c in col..cols {
                let v = work
                    .at(row, c)
                    .checked_mul(&pivot_inv)
                    .expect("same conductor");
                *work.at_mut(row, c) = v;
            }
            for r in 0..rows {
                if r == row || work.at(r, col).is_zero() {
                    continue;
                }
                let factor = work.at(r, col).clone();
                for c in col..cols {
                    let delta = factor
                        .checked_mul(work.at(row, c))
                        .expect("same conductor");
                    let v = work.at(r, c).checked_sub(&delta).expect("same conductor");
                    *work.at_mut(r, c) = v;
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        // One basis vector per free column.
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Cyclotomic::zero(self.conductor); cols];
            v[free] = Cyclotomic::one(self.conductor);
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = work.at(r, free).neg();
            }
            basis.push(
                CycMatrix::new(self.conductor, cols, 1, v).expect("consistent dimensions"),
            );
        }
        basis
    }

    /// If the matrix is scalar (a multiple of the identity), returns the
    /// scalar.
    pub fn as_scalar(&self) -> Option<Cyclotomic> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let s = self.at(0, 0);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.at(r, c);
                if r == c {
                    if e != s {
                        return None;
                    }
                } else if !e.is_zero() {
                    return None;
                }
            }
        }
        Some(s.clone())
    }

    /// True iff every entry is fixed by conjugation (lies in the real
    /// subfield).
    pub fn is_conj_fixed(&self) -> bool {
        self.entries.iter().all(|e| e.is_real())
    }

    /// Re-expresses all entries in a larger-conductor field.
    pub fn lift_conductor(&self, target: u64) -> Result<CycMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.lift_conductor(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycMatrix {
            conductor: target,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CycMatrix(n={}, {}x{})", self.conductor, self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn c(n: u64, v: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n, v)
    }

    fn swap2(n: u64) -> CycMatrix {
        CycMatrix::from_rows(
            n,
            vec![
                vec![c(n, 0), c(n, 1)],
                vec![c(n, 1), c(n, 0)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn product_with_identity() {
        let z = Cyclotomic::zeta(4);
        let a = CycMatrix::from_rows(
            4,
            vec![
                vec![z.clone(), c(4, 2)],
                vec![c(4, -1), z.conj()],
            ],
        )
        .unwrap();
        let i = CycMatrix::identity(4, 2);
        assert_eq!(a.mul(&i).unwrap(), a);
        assert_eq!(i.mul(&a).unwrap(), a);
    }

    #[test]
    fn diag_i_squares_to_minus_identity() {
        let z = Cyclotomic::zeta(4);
        let a = CycMatrix::from_rows(
            4,
            vec![
                vec![z.clone(), c(4, 0)],
                vec![c(4, 0), z.neg()],
            ],
        )
        .unwrap();
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, CycMatrix::identity(4, 2).neg());
    }

    #[test]
    fn swap_is_an_involution() {
        let s = swap2(1);
        assert_eq!(s.mul(&s).unwrap(), CycMatrix::identity(1, 2));
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(CycMatrix::identity(3, 4).transpose(), CycMatrix::identity(3, 4));
        let a = CycMatrix::from_rows(
            1,
            vec![
                vec![c(1, 0), c(1, 1)],
                vec![c(1, 0), c(1, 0)],
            ],
        )
        .unwrap();
        let expect = CycMatrix::from_rows(
            1,
            vec![
                vec![c(1, 0), c(1, 0)],
                vec![c(1, 1), c(1, 0)],
            ],
        )
        .unwrap();
        assert_eq!(a.transpose(), expect);
    }

    #[test]
    fn conj_entries_of_diagonal() {
        let z = Cyclotomic::zeta(4);
        let a = CycMatrix::from_rows(
            4,
            vec![
                vec![z.clone(), c(4, 0)],
                vec![c(4, 0), z.neg()],
            ],
        )
        .unwrap();
        let expect = CycMatrix::from_rows(
            4,
            vec![
                vec![z.neg(), c(4, 0)],
                vec![c(4, 0), z.clone()],
            ],
        )
        .unwrap();
        assert_eq!(a.conj_entries(), expect);
        assert_eq!(a.conj_entries().conj_entries(), a);
    }

    #[test]
    fn determinant_examples() {
        assert!(CycMatrix::identity(5, 3).det().unwrap().is_one());
        assert_eq!(swap2(1).det().unwrap(), c(1, -1));
        // [[1+i, 1-i], [1-i, 1+i]] has determinant 4i.
        let one = Cyclotomic::one(4);
        let i = Cyclotomic::zeta(4);
        let p = one.checked_add(&i).unwrap();
        let m = one.checked_sub(&i).unwrap();
        let a = CycMatrix::from_rows(
            4,
            vec![
                vec![p.clone(), m.clone()],
                vec![m.clone(), p.clone()],
            ],
        )
        .unwrap();
        assert_eq!(a.det().unwrap(), i.scale(&BigRational::from_integer(BigInt::from(4))));
    }

    #[test]
    fn determinant_is_multiplicative() {
        let z = Cyclotomic::zeta(8);
        let a = CycMatrix::from_rows(
            8,
            vec![
                vec![z.clone(), c(8, 2)],
                vec![c(8, 1), z.conj()],
            ],
        )
        .unwrap();
        let b = CycMatrix::from_rows(
            8,
            vec![
                vec![c(8, 3), z.pow(3).unwrap()],
                vec![z.clone(), c(8, -1)],
            ],
        )
        .unwrap();
        let lhs = a.mul(&b).unwrap().det().unwrap();
        let rhs = a.det().unwrap().checked_mul(&b.det().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(CycMatrix::identity(7, 2).inverse().unwrap(), CycMatrix::identity(7, 2));
        let a = CycMatrix::from_rows(
            1,
            vec![
                vec![c(1, 2), c(1, 0)],
                vec![c(1, 0), Cyclotomic::from_rational(1, BigRational::new(BigInt::from(1), BigInt::from(2)))],
            ],
        )
        .unwrap();
        let expect = CycMatrix::from_rows(
            1,
            vec![
                vec![Cyclotomic::from_rational(1, BigRational::new(BigInt::from(1), BigInt::from(2))), c(1, 0)],
                vec![c(1, 0), c(1, 2)],
            ],
        )
        .unwrap();
        assert_eq!(a.inverse().unwrap(), expect);
    }

    #[test]
    fn inverse_via_adjugate_oracle() {
        // [[1+i, 1-i], [1-i, 1+i]]: inverse equals adjugate over determinant.
        let one = Cyclotomic::one(4);
        let i = Cyclotomic::zeta(4);
        let p = one.checked_add(&i).unwrap();
        let m = one.checked_sub(&i).unwrap();
        let a = CycMatrix::from_rows(
            4,
            vec![
                vec![p.clone(), m.clone()],
                vec![m.clone(), p.clone()],
            ],
        )
        .unwrap();
        let det_inv = a.det().unwrap().inv().unwrap();
        let adj = CycMatrix::from_rows(
            4,
            vec![
                vec![p.clone(), m.neg()],
                vec![m.neg(), p.clone()],
            ],
        )
        .unwrap();
        let expect = adj.scale(&det_inv).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(inv, expect);
        assert_eq!(a.mul(&inv).unwrap(), CycMatrix::identity(4, 2));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = CycMatrix::from_rows(
            1,
            vec![
                vec![c(1, 1), c(1, 1)],
                vec![c(1, 1), c(1, 1)],
            ],
        )
        .unwrap();
        assert!(matches!(a.inverse(), Err(Error::Singular)));
        assert!(a.det().unwrap().is_zero());
    }

    #[test]
    fn kernel_examples() {
        assert!(CycMatrix::identity(3, 3).kernel().is_empty());
        assert_eq!(CycMatrix::zero(1, 2, 2).kernel().len(), 2);
        let a = CycMatrix::from_rows(1, vec![vec![c(1, 1), c(1, 1)]]).unwrap();
        let basis = a.kernel();
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        // A v = 0 and v is proportional to (1, -1).
        assert_eq!(a.mul(v).unwrap(), CycMatrix::zero(1, 1, 1));
        let lhs = v.at(0, 0).checked_mul(&c(1, -1)).unwrap();
        assert_eq!(lhs, *v.at(1, 0));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let z = Cyclotomic::zeta(4);
        let a = CycMatrix::from_rows(
            4,
            vec![
                vec![c(4, 1), z.clone(), c(4, 2)],
                vec![c(4, 2), z.scale(&BigRational::from_integer(BigInt::from(2))), c(4, 4)],
            ],
        )
        .unwrap();
        let basis = a.kernel();
        assert!(!basis.is_empty());
        for v in &basis {
            assert_eq!(a.mul(v).unwrap(), CycMatrix::zero(4, 2, 1));
        }
    }

    #[test]
    fn det_respects_transpose_and_conj() {
        let z = Cyclotomic::zeta(12);
        let a = CycMatrix::from_rows(
            12,
            vec![
                vec![z.clone(), c(12, 2), z.pow(5).unwrap()],
                vec![c(12, 0), z.conj(), c(12, 3)],
                vec![z.pow(2).unwrap(), c(12, 1), c(12, -2)],
            ],
        )
        .unwrap();
        assert_eq!(a.det().unwrap(), a.transpose().det().unwrap());
        assert_eq!(a.conj_entries().det().unwrap(), a.det().unwrap().conj());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = CycMatrix::identity(1, 2);
        let b = CycMatrix::zero(1, 3, 3);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn conductor_mismatch_is_rejected() {
        let a = CycMatrix::identity(4, 2);
        let b = CycMatrix::identity(8, 2);
        assert!(matches!(a.mul(&b), Err(Error::ConductorMismatch { .. })));
    }

    #[test]
    fn scalar_detection() {
        let s = CycMatrix::identity(4, 3).scale(&Cyclotomic::zeta(4)).unwrap();
        assert_eq!(s.as_scalar(), Some(Cyclotomic::zeta(4)));
        assert_eq!(swap2(4).as_scalar(), None);
    }
}
