//! Semiring kernels: multiply, element-wise add/multiply, extract, assign.
//!
//! Every function here validates shapes, bounds and domains before calling
//! the matching routine in [`direct`]. Dimension errors report both the
//! expected and the actual shape.

pub mod direct;

use std::ops::Deref;

use crate::algebra::{BinaryOp, Domain, Scalar, Semiring};
use crate::error::{Axis, Error, Result};
use crate::matrix::SparseMatrix;

/// Ordered row or column selection; repeats are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexVector(Vec<usize>);

impl IndexVector {
    pub fn new(indices: Vec<usize>) -> Self {
        IndexVector(indices)
    }

    /// `0, 1, .., n - 1`.
    pub fn range(n: usize) -> Self {
        IndexVector((0..n).collect())
    }

    /// Converts 1-based indices; index 0 is rejected.
    pub fn from_one_based(indices: &[usize]) -> Result<Self> {
        indices
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| Error::InvalidArgument("index 0 in a 1-based index list".into()))
            })
            .collect::<Result<Vec<_>>>()
            .map(IndexVector)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    pub fn check_bounds(&self, bound: usize, axis: Axis) -> Result<()> {
        match self.0.iter().find(|&&i| i >= bound) {
            Some(&index) => Err(Error::IndexOutOfBounds { axis, index, bound }),
            None => Ok(()),
        }
    }

    /// First index that appears more than once. Indices must be below `bound`.
    pub fn first_repeat(&self, bound: usize) -> Option<usize> {
        let mut seen = vec![false; bound];
        self.0
            .iter()
            .copied()
            .find(|&i| std::mem::replace(&mut seen[i], true))
    }
}

impl Deref for IndexVector {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for IndexVector {
    fn from(v: Vec<usize>) -> Self {
        IndexVector(v)
    }
}

impl FromIterator<usize> for IndexVector {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndexVector(iter.into_iter().collect())
    }
}

fn check_domain(expected: Domain, m: &SparseMatrix) -> Result<()> {
    if m.domain() != expected {
        return Err(Error::DomainMismatch {
            expected,
            found: m.domain(),
        });
    }
    Ok(())
}

fn check_zero(domain: Domain, zero: &Scalar) -> Result<()> {
    if !domain.admits(zero) {
        return Err(Error::InvalidArgument(format!(
            "0-element {zero} is not a {domain} value"
        )));
    }
    Ok(())
}

fn same_dims(op: &'static str, a: &SparseMatrix, b: &SparseMatrix) -> Result<()> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch {
            op,
            expected: a.dims().as_tuple(),
            found: b.dims().as_tuple(),
        });
    }
    Ok(())
}

/// `C = A ⊕.⊗ B` for `A: m x l`, `B: l x n`.
pub fn mxm(sr: &Semiring, a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    check_domain(sr.domain(), a)?;
    check_domain(sr.domain(), b)?;
    if a.ncols() != b.nrows() {
        return Err(Error::DimensionMismatch {
            op: "mxm",
            expected: (a.ncols(), b.ncols()),
            found: b.dims().as_tuple(),
        });
    }
    direct::mxm(sr, a, b)
}

/// `w = A ⊕.⊗ v` for a column vector `v` (`n x 1`).
///
/// With adjacency rows as out-vertices this pulls along in-edges; use
/// [`vxm`] (or `mxv` on the transpose) to expand a frontier along out-edges.
pub fn mxv(sr: &Semiring, a: &SparseMatrix, v: &SparseMatrix) -> Result<SparseMatrix> {
    check_domain(sr.domain(), a)?;
    check_domain(sr.domain(), v)?;
    if v.ncols() != 1 || v.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch {
            op: "mxv",
            expected: (a.ncols(), 1),
            found: v.dims().as_tuple(),
        });
    }
    direct::mxv(sr, a, v)
}

/// `w = vᵀ ⊕.⊗ A` for a row vector `v` (`1 x m`): out-neighbour expansion.
pub fn vxm(sr: &Semiring, v: &SparseMatrix, a: &SparseMatrix) -> Result<SparseMatrix> {
    check_domain(sr.domain(), a)?;
    check_domain(sr.domain(), v)?;
    if v.nrows() != 1 || v.ncols() != a.nrows() {
        return Err(Error::DimensionMismatch {
            op: "vxm",
            expected: (1, a.nrows()),
            found: v.dims().as_tuple(),
        });
    }
    direct::vxm(sr, v, a)
}

/// `C(i,j) = A(i,j) ⊕ B(i,j)` over the union of structures.
pub fn ewise_add(op: &BinaryOp, zero: Scalar, a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    same_dims("ewise_add", a, b)?;
    check_domain(a.domain(), b)?;
    check_zero(a.domain(), &zero)?;
    direct::ewise_add(op, zero, a, b)
}

/// `C(i,j) = A(i,j) ⊗ B(i,j)` over the intersection of structures.
pub fn ewise_mult(op: &BinaryOp, zero: Scalar, a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    same_dims("ewise_mult", a, b)?;
    check_domain(a.domain(), b)?;
    check_zero(a.domain(), &zero)?;
    direct::ewise_mult(op, zero, a, b)
}

/// `C = Aᵀ`.
pub fn transpose(a: &SparseMatrix) -> SparseMatrix {
    a.transpose()
}

/// `C(p, q) = A(rows[p], cols[q])`.
pub fn extract(a: &SparseMatrix, rows: &IndexVector, cols: &IndexVector) -> Result<SparseMatrix> {
    rows.check_bounds(a.nrows(), Axis::Row)?;
    cols.check_bounds(a.ncols(), Axis::Col)?;
    direct::extract(a, rows, cols)
}

/// Selection matrix `S(idx)`: `|idx| x n_source` with the multiplicative
/// identity at `(p, idx[p])`, so that `S(i) A S(j)ᵀ = A(i, j)`.
pub fn selection_matrix(sr: &Semiring, idx: &IndexVector, n_source: usize) -> Result<SparseMatrix> {
    idx.check_bounds(n_source, Axis::Col)?;
    let one = sr.one()?;
    direct::selection_matrix(one, sr, idx, n_source)
}

/// `C(rows[p], cols[q]) = A(p, q)` with write-through of implicit zeros.
///
/// `A` must be `|rows| x |cols|`; repeated indices are rejected since the
/// write order would be ambiguous.
pub fn assign(c: &SparseMatrix, rows: &IndexVector, cols: &IndexVector, a: &SparseMatrix) -> Result<SparseMatrix> {
    check_domain(c.domain(), a)?;
    if a.dims().as_tuple() != (rows.len(), cols.len()) {
        return Err(Error::DimensionMismatch {
            op: "assign",
            expected: (rows.len(), cols.len()),
            found: a.dims().as_tuple(),
        });
    }
    rows.check_bounds(c.nrows(), Axis::Row)?;
    cols.check_bounds(c.ncols(), Axis::Col)?;
    if let Some(index) = rows.first_repeat(c.nrows()) {
        return Err(Error::RepeatedIndex { axis: Axis::Row, index });
    }
    if let Some(index) = cols.first_repeat(c.ncols()) {
        return Err(Error::RepeatedIndex { axis: Axis::Col, index });
    }
    direct::assign(c, rows, cols, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{Dims, TripleList};

    fn real_matrix(m: usize, n: usize, entries: &[(usize, usize, f64)]) -> SparseMatrix {
        let t = entries.iter().map(|&(r, c, v)| (r, c, Scalar::Real(v))).collect::<TripleList>();
        SparseMatrix::build(&Semiring::arith_real(), Dims::new(m, n).unwrap(), &t).unwrap()
    }

    #[test]
    fn multiply_by_identity() {
        let sr = Semiring::arith_real();
        let a = real_matrix(3, 4, &[(0, 1, 2.0), (1, 3, -1.5), (2, 0, 4.0)]);
        let id = SparseMatrix::identity(&sr, 4).unwrap();
        assert_eq!(mxm(&sr, &a, &id).unwrap(), a);
    }

    #[test]
    fn mxm_rejects_inner_mismatch() {
        let sr = Semiring::arith_real();
        let a = real_matrix(2, 3, &[]);
        let err = mxm(&sr, &a, &a).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { op: "mxm", expected: (3, 3), found: (2, 3) }));
        let nat = Semiring::arith_natural();
        assert!(matches!(mxm(&nat, &a, &a.transpose()), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn mxv_with_empty_vector_is_empty() {
        let sr = Semiring::arith_real();
        let a = real_matrix(3, 3, &[(0, 1, 1.0), (2, 2, 1.0)]);
        let v = SparseMatrix::empty(Dims::new(3, 1).unwrap(), Domain::Real);
        assert!(mxv(&sr, &a, &v).unwrap().is_empty());
        let row = SparseMatrix::empty(Dims::new(1, 3).unwrap(), Domain::Real);
        assert!(mxv(&sr, &a, &row).is_err());
        assert!(vxm(&sr, &row, &a).unwrap().is_empty());
    }

    #[test]
    fn ewise_identities() {
        let a = real_matrix(2, 2, &[(0, 0, 1.0), (1, 0, 2.0)]);
        let empty = real_matrix(2, 2, &[]);
        assert_eq!(ewise_add(&BinaryOp::plus(), 0.0.into(), &a, &empty).unwrap(), a);
        assert!(ewise_mult(&BinaryOp::times(), 0.0.into(), &a, &empty).unwrap().is_empty());
        let bad = real_matrix(2, 3, &[]);
        assert!(matches!(
            ewise_add(&BinaryOp::plus(), 0.0.into(), &a, &bad),
            Err(Error::DimensionMismatch { op: "ewise_add", .. })
        ));
    }

    #[test]
    fn xor_self_cancels() {
        let sr = Semiring::xor_and();
        let t: TripleList = [(0, 1, true.into()), (1, 1, true.into())].into_iter().collect();
        let a = SparseMatrix::build(&sr, Dims::new(2, 2).unwrap(), &t).unwrap();
        assert!(ewise_add(&BinaryOp::xor(), false.into(), &a, &a).unwrap().is_empty());
    }

    #[test]
    fn extract_full_ranges_is_identity() {
        let a = real_matrix(3, 2, &[(0, 1, 1.0), (2, 0, 5.0)]);
        let out = extract(&a, &IndexVector::range(3), &IndexVector::range(2)).unwrap();
        assert_eq!(out, a);
    }

    #[test]
    fn extract_replicates_and_permutes() {
        let a = real_matrix(2, 2, &[(0, 0, 1.0), (0, 1, 2.0), (1, 1, 3.0)]);
        let out = extract(&a, &vec![1, 0, 0].into(), &vec![1, 1, 0].into()).unwrap();
        let expected = real_matrix(
            3,
            3,
            &[(0, 0, 3.0), (0, 1, 3.0), (1, 0, 2.0), (1, 1, 2.0), (1, 2, 1.0), (2, 0, 2.0), (2, 1, 2.0), (2, 2, 1.0)],
        );
        assert_eq!(out, expected);
        assert!(matches!(
            extract(&a, &vec![2].into(), &vec![0].into()),
            Err(Error::IndexOutOfBounds { axis: Axis::Row, index: 2, bound: 2 })
        ));
    }

    #[test]
    fn selection_of_identity_permutation() {
        let sr = Semiring::arith_real();
        let s = selection_matrix(&sr, &IndexVector::range(4), 4).unwrap();
        assert_eq!(s, SparseMatrix::identity(&sr, 4).unwrap());
    }

    #[test]
    fn reversal_permutation_applied_twice() {
        let sr = Semiring::arith_real();
        let a = real_matrix(3, 3, &[(0, 1, 1.0), (1, 2, 2.0), (2, 0, 3.0), (2, 2, 4.0)]);
        let rev: IndexVector = (0..3).rev().collect();
        let p = selection_matrix(&sr, &rev, 3).unwrap();
        let once = mxm(&sr, &mxm(&sr, &p, &a).unwrap(), &p.transpose()).unwrap();
        assert_eq!(once.get(0, 0), Some(4.0.into()));
        let twice = mxm(&sr, &mxm(&sr, &p, &once).unwrap(), &p.transpose()).unwrap();
        assert_eq!(twice, a);
    }

    #[test]
    fn assign_total_overwrite() {
        let c = real_matrix(2, 2, &[(0, 0, 9.0), (1, 1, 9.0)]);
        let a = real_matrix(2, 2, &[(0, 1, 1.0)]);
        let out = assign(&c, &IndexVector::range(2), &IndexVector::range(2), &a).unwrap();
        assert_eq!(out, a);
    }

    #[test]
    fn assign_empty_clears_rectangle() {
        let c = real_matrix(3, 3, &[(0, 0, 1.0), (0, 2, 2.0), (1, 1, 3.0), (2, 2, 4.0)]);
        let a = real_matrix(2, 1, &[]);
        let out = assign(&c, &vec![0, 2].into(), &vec![2].into(), &a).unwrap();
        assert_eq!(out, real_matrix(3, 3, &[(0, 0, 1.0), (1, 1, 3.0)]));
    }

    #[test]
    fn assign_errors() {
        let c = real_matrix(3, 3, &[]);
        let a = real_matrix(2, 1, &[]);
        assert!(matches!(
            assign(&c, &vec![1, 1].into(), &vec![0].into(), &a),
            Err(Error::RepeatedIndex { axis: Axis::Row, index: 1 })
        ));
        assert!(matches!(
            assign(&c, &vec![0].into(), &vec![0].into(), &a),
            Err(Error::DimensionMismatch { op: "assign", expected: (1, 1), found: (2, 1) })
        ));
        assert!(assign(&c, &vec![0, 3].into(), &vec![0].into(), &a).is_err());
    }

    #[test]
    fn one_based_index_vectors() {
        assert_eq!(IndexVector::from_one_based(&[1, 2, 4, 7]).unwrap().as_slice(), &[0, 1, 3, 6]);
        assert!(IndexVector::from_one_based(&[0]).is_err());
    }
}
