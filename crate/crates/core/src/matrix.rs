//! Compressed sparse row storage and the structural operations on it.

use crate::algebra::{BinaryOp, Domain, Scalar, Semiring};
use crate::error::{Axis, Error, Result};
use crate::algebra::laws::scalars_close;

/// Matrix shape. Both extents are at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dims {
    nrows: usize,
    ncols: usize,
}

impl Dims {
    pub fn new(nrows: usize, ncols: usize) -> Result<Self> {
        if nrows == 0 || ncols == 0 {
            return Err(Error::EmptyDimension { nrows, ncols });
        }
        Ok(Dims { nrows, ncols })
    }

    pub fn nrows(self) -> usize {
        self.nrows
    }

    pub fn ncols(self) -> usize {
        self.ncols
    }

    pub fn transposed(self) -> Self {
        Dims {
            nrows: self.ncols,
            ncols: self.nrows,
        }
    }

    pub fn as_tuple(self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }
}

/// Parallel row/column/value vectors.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TripleList {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub vals: Vec<Scalar>,
}

impl TripleList {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>, vals: Vec<Scalar>) -> Self {
        TripleList { rows, cols, vals }
    }

    pub fn with_capacity(n: usize) -> Self {
        TripleList {
            rows: Vec::with_capacity(n),
            cols: Vec::with_capacity(n),
            vals: Vec::with_capacity(n),
        }
    }

    pub fn push(&mut self, row: usize, col: usize, val: Scalar) {
        self.rows.push(row);
        self.cols.push(col);
        self.vals.push(val);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Scalar)> + '_ {
        self.rows
            .iter()
            .zip(&self.cols)
            .zip(&self.vals)
            .map(|((&r, &c), &v)| (r, c, v))
    }

    fn check_lengths(&self) -> Result<()> {
        let (rows, cols, vals) = (self.rows.len(), self.cols.len(), self.vals.len());
        if rows != cols || rows != vals {
            return Err(Error::LengthMismatch { rows, cols, vals });
        }
        Ok(())
    }
}

impl FromIterator<(usize, usize, Scalar)> for TripleList {
    fn from_iter<I: IntoIterator<Item = (usize, usize, Scalar)>>(iter: I) -> Self {
        let mut t = TripleList::default();
        for (r, c, v) in iter {
            t.push(r, c, v);
        }
        t
    }
}

/// How [`SparseMatrix::build_raw`] treats repeated `(row, col)` keys.
#[derive(Clone, Copy, Debug)]
pub enum Duplicates<'a> {
    /// Fold repeats left to right in input order.
    Combine(&'a BinaryOp),
    /// Repeats are an error.
    Reject,
}

/// A sparse matrix in canonical CSR form.
///
/// Column indices are strictly increasing within each row, so two matrices
/// holding the same entries compare equal with `==`. Values equal to the
/// 0-element of the semiring that produced them are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    dims: Dims,
    domain: Domain,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<Scalar>,
}

impl SparseMatrix {
    pub fn empty(dims: Dims, domain: Domain) -> Self {
        SparseMatrix {
            dims,
            domain,
            row_ptr: vec![0; dims.nrows + 1],
            col_idx: Vec::new(),
            vals: Vec::new(),
        }
    }

    /// Multiplicative-identity diagonal of size `n`.
    pub fn identity(sr: &Semiring, n: usize) -> Result<Self> {
        let one = sr.one()?;
        let dims = Dims::new(n, n)?;
        Ok(SparseMatrix {
            dims,
            domain: sr.domain(),
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            vals: vec![one; n],
        })
    }

    /// Wraps CSR arrays after checking that they are canonical.
    pub fn from_csr(
        dims: Dims,
        domain: Domain,
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
        vals: Vec<Scalar>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::Invariant(msg));
        if row_ptr.len() != dims.nrows + 1 || row_ptr[0] != 0 {
            return bad(format!("row pointer of length {} for {} rows", row_ptr.len(), dims.nrows));
        }
        if col_idx.len() != vals.len() || *row_ptr.last().unwrap() != col_idx.len() {
            return bad("row pointer, column and value arrays disagree".into());
        }
        for (i, w) in row_ptr.windows(2).enumerate() {
            if w[0] > w[1] {
                return bad(format!("row pointer decreases at row {i}"));
            }
            let cols = &col_idx[w[0]..w[1]];
            if cols.windows(2).any(|p| p[0] >= p[1]) {
                return bad(format!("columns of row {i} are not strictly increasing"));
            }
            if let Some(&c) = cols.last() {
                if c >= dims.ncols {
                    return Err(Error::IndexOutOfBounds {
                        axis: Axis::Col,
                        index: c,
                        bound: dims.ncols,
                    });
                }
            }
        }
        if let Some(v) = vals.iter().find(|v| !domain.admits(v)) {
            return Err(Error::DomainMismatch {
                expected: domain,
                found: scalar_domain(v, domain),
            });
        }
        Ok(SparseMatrix {
            dims,
            domain,
            row_ptr,
            col_idx,
            vals,
        })
    }

    pub(crate) fn from_csr_unchecked(
        dims: Dims,
        domain: Domain,
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
        vals: Vec<Scalar>,
    ) -> Self {
        debug_assert_eq!(row_ptr.len(), dims.nrows + 1);
        debug_assert_eq!(col_idx.len(), vals.len());
        SparseMatrix {
            dims,
            domain,
            row_ptr,
            col_idx,
            vals,
        }
    }

    /// Builds a matrix from triples with the semiring's `⊕` folding duplicates.
    pub fn build(sr: &Semiring, dims: Dims, triples: &TripleList) -> Result<Self> {
        for v in &triples.vals {
            sr.check(v)?;
        }
        Self::build_raw(
            dims,
            sr.domain(),
            triples,
            Duplicates::Combine(sr.add_op()),
            Some(sr.zero()),
        )
    }

    /// Like [`build`](Self::build) but repeated keys are an error.
    pub fn build_strict(sr: &Semiring, dims: Dims, triples: &TripleList) -> Result<Self> {
        for v in &triples.vals {
            sr.check(v)?;
        }
        Self::build_raw(dims, sr.domain(), triples, Duplicates::Reject, Some(sr.zero()))
    }

    /// Builds from triples.
    ///
    /// Entries are grouped by key; duplicates are handled per `dup`, and any
    /// value (folded or not) equal to `zero` is dropped. With `zero = None`
    /// every value is kept.
    pub fn build_raw(
        dims: Dims,
        domain: Domain,
        triples: &TripleList,
        dup: Duplicates<'_>,
        zero: Option<Scalar>,
    ) -> Result<Self> {
        triples.check_lengths()?;
        let (m, n) = dims.as_tuple();
        for (r, c, v) in triples.iter() {
            if r >= m {
                return Err(Error::IndexOutOfBounds {
                    axis: Axis::Row,
                    index: r,
                    bound: m,
                });
            }
            if c >= n {
                return Err(Error::IndexOutOfBounds {
                    axis: Axis::Col,
                    index: c,
                    bound: n,
                });
            }
            if !domain.admits(&v) {
                return Err(Error::DomainMismatch {
                    expected: domain,
                    found: scalar_domain(&v, domain),
                });
            }
        }

        // Stable counting sort by row keeps input order inside each row.
        let mut counts = vec![0usize; m + 1];
        for &r in &triples.rows {
            counts[r + 1] += 1;
        }
        for i in 0..m {
            counts[i + 1] += counts[i];
        }
        let mut order = vec![0usize; triples.len()];
        let mut next = counts.clone();
        for (k, &r) in triples.rows.iter().enumerate() {
            order[next[r]] = k;
            next[r] += 1;
        }

        let mut row_ptr = Vec::with_capacity(m + 1);
        let mut col_idx = Vec::with_capacity(triples.len());
        let mut vals = Vec::with_capacity(triples.len());
        row_ptr.push(0);
        let mut row_buf: Vec<(usize, Scalar)> = Vec::new();
        for i in 0..m {
            row_buf.clear();
            row_buf.extend(
                order[counts[i]..counts[i + 1]]
                    .iter()
                    .map(|&k| (triples.cols[k], triples.vals[k])),
            );
            // stable: duplicates stay in input order
            row_buf.sort_by_key(|&(c, _)| c);
            let mut k = 0;
            while k < row_buf.len() {
                let (c, mut acc) = row_buf[k];
                k += 1;
                while k < row_buf.len() && row_buf[k].0 == c {
                    acc = match dup {
                        Duplicates::Combine(op) => op.apply(acc, row_buf[k].1)?,
                        Duplicates::Reject => return Err(Error::DuplicateEntry { row: i, col: c }),
                    };
                    k += 1;
                }
                if zero != Some(acc) {
                    col_idx.push(c);
                    vals.push(acc);
                }
            }
            row_ptr.push(col_idx.len());
        }
        Ok(SparseMatrix {
            dims,
            domain,
            row_ptr,
            col_idx,
            vals,
        })
    }

    /// Column vector (`n x 1`) from `(index, value)` pairs.
    pub fn column_vector(sr: &Semiring, n: usize, entries: &[(usize, Scalar)]) -> Result<Self> {
        let t = entries.iter().map(|&(i, v)| (i, 0, v)).collect();
        Self::build(sr, Dims::new(n, 1)?, &t)
    }

    /// Row vector (`1 x n`) from `(index, value)` pairs.
    pub fn row_vector(sr: &Semiring, n: usize, entries: &[(usize, Scalar)]) -> Result<Self> {
        let t = entries.iter().map(|&(i, v)| (0, i, v)).collect();
        Self::build(sr, Dims::new(1, n)?, &t)
    }

    /// All stored entries in row-major order.
    pub fn extract_tuples(&self) -> TripleList {
        let mut t = TripleList::with_capacity(self.nnz());
        for (r, c, v) in self.iter() {
            t.push(r, c, v);
        }
        t
    }

    /// Swaps rows and columns.
    pub fn transpose(&self) -> SparseMatrix {
        let (m, n) = self.dims.as_tuple();
        let mut row_ptr = vec![0usize; n + 1];
        for &c in &self.col_idx {
            row_ptr[c + 1] += 1;
        }
        for j in 0..n {
            row_ptr[j + 1] += row_ptr[j];
        }
        let mut next = row_ptr.clone();
        let mut col_idx = vec![0usize; self.nnz()];
        let mut vals = vec![Scalar::Bool(false); self.nnz()];
        for i in 0..m {
            let (cols, vs) = self.row(i);
            for (&c, &v) in cols.iter().zip(vs) {
                let slot = next[c];
                col_idx[slot] = i;
                vals[slot] = v;
                next[c] += 1;
            }
        }
        SparseMatrix {
            dims: self.dims.transposed(),
            domain: self.domain,
            row_ptr,
            col_idx,
            vals,
        }
    }

    /// Same structure with every stored value replaced by `value`.
    pub fn pattern(&self, domain: Domain, value: Scalar) -> Result<SparseMatrix> {
        if !domain.admits(&value) {
            return Err(Error::DomainMismatch {
                expected: domain,
                found: scalar_domain(&value, domain),
            });
        }
        Ok(SparseMatrix {
            dims: self.dims,
            domain,
            row_ptr: self.row_ptr.clone(),
            col_idx: self.col_idx.clone(),
            vals: vec![value; self.nnz()],
        })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn nrows(&self) -> usize {
        self.dims.nrows
    }

    pub fn ncols(&self) -> usize {
        self.dims.ncols
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Number of stored entries.
    pub fn nnz(&self) -> usize {
        self.col_idx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.col_idx.is_empty()
    }

    /// Column indices and values of row `i`.
    #[inline]
    pub fn row(&self, i: usize) -> (&[usize], &[Scalar]) {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[range.clone()], &self.vals[range])
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Scalar> {
        if i >= self.nrows() {
            return None;
        }
        let (cols, vals) = self.row(i);
        cols.binary_search(&j).ok().map(|k| vals[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Scalar)> + '_ {
        (0..self.nrows()).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&c, &v)| (i, c, v))
        })
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_idx
    }

    pub fn values(&self) -> &[Scalar] {
        &self.vals
    }

    /// True if any stored value equals `zero`.
    pub fn stores_value(&self, zero: &Scalar) -> bool {
        self.vals.iter().any(|v| v == zero)
    }

    /// Entry-wise comparison where absent entries read as `zero` and reals
    /// agree to `rel` relative tolerance.
    pub fn approx_eq(&self, other: &SparseMatrix, zero: Scalar, rel: f64) -> bool {
        self.dims == other.dims && self.domain == other.domain && densify_close(self, other, zero, rel)
    }
}

fn densify_close(a: &SparseMatrix, b: &SparseMatrix, zero: Scalar, rel: f64) -> bool {
    for i in 0..a.nrows() {
        let (ac, av) = a.row(i);
        let (bc, bv) = b.row(i);
        let (mut p, mut q) = (0, 0);
        while p < ac.len() || q < bc.len() {
            let (x, y) = match (ac.get(p), bc.get(q)) {
                (Some(&ca), Some(&cb)) if ca == cb => {
                    p += 1;
                    q += 1;
                    (av[p - 1], bv[q - 1])
                }
                (Some(&ca), Some(&cb)) if ca < cb => {
                    p += 1;
                    (av[p - 1], zero)
                }
                (Some(_), None) => {
                    p += 1;
                    (av[p - 1], zero)
                }
                _ => {
                    q += 1;
                    (zero, bv[q - 1])
                }
            };
            if !scalars_close(&x, &y, rel, 0.0) {
                return false;
            }
        }
    }
    true
}

fn scalar_domain(v: &Scalar, hint: Domain) -> Domain {
    match v {
        Scalar::Real(_) => Domain::Real,
        Scalar::Int(_) => Domain::Int,
        Scalar::Nat(_) => Domain::Nat,
        Scalar::Bool(_) => Domain::Bool,
        Scalar::Set(_) => match hint {
            Domain::Set(u) => Domain::Set(u),
            _ => Domain::Set(64),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn real(x: f64) -> Scalar {
        Scalar::Real(x)
    }

    #[test]
    fn dims_reject_zero_extent() {
        assert!(Dims::new(0, 3).is_err());
        assert!(Dims::new(3, 0).is_err());
    }

    #[test]
    fn build_folds_duplicates() {
        let sr = Semiring::arith_real();
        let t = TripleList::new(vec![0, 0], vec![0, 0], vec![real(5.0), real(3.0)]);
        let a = SparseMatrix::build(&sr, Dims::new(2, 2).unwrap(), &t).unwrap();
        assert_eq!(a.nnz(), 1);
        assert_eq!(a.get(0, 0), Some(real(8.0)));
    }

    #[test]
    fn build_drops_folded_zeros() {
        let sr = Semiring::arith_real();
        let t = TripleList::new(vec![0, 0, 1], vec![1, 1, 1], vec![real(2.0), real(-2.0), real(0.0)]);
        let a = SparseMatrix::build(&sr, Dims::new(2, 2).unwrap(), &t).unwrap();
        assert!(a.is_empty());
    }

    #[test]
    fn build_folds_left_to_right() {
        let t = TripleList::new(vec![1, 1, 1], vec![0, 0, 0], vec![real(1.0), real(2.0), real(3.0)]);
        let dims = Dims::new(2, 1).unwrap();
        let first = SparseMatrix::build_raw(dims, Domain::Real, &t, Duplicates::Combine(&BinaryOp::first()), None);
        let second = SparseMatrix::build_raw(dims, Domain::Real, &t, Duplicates::Combine(&BinaryOp::second()), None);
        assert_eq!(first.unwrap().get(1, 0), Some(real(1.0)));
        assert_eq!(second.unwrap().get(1, 0), Some(real(3.0)));
    }

    #[test]
    fn build_errors() {
        let sr = Semiring::arith_real();
        let dims = Dims::new(3, 3).unwrap();
        let oob = TripleList::new(vec![3], vec![0], vec![real(1.0)]);
        assert!(matches!(
            SparseMatrix::build(&sr, dims, &oob),
            Err(Error::IndexOutOfBounds { axis: Axis::Row, index: 3, bound: 3 })
        ));
        let ragged = TripleList::new(vec![0, 1], vec![0], vec![real(1.0)]);
        assert!(matches!(SparseMatrix::build(&sr, dims, &ragged), Err(Error::LengthMismatch { .. })));
        let dup = TripleList::new(vec![1, 1], vec![2, 2], vec![real(1.0), real(1.0)]);
        assert!(matches!(
            SparseMatrix::build_strict(&sr, dims, &dup),
            Err(Error::DuplicateEntry { row: 1, col: 2 })
        ));
        let wrong = TripleList::new(vec![0], vec![0], vec![Scalar::Nat(1)]);
        assert!(SparseMatrix::build(&sr, dims, &wrong).is_err());
    }

    #[test]
    fn empty_build_has_no_tuples() {
        let sr = Semiring::arith_real();
        let a = SparseMatrix::build(&sr, Dims::new(3, 3).unwrap(), &TripleList::default()).unwrap();
        assert_eq!(a.extract_tuples().len(), 0);
        assert_eq!(a, SparseMatrix::empty(Dims::new(3, 3).unwrap(), Domain::Real));
    }

    #[test]
    fn row_vector_transposes_to_column() {
        let sr = Semiring::arith_real();
        let v = SparseMatrix::row_vector(&sr, 3, &[(0, real(1.0)), (2, real(3.0))]).unwrap();
        let t = v.transpose();
        assert_eq!(t.dims().as_tuple(), (3, 1));
        assert_eq!(t.get(0, 0), Some(real(1.0)));
        assert_eq!(t.get(2, 0), Some(real(3.0)));
        assert_eq!(t.nnz(), 2);
    }

    #[test]
    fn from_csr_validates() {
        let d = Dims::new(2, 3).unwrap();
        assert!(SparseMatrix::from_csr(d, Domain::Real, vec![0, 2, 2], vec![2, 1], vec![real(1.0); 2]).is_err());
        assert!(SparseMatrix::from_csr(d, Domain::Real, vec![0, 1, 2], vec![0, 3], vec![real(1.0); 2]).is_err());
        assert!(SparseMatrix::from_csr(d, Domain::Real, vec![0, 1, 2], vec![0, 2], vec![real(1.0); 2]).is_ok());
    }

    fn arb_triples(m: usize, n: usize) -> impl Strategy<Value = TripleList> {
        proptest::collection::vec((0..m, 0..n, -3i64..=3), 0..40).prop_map(|v| {
            v.into_iter()
                .map(|(r, c, x)| (r, c, Scalar::Real(x as f64)))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn build_of_extract_is_identity(t in arb_triples(6, 5)) {
            let sr = Semiring::arith_real();
            let dims = Dims::new(6, 5).unwrap();
            let a = SparseMatrix::build(&sr, dims, &t).unwrap();
            prop_assert!(a.nnz() <= t.len());
            prop_assert!(!a.stores_value(&sr.zero()));
            let again = SparseMatrix::build(&sr, dims, &a.extract_tuples()).unwrap();
            prop_assert_eq!(&again, &a);
        }

        #[test]
        fn transpose_is_an_involution(t in arb_triples(4, 7)) {
            let sr = Semiring::arith_real();
            let a = SparseMatrix::build(&sr, Dims::new(4, 7).unwrap(), &t).unwrap();
            prop_assert_eq!(a.transpose().transpose(), a.clone());
            // transpose through swapped triples
            let tt = a.extract_tuples();
            let swapped = TripleList::new(tt.cols, tt.rows, tt.vals);
            let via_build = SparseMatrix::build(&sr, Dims::new(7, 4).unwrap(), &swapped).unwrap();
            prop_assert_eq!(via_build, a.transpose());
        }

        #[test]
        fn build_matches_sort_and_fold(t in arb_triples(5, 5)) {
            let sr = Semiring::arith_real();
            let a = SparseMatrix::build(&sr, Dims::new(5, 5).unwrap(), &t).unwrap();
            let mut acc = std::collections::BTreeMap::new();
            for (r, c, v) in t.iter() {
                *acc.entry((r, c)).or_insert(0.0) += v.as_real().unwrap();
            }
            let expected: Vec<_> = acc.into_iter().filter(|&(_, v)| v != 0.0).collect();
            let got: Vec<_> = a.iter().map(|(r, c, v)| ((r, c), v.as_real().unwrap())).collect();
            prop_assert_eq!(got, expected);
        }
    }
}
