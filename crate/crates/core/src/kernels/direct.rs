//! Kernel bodies without argument validation.
//!
//! Callers must already have checked dimensions, index bounds and domains;
//! violating those preconditions panics or yields garbage. The checked
//! entry points live in the parent module. These are public so the overhead
//! harness can time the API layer against the bare kernels.

use crate::algebra::{BinaryOp, Scalar, Semiring};
use crate::error::Result;
use crate::matrix::{Dims, SparseMatrix};

/// Row-wise (Gustavson) `A ⊕.⊗ B`. Each output row is reduced in ascending
/// inner index order.
pub fn mxm(sr: &Semiring, a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    let (m, n) = (a.nrows(), b.ncols());
    let (add, mul, zero) = (sr.add_op(), sr.mul_op(), sr.zero());
    let mut acc: Vec<Option<Scalar>> = vec![None; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut row_ptr = Vec::with_capacity(m + 1);
    let mut col_idx = Vec::new();
    let mut vals = Vec::new();
    row_ptr.push(0);

    for i in 0..m {
        let (acols, avals) = a.row(i);
        for (&k, &av) in acols.iter().zip(avals) {
            let (bcols, bvals) = b.row(k);
            for (&j, &bv) in bcols.iter().zip(bvals) {
                let prod = mul.apply(av, bv)?;
                match &mut acc[j] {
                    Some(cur) => *cur = add.apply(*cur, prod)?,
                    slot => {
                        *slot = Some(prod);
                        touched.push(j);
                    }
                }
            }
        }
        touched.sort_unstable();
        for &j in &touched {
            let v = acc[j].take().expect("touched slot holds a value");
            if v != zero {
                col_idx.push(j);
                vals.push(v);
            }
        }
        touched.clear();
        row_ptr.push(col_idx.len());
    }
    Ok(SparseMatrix::from_csr_unchecked(
        Dims::new(m, n)?,
        sr.domain(),
        row_ptr,
        col_idx,
        vals,
    ))
}

/// `A ⊕.⊗ v` for a column vector `v`: one sparse dot product per row of `A`.
pub fn mxv(sr: &Semiring, a: &SparseMatrix, v: &SparseMatrix) -> Result<SparseMatrix> {
    let (add, mul, zero) = (sr.add_op(), sr.mul_op(), sr.zero());
    let mut dense: Vec<Option<Scalar>> = vec![None; v.nrows()];
    for (i, _, x) in v.iter() {
        dense[i] = Some(x);
    }
    let m = a.nrows();
    let mut row_ptr = Vec::with_capacity(m + 1);
    let mut col_idx = Vec::new();
    let mut vals = Vec::new();
    row_ptr.push(0);
    for i in 0..m {
        let (cols, avals) = a.row(i);
        let mut sum: Option<Scalar> = None;
        for (&k, &av) in cols.iter().zip(avals) {
            if let Some(x) = dense[k] {
                let prod = mul.apply(av, x)?;
                sum = Some(match sum {
                    Some(s) => add.apply(s, prod)?,
                    None => prod,
                });
            }
        }
        if let Some(s) = sum.filter(|s| *s != zero) {
            col_idx.push(0);
            vals.push(s);
        }
        row_ptr.push(col_idx.len());
    }
    Ok(SparseMatrix::from_csr_unchecked(
        Dims::new(m, 1)?,
        sr.domain(),
        row_ptr,
        col_idx,
        vals,
    ))
}

/// `vᵀ ⊕.⊗ A` for a row vector `v`; touches only the rows of `A` that `v` selects.
pub fn vxm(sr: &Semiring, v: &SparseMatrix, a: &SparseMatrix) -> Result<SparseMatrix> {
    mxm(sr, v, a)
}

/// Union of structures; `op` combines entries present in both.
pub fn ewise_add(op: &BinaryOp, zero: Scalar, a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    let m = a.nrows();
    let mut row_ptr = Vec::with_capacity(m + 1);
    let mut col_idx = Vec::with_capacity(a.nnz().max(b.nnz()));
    let mut vals = Vec::with_capacity(a.nnz().max(b.nnz()));
    row_ptr.push(0);
    for i in 0..m {
        let (ac, av) = a.row(i);
        let (bc, bv) = b.row(i);
        let (mut p, mut q) = (0, 0);
        while p < ac.len() && q < bc.len() {
            let (c, v) = if ac[p] == bc[q] {
                let out = (ac[p], op.apply(av[p], bv[q])?);
                p += 1;
                q += 1;
                out
            } else if ac[p] < bc[q] {
                p += 1;
                (ac[p - 1], av[p - 1])
            } else {
                q += 1;
                (bc[q - 1], bv[q - 1])
            };
            if v != zero {
                col_idx.push(c);
                vals.push(v);
            }
        }
        for (c, v) in ac[p..].iter().zip(&av[p..]).chain(bc[q..].iter().zip(&bv[q..])) {
            if *v != zero {
                col_idx.push(*c);
                vals.push(*v);
            }
        }
        row_ptr.push(col_idx.len());
    }
    Ok(SparseMatrix::from_csr_unchecked(a.dims(), a.domain(), row_ptr, col_idx, vals))
}

/// Intersection of structures with `op` applied entry-wise.
pub fn ewise_mult(op: &BinaryOp, zero: Scalar, a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    let m = a.nrows();
    let mut row_ptr = Vec::with_capacity(m + 1);
    let mut col_idx = Vec::new();
    let mut vals = Vec::new();
    row_ptr.push(0);
    for i in 0..m {
        let (ac, av) = a.row(i);
        let (bc, bv) = b.row(i);
        let (mut p, mut q) = (0, 0);
        while p < ac.len() && q < bc.len() {
            match ac[p].cmp(&bc[q]) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    let v = op.apply(av[p], bv[q])?;
                    if v != zero {
                        col_idx.push(ac[p]);
                        vals.push(v);
                    }
                    p += 1;
                    q += 1;
                }
            }
        }
        row_ptr.push(col_idx.len());
    }
    Ok(SparseMatrix::from_csr_unchecked(a.dims(), a.domain(), row_ptr, col_idx, vals))
}

/// `C(p, q) = A(rows[p], cols[q])`. Repeated indices replicate, order permutes.
pub fn extract(a: &SparseMatrix, rows: &[usize], cols: &[usize]) -> Result<SparseMatrix> {
    // bucket target positions by source column
    let n = a.ncols();
    let mut start = vec![0usize; n + 1];
    for &c in cols {
        start[c + 1] += 1;
    }
    for c in 0..n {
        start[c + 1] += start[c];
    }
    let mut next = start.clone();
    let mut targets = vec![0usize; cols.len()];
    for (q, &c) in cols.iter().enumerate() {
        targets[next[c]] = q;
        next[c] += 1;
    }

    let mut row_ptr = Vec::with_capacity(rows.len() + 1);
    let mut col_idx = Vec::new();
    let mut vals = Vec::new();
    let mut buf: Vec<(usize, Scalar)> = Vec::new();
    row_ptr.push(0);
    for &r in rows {
        buf.clear();
        let (ac, av) = a.row(r);
        for (&c, &v) in ac.iter().zip(av) {
            buf.extend(targets[start[c]..start[c + 1]].iter().map(|&q| (q, v)));
        }
        buf.sort_unstable_by_key(|&(q, _)| q);
        for &(q, v) in &buf {
            col_idx.push(q);
            vals.push(v);
        }
        row_ptr.push(col_idx.len());
    }
    Ok(SparseMatrix::from_csr_unchecked(
        Dims::new(rows.len(), cols.len())?,
        a.domain(),
        row_ptr,
        col_idx,
        vals,
    ))
}

/// `|idx| x n_source` matrix with `one` at `(p, idx[p])`.
pub fn selection_matrix(one: Scalar, sr: &Semiring, idx: &[usize], n_source: usize) -> Result<SparseMatrix> {
    Ok(SparseMatrix::from_csr_unchecked(
        Dims::new(idx.len(), n_source)?,
        sr.domain(),
        (0..=idx.len()).collect(),
        idx.to_vec(),
        vec![one; idx.len()],
    ))
}

/// Overwrites the `rows x cols` image of `C` with `A`; positions `A` leaves
/// implicit become implicit in the result. Indices must not repeat.
pub fn assign(c: &SparseMatrix, rows: &[usize], cols: &[usize], a: &SparseMatrix) -> Result<SparseMatrix> {
    const UNSET: usize = usize::MAX;
    let mut row_slot = vec![UNSET; c.nrows()];
    for (p, &r) in rows.iter().enumerate() {
        row_slot[r] = p;
    }
    let mut col_selected = vec![false; c.ncols()];
    for &j in cols {
        col_selected[j] = true;
    }

    let mut row_ptr = Vec::with_capacity(c.nrows() + 1);
    let mut col_idx = Vec::with_capacity(c.nnz());
    let mut vals = Vec::with_capacity(c.nnz());
    let mut buf: Vec<(usize, Scalar)> = Vec::new();
    row_ptr.push(0);
    for (r, &slot) in row_slot.iter().enumerate().take(c.nrows()) {
        let (cc, cv) = c.row(r);
        if slot == UNSET {
            col_idx.extend_from_slice(cc);
            vals.extend_from_slice(cv);
        } else {
            buf.clear();
            buf.extend(
                cc.iter()
                    .zip(cv)
                    .filter(|(&j, _)| !col_selected[j])
                    .map(|(&j, &v)| (j, v)),
            );
            let (ac, av) = a.row(slot);
            buf.extend(ac.iter().zip(av).map(|(&q, &v)| (cols[q], v)));
            buf.sort_unstable_by_key(|&(j, _)| j);
            for &(j, v) in &buf {
                col_idx.push(j);
                vals.push(v);
            }
        }
        row_ptr.push(col_idx.len());
    }
    Ok(SparseMatrix::from_csr_unchecked(c.dims(), c.domain(), row_ptr, col_idx, vals))
}
