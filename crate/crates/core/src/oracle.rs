//! Dense brute-force references for the kernels and graph algorithms.
//!
//! Nothing here calls into `kernels` or `graph`; results are computed over
//! full arrays by the textbook loops. Inputs are capped at
//! [`MAX_DENSE`] per side.

use std::collections::VecDeque;

use crate::algebra::{BinaryOp, Domain, Scalar, Semiring};
use crate::error::{Error, Result};
use crate::matrix::{Dims, SparseMatrix};

pub const MAX_DENSE: usize = 128;

/// Row-major `m x n` array with explicit 0-elements.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    nrows: usize,
    ncols: usize,
    zero: Scalar,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn filled(nrows: usize, ncols: usize, zero: Scalar) -> Result<Self> {
        if nrows > MAX_DENSE || ncols > MAX_DENSE {
            return Err(Error::InvalidArgument(format!(
                "dense oracle is limited to {MAX_DENSE}x{MAX_DENSE}, got {nrows}x{ncols}"
            )));
        }
        Ok(DenseMatrix {
            nrows,
            ncols,
            zero,
            data: vec![zero; nrows * ncols],
        })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn zero(&self) -> Scalar {
        self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    fn is_zero(&self, i: usize, j: usize) -> bool {
        self.get(i, j) == self.zero
    }
}

pub fn densify(a: &SparseMatrix, zero: Scalar) -> Result<DenseMatrix> {
    let mut d = DenseMatrix::filled(a.nrows(), a.ncols(), zero)?;
    for (i, j, v) in a.iter() {
        d.set(i, j, v);
    }
    Ok(d)
}

/// Strips 0-elements and rebuilds canonical CSR directly.
pub fn sparsify(d: &DenseMatrix, domain: Domain) -> Result<SparseMatrix> {
    let mut row_ptr = vec![0];
    let mut col_idx = Vec::new();
    let mut vals = Vec::new();
    for i in 0..d.nrows {
        for j in 0..d.ncols {
            if !d.is_zero(i, j) {
                col_idx.push(j);
                vals.push(d.get(i, j));
            }
        }
        row_ptr.push(col_idx.len());
    }
    SparseMatrix::from_csr(Dims::new(d.nrows, d.ncols)?, domain, row_ptr, col_idx, vals)
}

fn mismatch(op: &'static str, expected: (usize, usize), found: (usize, usize)) -> Error {
    Error::DimensionMismatch { op, expected, found }
}

/// Triple loop `C(i,j) = ⊕_k A(i,k) ⊗ B(k,j)` starting from the 0-element.
pub fn dense_mxm(sr: &Semiring, a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.ncols != b.nrows {
        return Err(mismatch("dense_mxm", (a.ncols, b.ncols), (b.nrows, b.ncols)));
    }
    let mut c = DenseMatrix::filled(a.nrows, b.ncols, sr.zero())?;
    for i in 0..a.nrows {
        for j in 0..b.ncols {
            let mut acc = sr.zero();
            for k in 0..a.ncols {
                acc = sr.add(acc, sr.mul(a.get(i, k), b.get(k, j))?)?;
            }
            c.set(i, j, acc);
        }
    }
    Ok(c)
}

/// Union: `op` where both sides are non-zero, the lone value otherwise.
pub fn dense_ewise_add(op: &BinaryOp, a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    dense_ewise(op, a, b, true)
}

/// Intersection: `op` where both sides are non-zero, 0 otherwise.
pub fn dense_ewise_mult(op: &BinaryOp, a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    dense_ewise(op, a, b, false)
}

fn dense_ewise(op: &BinaryOp, a: &DenseMatrix, b: &DenseMatrix, union: bool) -> Result<DenseMatrix> {
    if (a.nrows, a.ncols) != (b.nrows, b.ncols) {
        return Err(mismatch("dense_ewise", (a.nrows, a.ncols), (b.nrows, b.ncols)));
    }
    let mut c = DenseMatrix::filled(a.nrows, a.ncols, a.zero)?;
    for i in 0..a.nrows {
        for j in 0..a.ncols {
            let v = match (a.is_zero(i, j), b.is_zero(i, j)) {
                (false, false) => op.apply(a.get(i, j), b.get(i, j))?,
                (false, true) if union => a.get(i, j),
                (true, false) if union => b.get(i, j),
                _ => a.zero,
            };
            c.set(i, j, v);
        }
    }
    Ok(c)
}

pub fn dense_transpose(a: &DenseMatrix) -> DenseMatrix {
    let mut t = DenseMatrix {
        nrows: a.ncols,
        ncols: a.nrows,
        zero: a.zero,
        data: vec![a.zero; a.data.len()],
    };
    for i in 0..a.nrows {
        for j in 0..a.ncols {
            t.set(j, i, a.get(i, j));
        }
    }
    t
}

/// Gather `C(p, q) = A(rows[p], cols[q])`.
pub fn dense_extract(a: &DenseMatrix, rows: &[usize], cols: &[usize]) -> Result<DenseMatrix> {
    let mut c = DenseMatrix::filled(rows.len(), cols.len(), a.zero)?;
    for (p, &r) in rows.iter().enumerate() {
        for (q, &s) in cols.iter().enumerate() {
            if r >= a.nrows || s >= a.ncols {
                return Err(mismatch("dense_extract", (a.nrows, a.ncols), (r + 1, s + 1)));
            }
            c.set(p, q, a.get(r, s));
        }
    }
    Ok(c)
}

/// Scatter `C(rows[p], cols[q]) = A(p, q)`, zeros included.
pub fn dense_assign(c: &DenseMatrix, rows: &[usize], cols: &[usize], a: &DenseMatrix) -> Result<DenseMatrix> {
    if (a.nrows, a.ncols) != (rows.len(), cols.len()) {
        return Err(mismatch("dense_assign", (rows.len(), cols.len()), (a.nrows, a.ncols)));
    }
    let mut out = c.clone();
    for (p, &r) in rows.iter().enumerate() {
        for (q, &s) in cols.iter().enumerate() {
            out.set(r, s, a.get(p, q));
        }
    }
    Ok(out)
}

/// Queue BFS over the non-zero pattern. `levels[v]` is the hop count from
/// the nearest source, `None` when unreached within `max_hops`.
#[allow(clippy::needless_range_loop)]
pub fn dense_bfs(a: &DenseMatrix, sources: &[usize], max_hops: Option<usize>) -> Vec<Option<usize>> {
    let n = a.nrows;
    let mut levels = vec![None; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        if levels[s].is_none() {
            levels[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let d = levels[u].unwrap();
        if max_hops.is_some_and(|h| d >= h) {
            continue;
        }
        for v in 0..a.ncols {
            if !a.is_zero(u, v) && levels[v].is_none() {
                levels[v] = Some(d + 1);
                queue.push_back(v);
            }
        }
    }
    levels
}

/// O(n²) Dijkstra over real non-negative weights; unreached is `+inf`.
pub fn dense_sssp(a: &DenseMatrix, source: usize) -> Result<Vec<f64>> {
    let n = a.nrows;
    let weight = |u: usize, v: usize| -> Result<Option<f64>> {
        if a.is_zero(u, v) {
            return Ok(None);
        }
        match a.get(u, v) {
            Scalar::Real(w) if w >= 0.0 => Ok(Some(w)),
            other => Err(Error::InvalidArgument(format!("dense_sssp needs non-negative reals, got {other}"))),
        }
    };
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[source] = 0.0;
    for _ in 0..n {
        let Some(u) = (0..n)
            .filter(|&v| !done[v] && dist[v].is_finite())
            .min_by(|&x, &y| dist[x].total_cmp(&dist[y]))
        else {
            break;
        };
        done[u] = true;
        for v in 0..n {
            if let Some(w) = weight(u, v)? {
                if dist[u] + w < dist[v] {
                    dist[v] = dist[u] + w;
                }
            }
        }
    }
    Ok(dist)
}
