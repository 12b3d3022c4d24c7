//! Seeded random graph generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BinaryOp, Scalar, Semiring};
use crate::error::{Error, Result};
use crate::matrix::{Dims, Duplicates, SparseMatrix, TripleList};

/// Quadrant probabilities `(a, b, c, d)` used for Graph500-style graphs.
pub const RMAT_PARAMS: [f64; 4] = [0.57, 0.19, 0.19, 0.05];

/// Largest scale the generators accept (`2^26` vertices).
pub const MAX_GENERATOR_SCALE: u32 = 26;

/// `edge_factor · 2^scale` directed edges on `2^scale` vertices.
pub fn rmat_edges(scale: u32, edge_factor: usize, seed: u64) -> Result<Vec<(usize, usize)>> {
    if scale == 0 || scale > MAX_GENERATOR_SCALE {
        return Err(Error::InvalidArgument(format!(
            "scale must be in 1..={MAX_GENERATOR_SCALE}, got {scale}"
        )));
    }
    let [a, b, c, _] = RMAT_PARAMS;
    let n = 1usize << scale;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(edge_factor * n);
    for _ in 0..edge_factor * n {
        let (mut u, mut v) = (0usize, 0usize);
        for bit in (0..scale).rev() {
            let p: f64 = rng.gen();
            let (du, dv) = if p < a {
                (0, 0)
            } else if p < a + b {
                (0, 1)
            } else if p < a + b + c {
                (1, 0)
            } else {
                (1, 1)
            };
            u |= du << bit;
            v |= dv << bit;
        }
        edges.push((u, v));
    }
    Ok(edges)
}

/// Each ordered pair `(u, v)`, `u != v`, is an edge with probability `p`.
pub fn erdos_renyi_edges(n: usize, p: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Adjacency matrix over `sr` with random non-zero values from
/// [`Semiring::sample`]. Undirected graphs store both directions with the
/// same value; the first occurrence of a repeated edge wins.
pub fn adjacency_from_edges(
    sr: &Semiring,
    n: usize,
    edges: &[(usize, usize)],
    undirected: bool,
    seed: u64,
) -> Result<SparseMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let zero = sr.zero();
    let mut t = TripleList::with_capacity(edges.len() * (1 + usize::from(undirected)));
    for &(u, v) in edges {
        let w = nonzero_sample(sr, zero, &mut rng);
        t.push(u, v, w);
        if undirected && u != v {
            t.push(v, u, w);
        }
    }
    let first = BinaryOp::first();
    SparseMatrix::build_raw(Dims::new(n, n)?, sr.domain(), &t, Duplicates::Combine(&first), Some(zero))
}

fn nonzero_sample<R: Rng>(sr: &Semiring, zero: Scalar, rng: &mut R) -> Scalar {
    loop {
        let v = sr.sample(rng);
        if v != zero {
            return v;
        }
    }
}

/// Undirected R-MAT graph over `sr`, vertex count `2^scale`.
pub fn rmat(sr: &Semiring, scale: u32, edge_factor: usize, seed: u64) -> Result<SparseMatrix> {
    let edges = rmat_edges(scale, edge_factor, seed)?;
    adjacency_from_edges(sr, 1 << scale, &edges, true, seed)
}

/// Directed Erdős–Rényi graph over `sr`.
pub fn erdos_renyi(sr: &Semiring, n: usize, p: f64, seed: u64) -> Result<SparseMatrix> {
    let edges = erdos_renyi_edges(n, p, seed);
    adjacency_from_edges(sr, n, &edges, false, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rmat_is_deterministic() {
        let sr = Semiring::arith_real();
        let a = rmat(&sr, 6, 4, 7).unwrap();
        let b = rmat(&sr, 6, 4, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, a.transpose());
        assert_ne!(a, rmat(&sr, 6, 4, 8).unwrap());
    }

    #[test]
    fn rmat_skews_toward_low_ids() {
        let edges = rmat_edges(8, 8, 1).unwrap();
        let low = edges.iter().filter(|&&(u, _)| u < 128).count();
        assert!(low as f64 / edges.len() as f64 > 0.7);
    }

    #[test]
    fn erdos_renyi_has_no_self_loops() {
        let g = erdos_renyi(&Semiring::or_and(), 20, 0.3, 3).unwrap();
        assert!(g.iter().all(|(i, j, _)| i != j));
        assert!(g.nnz() > 0);
    }

    #[test]
    fn scale_guard() {
        assert!(rmat_edges(0, 1, 0).is_err());
        assert!(rmat_edges(MAX_GENERATOR_SCALE + 1, 1, 0).is_err());
    }
}
