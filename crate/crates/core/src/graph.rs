//! Graph algorithms written in terms of the kernels.
//!
//! Adjacency rows are out-vertices and columns are in-vertices, so a
//! frontier held as a row vector `v` advances along out-edges as `vᵀA`.

use crate::algebra::{BinaryOp, Domain, Scalar, Semiring};
use crate::error::{Axis, Error, Result};
use crate::kernels::{self, IndexVector};
use crate::matrix::{Dims, SparseMatrix, TripleList};

/// Adjacency and/or incidence view of one graph.
#[derive(Clone, Debug)]
pub struct GraphHandle {
    semiring: Semiring,
    adjacency: Option<SparseMatrix>,
    incidence: Option<(SparseMatrix, SparseMatrix)>,
    directed: bool,
}

impl GraphHandle {
    pub fn from_adjacency(sr: Semiring, adjacency: SparseMatrix, directed: bool) -> Result<Self> {
        if adjacency.domain() != sr.domain() {
            return Err(Error::DomainMismatch {
                expected: sr.domain(),
                found: adjacency.domain(),
            });
        }
        Ok(GraphHandle {
            semiring: sr,
            adjacency: Some(adjacency),
            incidence: None,
            directed,
        })
    }

    /// Keeps the incidence pair and derives the adjacency as `E_outᵀ E_in`.
    pub fn from_incidence(sr: Semiring, e_out: SparseMatrix, e_in: SparseMatrix, directed: bool) -> Result<Self> {
        let adjacency = adjacency_from_incidence(&sr, &e_out, &e_in)?;
        Ok(GraphHandle {
            semiring: sr,
            adjacency: Some(adjacency),
            incidence: Some((e_out, e_in)),
            directed,
        })
    }

    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    pub fn adjacency(&self) -> Option<&SparseMatrix> {
        self.adjacency.as_ref()
    }

    pub fn incidence(&self) -> Option<(&SparseMatrix, &SparseMatrix)> {
        self.incidence.as_ref().map(|(o, i)| (o, i))
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// `(out-vertex count, in-vertex count)`; equal unless bipartite.
    pub fn vertex_counts(&self) -> (usize, usize) {
        match (&self.adjacency, &self.incidence) {
            (Some(a), _) => a.dims().as_tuple(),
            (None, Some((o, i))) => (o.ncols(), i.ncols()),
            (None, None) => (0, 0),
        }
    }

    /// Incidence rows when known, stored adjacency entries otherwise.
    pub fn edge_count(&self) -> usize {
        match (&self.incidence, &self.adjacency) {
            (Some((o, _)), _) => o.nrows(),
            (None, Some(a)) => a.nnz(),
            (None, None) => 0,
        }
    }

    fn adjacency_or_err(&self) -> Result<&SparseMatrix> {
        self.adjacency
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("graph has no adjacency view".into()))
    }

    pub fn union(&self, other: &GraphHandle) -> Result<SparseMatrix> {
        graph_union(&self.semiring, self.adjacency_or_err()?, other.adjacency_or_err()?)
    }

    pub fn intersection(&self, other: &GraphHandle) -> Result<SparseMatrix> {
        graph_intersection(&self.semiring, self.adjacency_or_err()?, other.adjacency_or_err()?)
    }
}

/// `A = E_outᵀ ⊕.⊗ E_in`. Multi-edges fold through `⊕`; a hyper-edge row
/// links every out-vertex to every in-vertex.
pub fn adjacency_from_incidence(sr: &Semiring, e_out: &SparseMatrix, e_in: &SparseMatrix) -> Result<SparseMatrix> {
    if e_out.nrows() != e_in.nrows() {
        return Err(Error::DimensionMismatch {
            op: "adjacency_from_incidence",
            expected: (e_out.nrows(), e_in.ncols()),
            found: e_in.dims().as_tuple(),
        });
    }
    kernels::mxm(sr, &e_out.transpose(), e_in)
}

/// Graph Laplacian `EᵀE` from a signed incidence matrix.
///
/// Each row must hold exactly one `-1` (out-vertex) and one `+1` (in-vertex).
pub fn laplacian_from_incidence(e_signed: &SparseMatrix) -> Result<SparseMatrix> {
    if e_signed.domain() != Domain::Real {
        return Err(Error::DomainMismatch {
            expected: Domain::Real,
            found: e_signed.domain(),
        });
    }
    for k in 0..e_signed.nrows() {
        let (_, vals) = e_signed.row(k);
        let count = |x: f64| vals.iter().filter(|v| **v == Scalar::Real(x)).count();
        if vals.len() != 2 || count(-1.0) != 1 || count(1.0) != 1 {
            let rendered: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
            return Err(Error::InvalidSignedRow {
                row: k,
                detail: format!("expected one -1 and one +1, found [{}]", rendered.join(", ")),
            });
        }
    }
    kernels::mxm(&Semiring::arith_real(), &e_signed.transpose(), e_signed)
}

/// Frontier algebra for [`bfs`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FrontierAlgebra {
    /// Boolean `or.and`: plain reachability.
    #[default]
    OrAnd,
    /// GF(2) `xor.and`: a vertex reached an even number of times from the
    /// frontier cancels out and is not discovered on that hop.
    Gf2,
}

#[derive(Clone, Debug, Default)]
pub struct BfsOptions {
    /// Hop limit; defaults to the vertex count.
    pub max_hops: Option<usize>,
    pub parents: bool,
    pub frontier: FrontierAlgebra,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsResult {
    /// Hop count per vertex, `None` if unreached.
    pub levels: Vec<Option<usize>>,
    /// Smallest-index predecessor on the previous level; `None` for sources
    /// and unreached vertices.
    pub parents: Option<Vec<Option<usize>>>,
}

impl BfsResult {
    /// Vertices at hop `level`, ascending.
    pub fn at_level(&self, level: usize) -> Vec<usize> {
        self.levels
            .iter()
            .enumerate()
            .filter_map(|(v, l)| (*l == Some(level)).then_some(v))
            .collect()
    }
}

/// Breadth-first levels from one or more sources.
pub fn bfs_levels(a: &SparseMatrix, sources: &IndexVector, max_hops: Option<usize>) -> Result<BfsResult> {
    bfs(
        a,
        sources,
        &BfsOptions {
            max_hops,
            ..BfsOptions::default()
        },
    )
}

/// Level-synchronous BFS: the frontier advances as `vᵀA` and already
/// visited vertices are masked out with element-wise operations.
pub fn bfs(a: &SparseMatrix, sources: &IndexVector, opts: &BfsOptions) -> Result<BfsResult> {
    let n = square_order(a, "bfs")?;
    sources.check_bounds(n, Axis::Row)?;

    let structure = a.pattern(Domain::Bool, Scalar::Bool(true))?;
    let product_sr = match opts.frontier {
        FrontierAlgebra::OrAnd => Semiring::or_and(),
        FrontierAlgebra::Gf2 => Semiring::xor_and(),
    };
    let (or, and, xor) = (BinaryOp::or(), BinaryOp::and(), BinaryOp::xor());
    let off = Scalar::Bool(false);
    // parent discovery: min over frontier ids of (id + 0)
    let min_plus = Semiring::min_plus();
    let zero_weights = if opts.parents {
        Some(a.pattern(Domain::Real, Scalar::Real(0.0))?)
    } else {
        None
    };

    let mut levels = vec![None; n];
    let mut parents = opts.parents.then(|| vec![None; n]);
    let seeds: Vec<(usize, Scalar)> = sources.iter().map(|&s| (s, Scalar::Bool(true))).collect();
    let mut frontier = SparseMatrix::row_vector(&Semiring::or_and(), n, &seeds)?;
    let mut visited = frontier.clone();
    for (_, s, _) in frontier.iter() {
        levels[s] = Some(0);
    }

    let max_hops = opts.max_hops.unwrap_or(n);
    for hop in 1..=max_hops {
        if frontier.is_empty() {
            break;
        }
        let reached = kernels::vxm(&product_sr, &frontier, &structure)?;
        // reached ∧ ¬visited == reached ⊻ (reached ∧ visited)
        let seen = kernels::ewise_mult(&and, off, &reached, &visited)?;
        let fresh = kernels::ewise_add(&xor, off, &reached, &seen)?;
        if let (Some(parents), Some(w)) = (parents.as_mut(), zero_weights.as_ref()) {
            let ids: Vec<(usize, Scalar)> = frontier.iter().map(|(_, v, _)| (v, Scalar::Real(v as f64))).collect();
            let ids = SparseMatrix::row_vector(&min_plus, n, &ids)?;
            let best = kernels::vxm(&min_plus, &ids, w)?;
            for (_, v, _) in fresh.iter() {
                parents[v] = best.get(0, v).and_then(|p| p.as_real()).map(|p| p as usize);
            }
        }
        for (_, v, _) in fresh.iter() {
            levels[v] = Some(hop);
        }
        visited = kernels::ewise_add(&or, off, &visited, &fresh)?;
        frontier = fresh;
    }
    Ok(BfsResult { levels, parents })
}

/// Single-source shortest paths by min-plus relaxation.
///
/// `d ← min(d, dᵀA)` until nothing changes or `n - 1` rounds have run.
/// Weights must be non-negative reals; unreachable vertices get `+inf`.
pub fn sssp_minplus(a: &SparseMatrix, source: usize) -> Result<Vec<f64>> {
    let n = square_order(a, "sssp")?;
    if source >= n {
        return Err(Error::IndexOutOfBounds {
            axis: Axis::Row,
            index: source,
            bound: n,
        });
    }
    let sr = Semiring::min_plus();
    if a.domain() != sr.domain() {
        return Err(Error::DomainMismatch {
            expected: sr.domain(),
            found: a.domain(),
        });
    }
    for (row, col, w) in a.iter() {
        let w = w.as_real().unwrap_or(f64::NAN);
        if w.is_nan() || w < 0.0 {
            return Err(Error::NegativeWeight { row, col, weight: w });
        }
    }

    let mut dist = SparseMatrix::row_vector(&sr, n, &[(source, Scalar::Real(0.0))])?;
    for _ in 1..n.max(2) {
        let relaxed = kernels::vxm(&sr, &dist, a)?;
        let next = kernels::ewise_add(sr.add_op(), sr.zero(), &dist, &relaxed)?;
        if next == dist {
            break;
        }
        dist = next;
    }
    let mut out = vec![f64::INFINITY; n];
    for (_, v, d) in dist.iter() {
        out[v] = d.as_real().expect("min-plus values are real");
    }
    Ok(out)
}

/// Union of two graphs, combining parallel edges with `⊕`.
pub fn graph_union(sr: &Semiring, a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    kernels::ewise_add(sr.add_op(), sr.zero(), a, b)
}

/// Intersection of two graphs, scaling shared edges with `⊗`.
pub fn graph_intersection(sr: &Semiring, a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    kernels::ewise_mult(sr.mul_op(), sr.zero(), a, b)
}

/// Signed incidence matrix (`-1` at the out-vertex, `+1` at the in-vertex)
/// for a list of simple edges on `n` vertices.
pub fn signed_incidence(edges: &[(usize, usize)], n: usize) -> Result<SparseMatrix> {
    let mut t = TripleList::with_capacity(2 * edges.len());
    for (k, &(u, v)) in edges.iter().enumerate() {
        if u == v {
            return Err(Error::InvalidSignedRow {
                row: k,
                detail: format!("self-loop at {u} has no signed form"),
            });
        }
        t.push(k, u, Scalar::Real(-1.0));
        t.push(k, v, Scalar::Real(1.0));
    }
    SparseMatrix::build_strict(&Semiring::arith_real(), Dims::new(edges.len(), n)?, &t)
}

fn square_order(a: &SparseMatrix, op: &'static str) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch {
            op,
            expected: (a.nrows(), a.nrows()),
            found: a.dims().as_tuple(),
        });
    }
    Ok(a.nrows())
}
