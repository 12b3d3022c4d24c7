#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparsegraph_core::io::{self, EdgeListOptions};
use sparsegraph_core::oracle::DenseMatrix;
use sparsegraph_core::{semiring_by_name, Dims, Domain, Scalar, Semiring, SparseMatrix, TripleList, SEMIRING_NAMES};

pub const SET_UNIVERSE: u32 = 16;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn named_semirings() -> Vec<Semiring> {
    SEMIRING_NAMES
        .iter()
        .map(|n| semiring_by_name(n, Some(SET_UNIVERSE)).unwrap())
        .collect()
}

/// Relative tolerance for comparisons over `sr`.
pub fn tolerance(sr: &Semiring) -> f64 {
    if sr.domain() == Domain::Real && sr.name() == "arith-real" {
        1e-10
    } else {
        0.0
    }
}

pub fn nonzero_sample<R: Rng>(sr: &Semiring, rng: &mut R) -> Scalar {
    loop {
        let v = sr.sample(rng);
        if v != sr.zero() {
            return v;
        }
    }
}

/// `m x n` matrix with roughly `density · m · n` distinct non-zero entries.
pub fn random_matrix<R: Rng>(sr: &Semiring, m: usize, n: usize, density: f64, rng: &mut R) -> SparseMatrix {
    let mut t = TripleList::default();
    for i in 0..m {
        for j in 0..n {
            if rng.gen_bool(density) {
                t.push(i, j, nonzero_sample(sr, rng));
            }
        }
    }
    SparseMatrix::build_strict(sr, Dims::new(m, n).unwrap(), &t).unwrap()
}

/// Random directed graph as an `or-and` pattern.
pub fn random_digraph<R: Rng>(n: usize, p: f64, rng: &mut R) -> SparseMatrix {
    let sr = Semiring::or_and();
    let mut t = TripleList::default();
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(p) {
                t.push(i, j, Scalar::Bool(true));
            }
        }
    }
    SparseMatrix::build(&sr, Dims::new(n, n).unwrap(), &t).unwrap()
}

/// Compares a sparse result with an oracle array, treating unstored
/// positions as the oracle's 0-element.
pub fn same_as_dense(a: &SparseMatrix, d: &DenseMatrix, rel: f64) -> Result<(), String> {
    if a.dims().as_tuple() != (d.nrows(), d.ncols()) {
        return Err(format!("shape {:?} vs {}x{}", a.dims().as_tuple(), d.nrows(), d.ncols()));
    }
    let zero = d.zero();
    if a.values().contains(&zero) {
        return Err("sparse result stores the 0-element".into());
    }
    for i in 0..d.nrows() {
        for j in 0..d.ncols() {
            let got = a.get(i, j).unwrap_or(zero);
            let want = d.get(i, j);
            if !sparsegraph_core::algebra::laws::scalars_close(&got, &want, rel, 0.0) {
                return Err(format!("({i}, {j}): got {got}, expected {want}"));
            }
        }
    }
    Ok(())
}

pub fn structure(a: &SparseMatrix) -> BTreeSet<(usize, usize)> {
    a.iter().map(|(i, j, _)| (i, j)).collect()
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn one_based() -> EdgeListOptions {
    EdgeListOptions {
        one_based: true,
        domain: Domain::Real,
    }
}

/// Example graph adjacency loaded from its golden Matrix Market file.
pub fn fixture_adjacency() -> SparseMatrix {
    io::read_matrix_market_file(data_path("fig1_adjacency.mtx")).unwrap()
}

/// Distinct-index vector of length `k` drawn from `0..n`.
pub fn distinct_indices<R: Rng>(k: usize, n: usize, rng: &mut R) -> Vec<usize> {
    use rand::seq::index::sample;
    sample(rng, n, k).into_vec()
}

/// Index vector of length `k` from `0..n`, repeats allowed.
pub fn any_indices<R: Rng>(k: usize, n: usize, rng: &mut R) -> Vec<usize> {
    (0..k).map(|_| rng.gen_range(0..n)).collect()
}
