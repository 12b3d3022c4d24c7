use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use sparsegraph_core::io::{self, EdgeListOptions, EdgeRecord};
use sparsegraph_core::{BinaryOp, Dims, Duplicates, Scalar, Semiring, SparseMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Mm,
}

impl Format {
    /// `.mtx` and `.mm` are Matrix Market, anything else is TSV.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("mtx" | "mm") => Format::Mm,
            _ => Format::Tsv,
        }
    }
}

pub struct Loader<'a> {
    pub semiring: &'a Semiring,
    pub format: Option<Format>,
    pub one_based: bool,
    /// Square vertex count for edge lists; defaults to the largest id + 1.
    pub vertices: Option<usize>,
}

/// How repeated edges are combined when building from an edge list.
pub enum DupPolicy {
    Combine(BinaryOp),
    Strict,
}

pub struct Built {
    pub matrix: SparseMatrix,
    /// Input triples that landed on an already-used position.
    pub folded: usize,
}

impl Loader<'_> {
    fn format_of(&self, path: &Path) -> Format {
        self.format.unwrap_or_else(|| Format::from_path(path))
    }

    pub fn edge_list(&self, path: &Path) -> Result<Vec<EdgeRecord>> {
        let opts = EdgeListOptions {
            one_based: self.one_based,
            domain: self.semiring.domain(),
        };
        Ok(io::read_edge_list(path, &opts)?)
    }

    /// Builds an adjacency matrix from an edge list (TSV) or triples (MM).
    pub fn build(&self, path: &Path, dup: &DupPolicy, default_weight: Option<Scalar>) -> Result<Built> {
        let sr = self.semiring;
        let triples = match self.format_of(path) {
            Format::Mm => io::read_matrix_market_file(path)?.extract_tuples(),
            Format::Tsv => {
                let mut edges = self.edge_list(path)?;
                if let Some(w) = default_weight {
                    for e in edges.iter_mut().filter(|e| e.weight.is_none()) {
                        e.weight = Some(w);
                    }
                }
                io::edges_to_triples(sr, &edges)?
            }
        };
        let n = match self.vertices {
            Some(n) => n,
            None => triples
                .rows
                .iter()
                .chain(&triples.cols)
                .max()
                .map_or(1, |&m| m + 1),
        };
        let dims = Dims::new(n, n)?;
        for v in &triples.vals {
            sr.check(v)
                .with_context(|| format!("{}: value {v} does not fit semiring {}", path.display(), sr.name()))?;
        }
        let matrix = match dup {
            DupPolicy::Combine(op) => {
                SparseMatrix::build_raw(dims, sr.domain(), &triples, Duplicates::Combine(op), Some(sr.zero()))?
            }
            DupPolicy::Strict => SparseMatrix::build_strict(sr, dims, &triples)?,
        };
        let mut keys: Vec<(usize, usize)> = triples.rows.iter().copied().zip(triples.cols.iter().copied()).collect();
        keys.sort_unstable();
        keys.dedup();
        Ok(Built {
            matrix,
            folded: triples.len() - keys.len(),
        })
    }

    /// Reads a matrix file. A TSV file is a triple file when it starts with
    /// a `% rows cols domain` header and an edge list otherwise.
    pub fn matrix(&self, path: &Path) -> Result<SparseMatrix> {
        let sr = self.semiring;
        let m = match self.format_of(path) {
            Format::Mm => io::read_matrix_market_file(path)?,
            Format::Tsv => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                if has_shape_header(&text) {
                    io::parse_tsv(&text, path, self.one_based, Some(sr.domain()))?
                } else {
                    let dup = DupPolicy::Combine(sr.add_op().clone());
                    self.build(path, &dup, None)?.matrix
                }
            }
        };
        if m.domain() != sr.domain() {
            bail!(
                "{}: matrix holds {} values but semiring {} needs {}",
                path.display(),
                m.domain(),
                sr.name(),
                sr.domain()
            );
        }
        Ok(m)
    }
}

fn has_shape_header(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.strip_prefix('%'))
        .is_some_and(|rest| {
            let mut parts = rest.split_whitespace();
            parts.next().is_some_and(|t| t.parse::<usize>().is_ok())
                && parts.next().is_some_and(|t| t.parse::<usize>().is_ok())
        })
}

/// Parses `1,2,4,7`; shifts to 0-based when `one_based`.
pub fn parse_indices(text: &str, one_based: bool) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let i: usize = t.trim().parse().with_context(|| format!("`{t}` is not an index"))?;
            if one_based {
                i.checked_sub(1).context("index 0 in 1-based numbering")
            } else {
                Ok(i)
            }
        })
        .collect()
}
