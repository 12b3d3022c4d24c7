//! Edge lists, Matrix Market files and tab-separated triple files.

mod edges;
mod mm;

pub use edges::{
    edges_to_triples, incidence_from_edges, parse_edge_list, read_edge_list, EdgeListOptions, EdgeRecord,
    VertexCounts,
};
pub use mm::{
    read_matrix_market, read_matrix_market_file, to_matrix_market_string, write_matrix_market,
    write_matrix_market_file,
};

use std::fmt::Write as _;
use std::path::Path;

use crate::algebra::Domain;
use crate::error::{Error, Result};
use crate::matrix::{Dims, Duplicates, SparseMatrix, TripleList};

const TSV_HEADER: &str = "% ";

/// Writes `row<TAB>col<TAB>value` lines after a `% nrows ncols domain` header.
pub fn to_tsv_string(a: &SparseMatrix, one_based: bool) -> String {
    let base = usize::from(one_based);
    let mut s = String::with_capacity(24 + a.nnz() * 12);
    writeln!(s, "{TSV_HEADER}{} {} {}", a.nrows(), a.ncols(), a.domain()).unwrap();
    for (r, c, v) in a.iter() {
        writeln!(s, "{}\t{}\t{}", r + base, c + base, v).unwrap();
    }
    s
}

pub fn write_tsv_file(path: impl AsRef<Path>, a: &SparseMatrix, one_based: bool) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_tsv_string(a, one_based)).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn read_tsv_file(path: impl AsRef<Path>, one_based: bool, domain: Option<Domain>) -> Result<SparseMatrix> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_tsv(&text, path, one_based, domain)
}

/// Parses triples written by [`to_tsv_string`].
///
/// The header fixes shape and domain. Without one, the shape is the
/// smallest covering the indices and the domain is `domain` (real if
/// `None`). A header domain that disagrees with `domain` is an error.
/// Repeated keys are rejected.
pub fn parse_tsv(text: &str, source: impl AsRef<Path>, one_based: bool, domain: Option<Domain>) -> Result<SparseMatrix> {
    let source = source.as_ref();
    let mut header: Option<(usize, usize, Domain)> = None;
    let mut triples = TripleList::default();
    let mut seen_entry = false;
    let dom = |header: &Option<(usize, usize, Domain)>| header.map(|h| h.2).or(domain).unwrap_or(Domain::Real);

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('%') {
            if !seen_entry && header.is_none() {
                if let Some(h) = parse_header(rest) {
                    let (m, n, d) = h.map_err(|e| Error::parse(source, lineno, e))?;
                    if domain.is_some_and(|want| want != d) {
                        return Err(Error::parse(
                            source,
                            lineno,
                            format!("file domain {d} differs from requested {}", domain.unwrap()),
                        ));
                    }
                    header = Some((m, n, d));
                }
            }
            continue;
        }
        seen_entry = true;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(source, lineno, format!("expected 3 fields, found {}", fields.len())));
        }
        let index = |s: &str| -> Result<usize> {
            let i: usize = s
                .parse()
                .map_err(|_| Error::parse(source, lineno, format!("`{s}` is not an index")))?;
            if one_based {
                i.checked_sub(1)
                    .ok_or_else(|| Error::parse(source, lineno, "index 0 in 1-based input"))
            } else {
                Ok(i)
            }
        };
        let (r, c) = (index(fields[0])?, index(fields[1])?);
        if let Some((m, n, _)) = header {
            if r >= m || c >= n {
                return Err(Error::parse(source, lineno, format!("entry ({r}, {c}) outside declared {m}x{n}")));
            }
        }
        let v = dom(&header)
            .parse_scalar(fields[2])
            .map_err(|e| Error::parse(source, lineno, e))?;
        triples.push(r, c, v);
    }

    let dims = match header {
        Some((m, n, _)) => Dims::new(m, n),
        None => Dims::new(
            triples.rows.iter().max().map_or(1, |&r| r + 1),
            triples.cols.iter().max().map_or(1, |&c| c + 1),
        ),
    }
    .map_err(|e| Error::parse(source, 1, e.to_string()))?;
    SparseMatrix::build_raw(dims, dom(&header), &triples, Duplicates::Reject, None)
}

/// `Some` when the comment looks like a shape header.
fn parse_header(rest: &str) -> Option<std::result::Result<(usize, usize, Domain), String>> {
    let mut parts = rest.trim().splitn(3, char::is_whitespace);
    let m = parts.next()?.parse::<usize>().ok()?;
    let n = parts.next()?.parse::<usize>().ok()?;
    let d = parts.next().unwrap_or("real");
    Some(d.trim().parse::<Domain>().map(|d| (m, n, d)).map_err(|e| e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;

    #[test]
    fn tsv_round_trip_keeps_shape() {
        let t: TripleList = [(0, 2, Scalar::Nat(5))].into_iter().collect();
        let a = SparseMatrix::build_raw(Dims::new(4, 4).unwrap(), Domain::Nat, &t, Duplicates::Reject, None).unwrap();
        for one_based in [false, true] {
            let text = to_tsv_string(&a, one_based);
            assert_eq!(parse_tsv(&text, "m.tsv", one_based, None).unwrap(), a);
        }
        assert_eq!(to_tsv_string(&a, false), "% 4 4 natural\n0\t2\t5\n");
    }

    #[test]
    fn tsv_without_header() {
        let a = parse_tsv("1\t2\t0.5\n", "m.tsv", false, None).unwrap();
        assert_eq!(a.dims().as_tuple(), (2, 3));
        assert_eq!(a.domain(), Domain::Real);
    }

    #[test]
    fn tsv_errors() {
        assert!(matches!(
            parse_tsv("% 2 2 real\n2\t0\t1\n", "m.tsv", false, None),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_tsv("% 2 2 real\n0\t0\t1\n", "m.tsv", false, Some(Domain::Int)),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_tsv("0\t0\n", "m.tsv", false, None),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
