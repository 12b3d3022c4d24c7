//! Matrix Market coordinate files.
//!
//! Written files look like:
//!
//! ```text
//! %%MatrixMarket matrix coordinate real general
//! % domain: real
//! 7 7 12
//! 1 2 1
//! ```
//!
//! The `% domain:` comment records the storage domain so that naturals,
//! booleans and sets (written as integer masks under the `integer` field)
//! read back unchanged. Without it the field decides: `real` → real,
//! `integer` → integer, `pattern` → boolean.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::algebra::{Domain, Scalar};
use crate::error::{Error, Result};
use crate::matrix::{Dims, Duplicates, SparseMatrix, TripleList};

const BANNER: &str = "%%MatrixMarket";
const DOMAIN_TAG: &str = "% domain:";

fn field_for(domain: Domain) -> &'static str {
    match domain {
        Domain::Real => "real",
        _ => "integer",
    }
}

pub fn to_matrix_market_string(a: &SparseMatrix) -> String {
    let mut s = String::with_capacity(32 + a.nnz() * 12);
    writeln!(s, "{BANNER} matrix coordinate {} general", field_for(a.domain())).unwrap();
    writeln!(s, "{DOMAIN_TAG} {}", a.domain()).unwrap();
    writeln!(s, "{} {} {}", a.nrows(), a.ncols(), a.nnz()).unwrap();
    for (r, c, v) in a.iter() {
        writeln!(s, "{} {} {}", r + 1, c + 1, v).unwrap();
    }
    s
}

pub fn write_matrix_market<W: Write>(mut w: W, a: &SparseMatrix) -> std::io::Result<()> {
    w.write_all(to_matrix_market_string(a).as_bytes())
}

pub fn write_matrix_market_file(path: impl AsRef<Path>, a: &SparseMatrix) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_matrix_market_string(a)).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn read_matrix_market_file(path: impl AsRef<Path>) -> Result<SparseMatrix> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    read_matrix_market(BufReader::new(file), path)
}

/// Reads a coordinate-format, `general`-symmetry file. Duplicate keys are
/// rejected and every listed value is stored as written.
pub fn read_matrix_market<R: BufRead>(reader: R, source: impl AsRef<Path>) -> Result<SparseMatrix> {
    let source = source.as_ref();
    let mut lines = reader.lines().enumerate();
    let io_err = |e: std::io::Error| Error::Io {
        path: source.to_owned(),
        source: e,
    };

    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(source, 1, "empty file"))?;
    let header = header.map_err(io_err)?;
    let tokens: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != BANNER.to_ascii_lowercase() || tokens[1] != "matrix" {
        return Err(Error::parse(source, 1, format!("not a Matrix Market header: `{header}`")));
    }
    if tokens[2] != "coordinate" {
        return Err(Error::parse(source, 1, format!("unsupported format `{}`", tokens[2])));
    }
    let field = tokens[3].as_str();
    if !matches!(field, "real" | "integer" | "pattern") {
        return Err(Error::parse(source, 1, format!("unsupported field `{field}`")));
    }
    if tokens[4] != "general" {
        return Err(Error::parse(source, 1, format!("unsupported symmetry `{}`", tokens[4])));
    }

    let mut domain = match field {
        "real" => Domain::Real,
        "integer" => Domain::Int,
        _ => Domain::Bool,
    };
    let mut size: Option<(usize, usize, usize)> = None;
    let mut triples = TripleList::default();
    let mut last_line = 1;
    for (idx, line) in lines {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line.map_err(io_err)?;
        let trimmed = line.trim();
        if let Some(tag) = trimmed.strip_prefix(DOMAIN_TAG) {
            if size.is_none() {
                domain = tag.trim().parse().map_err(|e: Error| Error::parse(source, lineno, e.to_string()))?;
                if field == "real" && domain != Domain::Real || field != "real" && domain == Domain::Real {
                    return Err(Error::parse(source, lineno, format!("domain {domain} conflicts with field {field}")));
                }
            }
            continue;
        }
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let parse_usize = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(source, lineno, format!("`{s}` is not a non-negative integer")))
        };
        match size {
            None => {
                if fields.len() != 3 {
                    return Err(Error::parse(source, lineno, "size line must be `rows cols entries`"));
                }
                let (m, n, nnz) = (parse_usize(fields[0])?, parse_usize(fields[1])?, parse_usize(fields[2])?);
                size = Some((m, n, nnz));
                triples = TripleList::with_capacity(nnz);
            }
            Some((m, n, nnz)) => {
                let want = if field == "pattern" { 2 } else { 3 };
                if fields.len() != want {
                    return Err(Error::parse(source, lineno, format!("expected {want} fields per entry")));
                }
                if triples.len() == nnz {
                    return Err(Error::parse(source, lineno, format!("more entries than the declared {nnz}")));
                }
                let (r, c) = (parse_usize(fields[0])?, parse_usize(fields[1])?);
                if r == 0 || r > m || c == 0 || c > n {
                    return Err(Error::parse(
                        source,
                        lineno,
                        format!("entry ({r}, {c}) outside declared {m}x{n}"),
                    ));
                }
                let v = if field == "pattern" {
                    Scalar::Bool(true)
                } else {
                    domain
                        .parse_scalar(fields[2])
                        .map_err(|e| Error::parse(source, lineno, e))?
                };
                triples.push(r - 1, c - 1, v);
            }
        }
    }
    let (m, n, nnz) = size.ok_or_else(|| Error::parse(source, last_line, "missing size line"))?;
    if triples.len() != nnz {
        return Err(Error::parse(
            source,
            last_line,
            format!("declared {nnz} entries but found {}", triples.len()),
        ));
    }
    let dims = Dims::new(m, n).map_err(|e| Error::parse(source, 1, e.to_string()))?;
    SparseMatrix::build_raw(dims, domain, &triples, Duplicates::Reject, None)
}
