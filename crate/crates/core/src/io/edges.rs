use std::path::Path;

use crate::algebra::{Domain, Scalar, Semiring};
use crate::error::{Error, Result};
use crate::matrix::{Dims, SparseMatrix, TripleList};

/// One logical edge. More than two endpoints in total makes it a hyper-edge.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeRecord {
    pub edge_id: Option<usize>,
    pub out_vertices: Vec<usize>,
    pub in_vertices: Vec<usize>,
    pub weight: Option<Scalar>,
    /// Source line, 1-based.
    pub line: usize,
}

impl EdgeRecord {
    pub fn is_hyper(&self) -> bool {
        self.out_vertices.len() + self.in_vertices.len() > 2
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EdgeListOptions {
    /// Vertex (and edge id) numbering starts at 1 on disk.
    pub one_based: bool,
    /// Domain the weight column is parsed in.
    pub domain: Domain,
}

impl Default for EdgeListOptions {
    fn default() -> Self {
        EdgeListOptions {
            one_based: false,
            domain: Domain::Real,
        }
    }
}

pub fn read_edge_list(path: impl AsRef<Path>, opts: &EdgeListOptions) -> Result<Vec<EdgeRecord>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_edge_list(&text, path, opts)
}

/// Parses an edge list.
///
/// Two line forms are accepted, plus blank lines and `#`/`%` comments:
///
/// ```text
/// out1,out2<TAB>in1,in2[<TAB>weight]
/// e12: out=4 in=3,5 [w=0.5]
/// ```
pub fn parse_edge_list(text: &str, source: impl AsRef<Path>, opts: &EdgeListOptions) -> Result<Vec<EdgeRecord>> {
    let source = source.as_ref();
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let lineno = lineno + 1;
        let err = |msg: String| Error::parse(source, lineno, msg);
        let record = if line.starts_with('e') && line.contains(':') {
            parse_labelled(line, lineno, opts).map_err(err)?
        } else {
            parse_tabular(line, lineno, opts).map_err(err)?
        };
        edges.push(record);
    }
    Ok(edges)
}

fn parse_index(tok: &str, one_based: bool) -> std::result::Result<usize, String> {
    let tok = tok.trim();
    if tok.starts_with('-') {
        return Err(format!("negative index `{tok}`"));
    }
    let i: usize = tok.parse().map_err(|_| format!("`{tok}` is not an index"))?;
    if one_based {
        i.checked_sub(1)
            .ok_or_else(|| "index 0 in 1-based input".to_string())
    } else {
        Ok(i)
    }
}

fn parse_group(tok: &str, one_based: bool) -> std::result::Result<Vec<usize>, String> {
    let group = tok
        .split(',')
        .map(|t| parse_index(t, one_based))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if group.is_empty() {
        return Err("empty vertex group".into());
    }
    Ok(group)
}

fn parse_weight(tok: &str, domain: Domain) -> std::result::Result<Scalar, String> {
    domain
        .parse_scalar(tok)
        .map_err(|e| format!("bad weight: {e}"))
}

fn parse_tabular(line: &str, lineno: usize, opts: &EdgeListOptions) -> std::result::Result<EdgeRecord, String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if !(2..=3).contains(&fields.len()) {
        return Err(format!("expected `out<TAB>in[<TAB>weight]`, found {} fields", fields.len()));
    }
    Ok(EdgeRecord {
        edge_id: None,
        out_vertices: parse_group(fields[0], opts.one_based)?,
        in_vertices: parse_group(fields[1], opts.one_based)?,
        weight: fields.get(2).map(|w| parse_weight(w, opts.domain)).transpose()?,
        line: lineno,
    })
}

fn parse_labelled(line: &str, lineno: usize, opts: &EdgeListOptions) -> std::result::Result<EdgeRecord, String> {
    let (label, rest) = line.split_once(':').expect("caller checked for ':'");
    let edge_id = parse_index(&label[1..], opts.one_based).map_err(|e| format!("bad edge label: {e}"))?;
    let (mut outs, mut ins, mut weight) = (None, None, None);
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("out", v)) => outs = Some(parse_group(v, opts.one_based)?),
            Some(("in", v)) => ins = Some(parse_group(v, opts.one_based)?),
            Some(("w", v)) => weight = Some(parse_weight(v, opts.domain)?),
            _ => return Err(format!("unexpected field `{field}`")),
        }
    }
    Ok(EdgeRecord {
        edge_id: Some(edge_id),
        out_vertices: outs.ok_or("missing `out=`")?,
        in_vertices: ins.ok_or("missing `in=`")?,
        weight,
        line: lineno,
    })
}

/// Vertex-set sizes for the out- and in-side of an incidence pair. They
/// differ for bipartite or multipartite graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexCounts {
    pub out: usize,
    pub inn: usize,
}

impl VertexCounts {
    pub fn square(n: usize) -> Self {
        VertexCounts { out: n, inn: n }
    }

    /// Smallest square count covering every endpoint.
    pub fn covering(edges: &[EdgeRecord]) -> Self {
        let n = edges
            .iter()
            .flat_map(|e| e.out_vertices.iter().chain(&e.in_vertices))
            .max()
            .map_or(1, |&m| m + 1);
        VertexCounts::square(n)
    }
}

/// Builds `(E_out, E_in)`.
///
/// Edge `k` occupies row `k`: its record position, or its `edge_id` when
/// every record carries one. `E_in` holds the multiplicative identity; `E_out`
/// holds the edge weight when `weighted` is set, else the identity too, so
/// `E_outᵀ E_in` carries the weights.
pub fn incidence_from_edges(
    sr: &Semiring,
    edges: &[EdgeRecord],
    counts: VertexCounts,
    weighted: bool,
) -> Result<(SparseMatrix, SparseMatrix)> {
    let one = sr.one()?;
    let use_ids = !edges.is_empty() && edges.iter().all(|e| e.edge_id.is_some());
    let nedges = if use_ids {
        edges.iter().filter_map(|e| e.edge_id).max().unwrap_or(0) + 1
    } else {
        edges.len()
    };
    let mut seen = vec![false; if use_ids { nedges } else { 0 }];
    let mut t_out = TripleList::default();
    let mut t_in = TripleList::default();
    for (pos, e) in edges.iter().enumerate() {
        let row = if use_ids {
            let id = e.edge_id.unwrap();
            if std::mem::replace(&mut seen[id], true) {
                return Err(Error::InvalidArgument(format!("edge id {id} repeats (line {})", e.line)));
            }
            id
        } else {
            pos
        };
        let w = match (weighted, e.weight) {
            (true, Some(w)) => w,
            _ => one,
        };
        for &v in &e.out_vertices {
            t_out.push(row, v, w);
        }
        for &v in &e.in_vertices {
            t_in.push(row, v, one);
        }
    }
    let e_out = SparseMatrix::build(sr, Dims::new(nedges, counts.out)?, &t_out)?;
    let e_in = SparseMatrix::build(sr, Dims::new(nedges, counts.inn)?, &t_in)?;
    Ok((e_out, e_in))
}

/// Flattens records to adjacency triples: every out-vertex to every
/// in-vertex, valued by the weight (or the multiplicative identity).
pub fn edges_to_triples(sr: &Semiring, edges: &[EdgeRecord]) -> Result<TripleList> {
    let one = sr.one()?;
    let mut t = TripleList::default();
    for e in edges {
        let w = e.weight.unwrap_or(one);
        for &u in &e.out_vertices {
            for &v in &e.in_vertices {
                t.push(u, v, w);
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, one_based: bool) -> Result<Vec<EdgeRecord>> {
        parse_edge_list(
            text,
            "test.tsv",
            &EdgeListOptions {
                one_based,
                domain: Domain::Real,
            },
        )
    }

    #[test]
    fn simple_weighted_line() {
        let e = parse("0\t1\t0.5\n", false).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].out_vertices, vec![0]);
        assert_eq!(e[0].in_vertices, vec![1]);
        assert_eq!(e[0].weight, Some(Scalar::Real(0.5)));
        assert!(!e[0].is_hyper());
    }

    #[test]
    fn labelled_hyper_edge() {
        let e = parse("e12: out=4 in=3,5\n", false).unwrap();
        assert_eq!(e[0].edge_id, Some(12));
        assert_eq!(e[0].in_vertices, vec![3, 5]);
        assert!(e[0].is_hyper());
        let e = parse("e12: out=4 in=3,5 w=2\n", true).unwrap();
        assert_eq!(e[0].edge_id, Some(11));
        assert_eq!(e[0].out_vertices, vec![3]);
        assert_eq!(e[0].weight, Some(Scalar::Real(2.0)));
    }

    #[test]
    fn grouped_tabular_hyper_edge() {
        let e = parse("1,2\t3\n", false).unwrap();
        assert_eq!(e[0].out_vertices, vec![1, 2]);
    }

    #[test]
    fn empty_and_comment_only() {
        assert!(parse("", false).unwrap().is_empty());
        assert!(parse("# header\n\n% other\n", false).unwrap().is_empty());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse("0\t1\n\n2\tx\n", false).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(err.to_string().starts_with("test.tsv:3:"));
        assert!(matches!(parse("-1\t2\n", false), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("0\t1\tabc\n", false), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("0\t1\n", true), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("e1: out=1\n", false), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn self_loop_incidence() {
        let sr = Semiring::arith_real();
        let e = parse("2\t2\n", false).unwrap();
        let (o, i) = incidence_from_edges(&sr, &e, VertexCounts::square(3), false).unwrap();
        assert_eq!(o.get(0, 2), Some(Scalar::Real(1.0)));
        assert_eq!(i.get(0, 2), Some(Scalar::Real(1.0)));
    }

    #[test]
    fn hyper_edge_incidence_row() {
        let sr = Semiring::arith_real();
        let e = parse("0\t1,2\n", false).unwrap();
        let (o, i) = incidence_from_edges(&sr, &e, VertexCounts::square(3), false).unwrap();
        assert_eq!(o.nnz(), 1);
        assert_eq!(i.row(0).0, &[1, 2]);
    }

    #[test]
    fn vertex_out_of_bounds() {
        let sr = Semiring::arith_real();
        let e = parse("0\t5\n", false).unwrap();
        assert!(matches!(
            incidence_from_edges(&sr, &e, VertexCounts::square(3), false),
            Err(Error::IndexOutOfBounds { index: 5, bound: 3, .. })
        ));
    }

    #[test]
    fn bipartite_counts() {
        let sr = Semiring::arith_real();
        let e = parse("0\t4\n1\t0\n", false).unwrap();
        let (o, i) = incidence_from_edges(&sr, &e, VertexCounts { out: 2, inn: 5 }, false).unwrap();
        assert_eq!(o.dims().as_tuple(), (2, 2));
        assert_eq!(i.dims().as_tuple(), (2, 5));
    }
}
