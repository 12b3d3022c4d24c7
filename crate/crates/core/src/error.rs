use std::path::PathBuf;

use crate::algebra::Domain;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which side of a matrix an index refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Row,
    Col,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::Row => f.write_str("row"),
            Axis::Col => f.write_str("column"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown semiring `{0}`")]
    UnknownSemiring(String),

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("semiring `union-intersect` needs a universe size")]
    MissingUniverse,

    #[error("set universe of {0} elements exceeds the 64-element limit")]
    UniverseTooLarge(u32),

    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: Domain, found: Domain },

    #[error("value {value} is outside the domain of `{semiring}`")]
    OutOfDomain { value: String, semiring: String },

    #[error("operator `{op}` is not defined on {operands}")]
    UnsupportedOperands { op: String, operands: String },

    #[error("natural/integer overflow in `{op}`")]
    Overflow { op: String },

    #[error("semiring `{semiring}` has no multiplicative identity")]
    NoIdentity { semiring: String },

    #[error("semiring `{semiring}` violates {law}: {detail}")]
    LawViolation {
        semiring: String,
        law: &'static str,
        detail: String,
    },

    #[error("matrix dimensions must be at least 1x1, got {nrows}x{ncols}")]
    EmptyDimension { nrows: usize, ncols: usize },

    #[error("{op}: dimension mismatch, expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        op: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("{axis} index {index} out of bounds (size {bound})")]
    IndexOutOfBounds {
        axis: Axis,
        index: usize,
        bound: usize,
    },

    #[error("triple vectors differ in length: rows {rows}, cols {cols}, vals {vals}")]
    LengthMismatch { rows: usize, cols: usize, vals: usize },

    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },

    #[error("{axis} index {index} repeats in an assignment")]
    RepeatedIndex { axis: Axis, index: usize },

    #[error("negative edge weight {weight} at ({row}, {col})")]
    NegativeWeight { row: usize, col: usize, weight: f64 },

    #[error("incidence row {row} is not a signed edge: {detail}")]
    InvalidSignedRow { row: usize, detail: String },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("{}:{line}: {msg}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }
}
