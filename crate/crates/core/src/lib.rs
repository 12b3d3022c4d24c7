//! Semiring-generic sparse matrices and graph algorithms built from them.
//!
//! Matrices are stored in canonical CSR form and never hold the 0-element
//! of the semiring that produced them. Graph algorithms in [`graph`] are
//! written purely in terms of the kernels in [`kernels`].

pub mod algebra;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod kernels;
pub mod matrix;
pub mod oracle;
pub mod overhead;

pub use algebra::{semiring_by_name, BinaryOp, Domain, Laws, Scalar, Semiring, SmallSet, Variant, SEMIRING_NAMES};
pub use error::{Axis, Error, Result};
pub use kernels::IndexVector;
pub use matrix::{Dims, Duplicates, SparseMatrix, TripleList};
