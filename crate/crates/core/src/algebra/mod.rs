//! Scalar domains, binary operators and semirings.

pub mod laws;
mod op;
mod scalar;
mod semiring;

pub use op::{BinaryOp, Laws, OpFn};
pub use scalar::{Domain, Scalar, SmallSet, MAX_UNIVERSE};
pub use semiring::{semiring_by_name, RealRange, Semiring, Variant, SEMIRING_NAMES};
