use std::borrow::Cow;
use std::fmt;
use std::sync::Arc;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Signature of a user-supplied binary operator.
pub type OpFn = dyn Fn(Scalar, Scalar) -> Result<Scalar> + Send + Sync;

/// Algebraic laws an operator claims to satisfy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Laws {
    pub commutative: bool,
    pub associative: bool,
}

impl Laws {
    pub const NONE: Laws = Laws {
        commutative: false,
        associative: false,
    };
    pub const ASSOCIATIVE: Laws = Laws {
        commutative: false,
        associative: true,
    };
    pub const COMMUTATIVE_ASSOCIATIVE: Laws = Laws {
        commutative: true,
        associative: true,
    };
}

#[derive(Clone)]
enum Kind {
    Plus,
    Times,
    Max,
    Min,
    Xor,
    And,
    Or,
    First,
    Second,
    Custom(Arc<OpFn>),
}

/// A named binary operator on scalars.
///
/// The built-in operators dispatch on the operand types: `or`/`and`/`xor`
/// act on booleans and, as union/intersection/symmetric difference, on sets.
/// Integer and natural arithmetic is checked; overflow is an error.
#[derive(Clone)]
pub struct BinaryOp {
    name: Cow<'static, str>,
    kind: Kind,
    laws: Laws,
}

impl fmt::Debug for BinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryOp")
            .field("name", &self.name)
            .field("laws", &self.laws)
            .finish()
    }
}

macro_rules! builtin {
    ($($(#[$doc:meta])* $fn_name:ident => $name:literal, $kind:ident, $laws:expr;)*) => {
        $(
            $(#[$doc])*
            pub fn $fn_name() -> Self {
                BinaryOp { name: Cow::Borrowed($name), kind: Kind::$kind, laws: $laws }
            }
        )*
    };
}

impl BinaryOp {
    builtin! {
        plus => "plus", Plus, Laws::COMMUTATIVE_ASSOCIATIVE;
        times => "times", Times, Laws::COMMUTATIVE_ASSOCIATIVE;
        max => "max", Max, Laws::COMMUTATIVE_ASSOCIATIVE;
        min => "min", Min, Laws::COMMUTATIVE_ASSOCIATIVE;
        xor => "xor", Xor, Laws::COMMUTATIVE_ASSOCIATIVE;
        and => "and", And, Laws::COMMUTATIVE_ASSOCIATIVE;
        or => "or", Or, Laws::COMMUTATIVE_ASSOCIATIVE;
        /// Set union; same as `or` on sets.
        union => "union", Or, Laws::COMMUTATIVE_ASSOCIATIVE;
        /// Set intersection; same as `and` on sets.
        intersect => "intersect", And, Laws::COMMUTATIVE_ASSOCIATIVE;
        /// Keeps the left operand.
        first => "first", First, Laws::ASSOCIATIVE;
        /// Keeps the right operand.
        second => "second", Second, Laws::ASSOCIATIVE;
    }

    pub const BUILTIN_NAMES: [&'static str; 11] = [
        "plus", "times", "max", "min", "xor", "and", "or", "union", "intersect", "first", "second",
    ];

    pub fn by_name(name: &str) -> Result<Self> {
        Ok(match name {
            "plus" => Self::plus(),
            "times" => Self::times(),
            "max" => Self::max(),
            "min" => Self::min(),
            "xor" => Self::xor(),
            "and" => Self::and(),
            "or" => Self::or(),
            "union" => Self::union(),
            "intersect" => Self::intersect(),
            "first" => Self::first(),
            "second" => Self::second(),
            _ => return Err(Error::UnknownOperator(name.to_owned())),
        })
    }

    /// Wraps an arbitrary function. `laws` is what the caller claims; it is
    /// checked when the operator is registered in a semiring.
    pub fn custom<F>(name: impl Into<String>, laws: Laws, f: F) -> Self
    where
        F: Fn(Scalar, Scalar) -> Result<Scalar> + Send + Sync + 'static,
    {
        BinaryOp {
            name: Cow::Owned(name.into()),
            kind: Kind::Custom(Arc::new(f)),
            laws,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn laws(&self) -> Laws {
        self.laws
    }

    #[inline]
    pub fn apply(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        use Scalar::*;
        let out = match (&self.kind, a, b) {
            (Kind::First, a, _) => a,
            (Kind::Second, _, b) => b,
            (Kind::Custom(f), a, b) => return f(a, b),

            (Kind::Plus, Real(x), Real(y)) => Real(x + y),
            (Kind::Plus, Int(x), Int(y)) => Int(x.checked_add(y).ok_or_else(|| self.overflow())?),
            (Kind::Plus, Nat(x), Nat(y)) => Nat(x.checked_add(y).ok_or_else(|| self.overflow())?),

            (Kind::Times, Real(x), Real(y)) => Real(x * y),
            (Kind::Times, Int(x), Int(y)) => Int(x.checked_mul(y).ok_or_else(|| self.overflow())?),
            (Kind::Times, Nat(x), Nat(y)) => Nat(x.checked_mul(y).ok_or_else(|| self.overflow())?),

            (Kind::Max, Real(x), Real(y)) => Real(x.max(y)),
            (Kind::Max, Int(x), Int(y)) => Int(x.max(y)),
            (Kind::Max, Nat(x), Nat(y)) => Nat(x.max(y)),
            (Kind::Max, Bool(x), Bool(y)) => Bool(x | y),

            (Kind::Min, Real(x), Real(y)) => Real(x.min(y)),
            (Kind::Min, Int(x), Int(y)) => Int(x.min(y)),
            (Kind::Min, Nat(x), Nat(y)) => Nat(x.min(y)),
            (Kind::Min, Bool(x), Bool(y)) => Bool(x & y),

            (Kind::Xor, Bool(x), Bool(y)) => Bool(x ^ y),
            (Kind::Xor, Set(x), Set(y)) => Set(x.symmetric_difference(y)),
            (Kind::And, Bool(x), Bool(y)) => Bool(x & y),
            (Kind::And, Set(x), Set(y)) => Set(x.intersection(y)),
            (Kind::Or, Bool(x), Bool(y)) => Bool(x | y),
            (Kind::Or, Set(x), Set(y)) => Set(x.union(y)),

            (_, a, b) => {
                return Err(Error::UnsupportedOperands {
                    op: self.name.to_string(),
                    operands: format!("({}, {})", a.kind(), b.kind()),
                })
            }
        };
        Ok(out)
    }

    fn overflow(&self) -> Error {
        Error::Overflow {
            op: self.name.to_string(),
        }
    }
}
