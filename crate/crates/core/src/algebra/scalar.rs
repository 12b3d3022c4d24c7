use std::fmt;

use crate::error::{Error, Result};

/// Largest universe a [`SmallSet`] can draw elements from.
pub const MAX_UNIVERSE: u32 = 64;

/// A subset of `{0, .., 63}` stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallSet(u64);

impl SmallSet {
    pub const EMPTY: SmallSet = SmallSet(0);

    pub const fn from_mask(mask: u64) -> Self {
        SmallSet(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    /// Builds a set from element values, each of which must be below 64.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut mask = 0u64;
        for e in elements {
            if e >= MAX_UNIVERSE {
                return Err(Error::InvalidArgument(format!(
                    "set element {e} exceeds the 64-element universe"
                )));
            }
            mask |= 1 << e;
        }
        Ok(SmallSet(mask))
    }

    /// Every element of a universe of `universe` elements.
    pub fn full(universe: u8) -> Self {
        match universe {
            0 => SmallSet(0),
            64.. => SmallSet(u64::MAX),
            u => SmallSet((1u64 << u) - 1),
        }
    }

    pub fn contains(self, e: u32) -> bool {
        e < MAX_UNIVERSE && self.0 & (1 << e) != 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        SmallSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SmallSet(self.0 & other.0)
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        SmallSet(self.0 ^ other.0)
    }

    /// True when every element is below `universe`.
    pub fn fits(self, universe: u8) -> bool {
        self.0 & !Self::full(universe).0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        (0..MAX_UNIVERSE).filter(move |&e| self.contains(e))
    }
}

impl fmt::Debug for SmallSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Storage type of the values held by a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Real,
    Int,
    Nat,
    Bool,
    /// Subsets of a universe with the given number of elements (at most 64).
    Set(u8),
}

impl Domain {
    /// Whether `value` has this domain's storage type (and, for sets, fits the universe).
    pub fn admits(self, value: &Scalar) -> bool {
        match (self, value) {
            (Domain::Real, Scalar::Real(x)) => !x.is_nan(),
            (Domain::Int, Scalar::Int(_))
            | (Domain::Nat, Scalar::Nat(_))
            | (Domain::Bool, Scalar::Bool(_)) => true,
            (Domain::Set(u), Scalar::Set(s)) => s.fits(u),
            _ => false,
        }
    }

    /// Parses a scalar written in the text form used by the file formats.
    ///
    /// Booleans are `0`/`1` (or `true`/`false`) and sets are integer bit masks.
    pub fn parse_scalar(self, text: &str) -> std::result::Result<Scalar, String> {
        let text = text.trim();
        let value = match self {
            Domain::Real => {
                let x: f64 = text
                    .parse()
                    .map_err(|_| format!("`{text}` is not a real number"))?;
                if x.is_nan() {
                    return Err("NaN is not a valid value".into());
                }
                Scalar::Real(x)
            }
            Domain::Int => Scalar::Int(
                text.parse()
                    .map_err(|_| format!("`{text}` is not an integer"))?,
            ),
            Domain::Nat => Scalar::Nat(
                text.parse()
                    .map_err(|_| format!("`{text}` is not a natural number"))?,
            ),
            Domain::Bool => match text {
                "1" | "true" => Scalar::Bool(true),
                "0" | "false" => Scalar::Bool(false),
                _ => return Err(format!("`{text}` is not a boolean (0 or 1)")),
            },
            Domain::Set(u) => {
                let mask: u64 = text
                    .parse()
                    .map_err(|_| format!("`{text}` is not a set mask"))?;
                let set = SmallSet::from_mask(mask);
                if !set.fits(u) {
                    return Err(format!("set mask {mask} has elements outside universe {u}"));
                }
                Scalar::Set(set)
            }
        };
        Ok(value)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Real => f.write_str("real"),
            Domain::Int => f.write_str("integer"),
            Domain::Nat => f.write_str("natural"),
            Domain::Bool => f.write_str("boolean"),
            Domain::Set(u) => write!(f, "set {u}"),
        }
    }
}

impl std::str::FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let domain = match parts.next() {
            Some("real") => Domain::Real,
            Some("integer") => Domain::Int,
            Some("natural") => Domain::Nat,
            Some("boolean") => Domain::Bool,
            Some("set") => {
                let u: u32 = parts
                    .next()
                    .and_then(|u| u.parse().ok())
                    .ok_or(Error::MissingUniverse)?;
                if u > MAX_UNIVERSE {
                    return Err(Error::UniverseTooLarge(u));
                }
                Domain::Set(u as u8)
            }
            _ => return Err(Error::InvalidArgument(format!("unknown domain `{s}`"))),
        };
        if parts.next().is_some() {
            return Err(Error::InvalidArgument(format!("unknown domain `{s}`")));
        }
        Ok(domain)
    }
}

/// A single matrix value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scalar {
    Real(f64),
    Int(i64),
    Nat(u64),
    Bool(bool),
    Set(SmallSet),
}

impl Scalar {
    /// Storage kind, ignoring any set universe.
    pub fn kind(&self) -> &'static str {
        match self {
            Scalar::Real(_) => "real",
            Scalar::Int(_) => "integer",
            Scalar::Nat(_) => "natural",
            Scalar::Bool(_) => "boolean",
            Scalar::Set(_) => "set",
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match *self {
            Scalar::Real(x) => Some(x),
            _ => None,
        }
    }
}

/// Text form used in files: reals in shortest round-trip notation, booleans
/// as `0`/`1`, sets as their integer mask.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Real(x) => write!(f, "{x}"),
            Scalar::Int(x) => write!(f, "{x}"),
            Scalar::Nat(x) => write!(f, "{x}"),
            Scalar::Bool(b) => f.write_str(if *b { "1" } else { "0" }),
            Scalar::Set(s) => write!(f, "{}", s.mask()),
        }
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Real(x)
    }
}

impl From<i64> for Scalar {
    fn from(x: i64) -> Self {
        Scalar::Int(x)
    }
}

impl From<u64> for Scalar {
    fn from(x: u64) -> Self {
        Scalar::Nat(x)
    }
}

impl From<bool> for Scalar {
    fn from(b: bool) -> Self {
        Scalar::Bool(b)
    }
}

impl From<SmallSet> for Scalar {
    fn from(s: SmallSet) -> Self {
        Scalar::Set(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_set_basics() {
        let a = SmallSet::from_elements([1, 2]).unwrap();
        let b = SmallSet::from_elements([2, 3]).unwrap();
        assert_eq!(a.union(b), SmallSet::from_elements([1, 2, 3]).unwrap());
        assert_eq!(a.intersection(b), SmallSet::from_elements([2]).unwrap());
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![1, 2]);
        assert!(SmallSet::from_elements([64]).is_err());
        assert_eq!(SmallSet::full(64).mask(), u64::MAX);
        assert!(a.fits(3));
        assert!(!b.fits(3));
    }

    #[test]
    fn parse_and_render_round_trip() {
        for (domain, text) in [
            (Domain::Real, "0.1"),
            (Domain::Real, "-inf"),
            (Domain::Int, "-42"),
            (Domain::Nat, "18446744073709551615"),
            (Domain::Bool, "1"),
            (Domain::Set(8), "6"),
        ] {
            let v = domain.parse_scalar(text).unwrap();
            assert!(domain.admits(&v));
            assert_eq!(v.to_string(), text);
        }
        assert!(Domain::Real.parse_scalar("NaN").is_err());
        assert!(Domain::Nat.parse_scalar("-1").is_err());
        assert!(Domain::Set(2).parse_scalar("4").is_err());
    }

    #[test]
    fn domain_names_parse() {
        for d in [Domain::Real, Domain::Int, Domain::Nat, Domain::Bool, Domain::Set(17)] {
            assert_eq!(d.to_string().parse::<Domain>().unwrap(), d);
        }
        assert!("set 65".parse::<Domain>().is_err());
    }
}
