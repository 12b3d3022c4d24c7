use std::borrow::Cow;

use rand::Rng;

use super::op::BinaryOp;
use super::scalar::{Domain, Scalar, SmallSet, MAX_UNIVERSE};
use crate::error::{Error, Result};

/// Identifiers accepted by [`semiring_by_name`].
pub const SEMIRING_NAMES: [&str; 8] = [
    "arith-real",
    "arith-natural",
    "max-plus",
    "min-plus",
    "max-min",
    "min-max",
    "xor-and",
    "union-intersect",
];

/// Closed interval of admissible reals; either end may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealRange {
    pub min: f64,
    pub max: f64,
}

impl RealRange {
    pub const FINITE: RealRange = RealRange {
        min: f64::MIN,
        max: f64::MAX,
    };

    pub fn contains(&self, x: f64) -> bool {
        self.min <= x && x <= self.max
    }
}

/// Sign convention for the `max-min` and `min-max` semirings.
///
/// `max-min` on `[0, +inf]` has 0-element `0`; on `[-inf, 0]` it has `-inf`.
/// `min-max` mirrors this: `+inf` on the non-negative side, `0` on the
/// non-positive side.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Variant {
    #[default]
    NonNegative,
    NonPositive,
}

/// A scalar domain with `⊕`, `⊗` and the 0-element.
///
/// The 0-element is the value sparse matrices never store. It must be the
/// identity of `⊕` and annihilate under `⊗`. `one` is the identity of `⊗`
/// where one exists and is what selection and identity matrices hold.
#[derive(Clone, Debug)]
pub struct Semiring {
    name: Cow<'static, str>,
    domain: Domain,
    range: Option<RealRange>,
    add: BinaryOp,
    mul: BinaryOp,
    zero: Scalar,
    one: Option<Scalar>,
}

/// Looks up one of the named semirings.
///
/// `universe` is the element count for `union-intersect` and ignored otherwise.
pub fn semiring_by_name(name: &str, universe: Option<u32>) -> Result<Semiring> {
    match name {
        "arith-real" => Ok(Semiring::arith_real()),
        "arith-natural" => Ok(Semiring::arith_natural()),
        "max-plus" => Ok(Semiring::max_plus()),
        "min-plus" => Ok(Semiring::min_plus()),
        "max-min" => Ok(Semiring::max_min(Variant::NonNegative)),
        "min-max" => Ok(Semiring::min_max(Variant::NonNegative)),
        "xor-and" => Ok(Semiring::xor_and()),
        "union-intersect" => Semiring::union_intersect(universe.ok_or(Error::MissingUniverse)?),
        _ => Err(Error::UnknownSemiring(name.to_owned())),
    }
}

impl Semiring {
    fn builtin(
        name: &'static str,
        domain: Domain,
        range: Option<RealRange>,
        (add, mul): (BinaryOp, BinaryOp),
        zero: Scalar,
        one: Scalar,
    ) -> Self {
        Semiring {
            name: Cow::Borrowed(name),
            domain,
            range,
            add,
            mul,
            zero,
            one: Some(one),
        }
    }

    /// `+.×` on finite reals.
    pub fn arith_real() -> Self {
        Self::builtin(
            "arith-real",
            Domain::Real,
            Some(RealRange::FINITE),
            (BinaryOp::plus(), BinaryOp::times()),
            Scalar::Real(0.0),
            Scalar::Real(1.0),
        )
    }

    /// `+.×` on 64-bit naturals; overflow is reported, never wrapped.
    pub fn arith_natural() -> Self {
        Self::builtin(
            "arith-natural",
            Domain::Nat,
            None,
            (BinaryOp::plus(), BinaryOp::times()),
            Scalar::Nat(0),
            Scalar::Nat(1),
        )
    }

    /// `+.×` on 64-bit signed integers, checked.
    pub fn arith_integer() -> Self {
        Self::builtin(
            "arith-integer",
            Domain::Int,
            None,
            (BinaryOp::plus(), BinaryOp::times()),
            Scalar::Int(0),
            Scalar::Int(1),
        )
    }

    /// `max.+` on `{-inf} ∪ ℝ`.
    pub fn max_plus() -> Self {
        Self::builtin(
            "max-plus",
            Domain::Real,
            Some(RealRange {
                min: f64::NEG_INFINITY,
                max: f64::MAX,
            }),
            (BinaryOp::max(), BinaryOp::plus()),
            Scalar::Real(f64::NEG_INFINITY),
            Scalar::Real(0.0),
        )
    }

    /// `min.+` on `ℝ ∪ {+inf}`.
    pub fn min_plus() -> Self {
        Self::builtin(
            "min-plus",
            Domain::Real,
            Some(RealRange {
                min: f64::MIN,
                max: f64::INFINITY,
            }),
            (BinaryOp::min(), BinaryOp::plus()),
            Scalar::Real(f64::INFINITY),
            Scalar::Real(0.0),
        )
    }

    pub fn max_min(variant: Variant) -> Self {
        let ops = (BinaryOp::max(), BinaryOp::min());
        match variant {
            Variant::NonNegative => Self::builtin(
                "max-min",
                Domain::Real,
                Some(RealRange {
                    min: 0.0,
                    max: f64::INFINITY,
                }),
                ops,
                Scalar::Real(0.0),
                Scalar::Real(f64::INFINITY),
            ),
            Variant::NonPositive => Self::builtin(
                "max-min",
                Domain::Real,
                Some(RealRange {
                    min: f64::NEG_INFINITY,
                    max: 0.0,
                }),
                ops,
                Scalar::Real(f64::NEG_INFINITY),
                Scalar::Real(0.0),
            ),
        }
    }

    pub fn min_max(variant: Variant) -> Self {
        let ops = (BinaryOp::min(), BinaryOp::max());
        match variant {
            Variant::NonNegative => Self::builtin(
                "min-max",
                Domain::Real,
                Some(RealRange {
                    min: 0.0,
                    max: f64::INFINITY,
                }),
                ops,
                Scalar::Real(f64::INFINITY),
                Scalar::Real(0.0),
            ),
            Variant::NonPositive => Self::builtin(
                "min-max",
                Domain::Real,
                Some(RealRange {
                    min: f64::NEG_INFINITY,
                    max: 0.0,
                }),
                ops,
                Scalar::Real(0.0),
                Scalar::Real(f64::NEG_INFINITY),
            ),
        }
    }

    /// GF(2): `xor.and` on `{0, 1}`.
    pub fn xor_and() -> Self {
        Self::builtin(
            "xor-and",
            Domain::Bool,
            None,
            (BinaryOp::xor(), BinaryOp::and()),
            Scalar::Bool(false),
            Scalar::Bool(true),
        )
    }

    /// Boolean `or.and`, used for structure-only traversal.
    pub fn or_and() -> Self {
        Self::builtin(
            "or-and",
            Domain::Bool,
            None,
            (BinaryOp::or(), BinaryOp::and()),
            Scalar::Bool(false),
            Scalar::Bool(true),
        )
    }

    /// `∪.∩` over subsets of `{0, .., universe - 1}`.
    pub fn union_intersect(universe: u32) -> Result<Self> {
        if universe > MAX_UNIVERSE {
            return Err(Error::UniverseTooLarge(universe));
        }
        let u = universe as u8;
        Ok(Self::builtin(
            "union-intersect",
            Domain::Set(u),
            None,
            (BinaryOp::union(), BinaryOp::intersect()),
            Scalar::Set(SmallSet::EMPTY),
            Scalar::Set(SmallSet::full(u)),
        ))
    }

    /// Registers a user-defined semiring.
    ///
    /// In debug builds the operators' declared laws, the additive identity
    /// and the annihilator are checked on random samples of `domain`.
    pub fn custom(
        name: impl Into<String>,
        domain: Domain,
        add: BinaryOp,
        mul: BinaryOp,
        zero: Scalar,
        one: Option<Scalar>,
    ) -> Result<Self> {
        let name = name.into();
        for v in std::iter::once(&zero).chain(one.as_ref()) {
            if !domain.admits(v) {
                return Err(Error::OutOfDomain {
                    value: v.to_string(),
                    semiring: name,
                });
            }
        }
        let sr = Semiring {
            name: Cow::Owned(name),
            domain,
            range: None,
            add,
            mul,
            zero,
            one,
        };
        #[cfg(debug_assertions)]
        {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
            super::laws::check_semiring(&sr, 256, &mut rng)?;
        }
        Ok(sr)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Admissible real interval, for real-valued semirings with a restriction.
    pub fn range(&self) -> Option<RealRange> {
        self.range
    }

    pub fn add_op(&self) -> &BinaryOp {
        &self.add
    }

    pub fn mul_op(&self) -> &BinaryOp {
        &self.mul
    }

    pub fn zero(&self) -> Scalar {
        self.zero
    }

    pub fn one(&self) -> Result<Scalar> {
        self.one.ok_or_else(|| Error::NoIdentity {
            semiring: self.name.to_string(),
        })
    }

    pub fn is_zero(&self, v: &Scalar) -> bool {
        *v == self.zero
    }

    /// Validates that `v` belongs to this semiring's domain.
    pub fn check(&self, v: &Scalar) -> Result<()> {
        let in_range = match (self.range, v) {
            (Some(r), Scalar::Real(x)) => r.contains(*x),
            _ => true,
        };
        if !self.domain.admits(v) || !in_range {
            return Err(Error::OutOfDomain {
                value: v.to_string(),
                semiring: self.name.to_string(),
            });
        }
        Ok(())
    }

    /// Constructs a validated scalar.
    pub fn scalar(&self, v: impl Into<Scalar>) -> Result<Scalar> {
        let v = v.into();
        self.check(&v)?;
        Ok(v)
    }

    /// `a ⊕ b`.
    pub fn add(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        self.check_kind(&a)?;
        self.check_kind(&b)?;
        self.add.apply(a, b)
    }

    /// `a ⊗ b`.
    pub fn mul(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        self.check_kind(&a)?;
        self.check_kind(&b)?;
        self.mul.apply(a, b)
    }

    fn check_kind(&self, v: &Scalar) -> Result<()> {
        if self.domain.admits(v) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                value: v.to_string(),
                semiring: self.name.to_string(),
            })
        }
    }

    /// Draws a random member of the domain. Mixes in the 0-element, the
    /// identity and infinite endpoints so law checks cover them.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        if rng.gen_ratio(1, 10) {
            let pick = rng.gen_range(0..3);
            let special = match pick {
                0 => Some(self.zero),
                1 => self.one,
                _ => self.range.and_then(|r| {
                    [r.min, r.max]
                        .into_iter()
                        .find(|x| x.is_infinite())
                        .map(Scalar::Real)
                }),
            };
            if let Some(v) = special {
                return v;
            }
        }
        match self.domain {
            Domain::Real => {
                let x: f64 = rng.gen_range(-1000.0..1000.0);
                let x = match self.range {
                    Some(r) if r.min >= 0.0 => x.abs(),
                    Some(r) if r.max <= 0.0 => -x.abs(),
                    _ => x,
                };
                Scalar::Real(x)
            }
            Domain::Int => Scalar::Int(rng.gen_range(-1000..=1000)),
            Domain::Nat => Scalar::Nat(rng.gen_range(0..=1000)),
            Domain::Bool => Scalar::Bool(rng.gen()),
            Domain::Set(u) => Scalar::Set(SmallSet::from_mask(rng.gen::<u64>() & SmallSet::full(u).mask())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Laws;

    fn set(e: &[u32]) -> Scalar {
        Scalar::Set(SmallSet::from_elements(e.iter().copied()).unwrap())
    }

    #[test]
    fn arith_real_examples() {
        let sr = semiring_by_name("arith-real", None).unwrap();
        assert_eq!(sr.zero(), Scalar::Real(0.0));
        assert_eq!(sr.add(2.0.into(), 3.0.into()).unwrap(), 5.0.into());
        assert_eq!(sr.mul(2.0.into(), 3.0.into()).unwrap(), 6.0.into());
    }

    #[test]
    fn max_plus_examples() {
        let sr = semiring_by_name("max-plus", None).unwrap();
        assert_eq!(sr.add(5.0.into(), 3.0.into()).unwrap(), 5.0.into());
        assert_eq!(sr.mul(5.0.into(), 3.0.into()).unwrap(), 8.0.into());
        for a in [-7.5, 0.0, 12.0, f64::NEG_INFINITY] {
            assert_eq!(sr.add(a.into(), sr.zero()).unwrap(), a.into());
            assert_eq!(sr.mul(a.into(), sr.zero()).unwrap(), sr.zero());
        }
    }

    #[test]
    fn union_intersect_examples() {
        let sr = semiring_by_name("union-intersect", Some(8)).unwrap();
        assert_eq!(sr.add(set(&[1, 2]), set(&[2, 3])).unwrap(), set(&[1, 2, 3]));
        assert_eq!(sr.mul(set(&[1, 2]), set(&[2, 3])).unwrap(), set(&[2]));
        assert_eq!(sr.mul(set(&[1, 2]), sr.zero()).unwrap(), set(&[]));
        assert!(sr.check(&set(&[9])).is_err());
    }

    #[test]
    fn scalar_op_examples() {
        let nat = semiring_by_name("arith-natural", None).unwrap();
        assert_eq!(nat.add(Scalar::Nat(1), Scalar::Nat(1)).unwrap(), Scalar::Nat(2));
        assert_eq!(nat.mul(Scalar::Nat(2), Scalar::Nat(2)).unwrap(), Scalar::Nat(4));
        assert!(matches!(
            nat.add(Scalar::Nat(u64::MAX), Scalar::Nat(1)),
            Err(Error::Overflow { .. })
        ));
        assert!(matches!(
            nat.add(Scalar::Real(1.0), Scalar::Nat(1)),
            Err(Error::OutOfDomain { .. })
        ));

        let gf2 = semiring_by_name("xor-and", None).unwrap();
        assert_eq!(gf2.add(true.into(), true.into()).unwrap(), false.into());

        let min_plus = semiring_by_name("min-plus", None).unwrap();
        assert_eq!(min_plus.add(7.0.into(), 4.0.into()).unwrap(), 4.0.into());

        let max_min = semiring_by_name("max-min", None).unwrap();
        assert_eq!(max_min.mul(0.5.into(), 0.3.into()).unwrap(), 0.3.into());
    }

    #[test]
    fn zero_elements_of_named_semirings() {
        let zeros = [
            ("arith-real", Scalar::Real(0.0)),
            ("arith-natural", Scalar::Nat(0)),
            ("max-plus", Scalar::Real(f64::NEG_INFINITY)),
            ("min-plus", Scalar::Real(f64::INFINITY)),
            ("max-min", Scalar::Real(0.0)),
            ("min-max", Scalar::Real(f64::INFINITY)),
            ("xor-and", Scalar::Bool(false)),
            ("union-intersect", Scalar::Set(SmallSet::EMPTY)),
        ];
        for (name, zero) in zeros {
            assert_eq!(semiring_by_name(name, Some(8)).unwrap().zero(), zero, "{name}");
        }
        assert_eq!(Semiring::max_min(Variant::NonPositive).zero(), Scalar::Real(f64::NEG_INFINITY));
    }

    #[test]
    fn lookup_errors() {
        assert!(matches!(semiring_by_name("plus-times", None), Err(Error::UnknownSemiring(_))));
        assert!(matches!(semiring_by_name("union-intersect", None), Err(Error::MissingUniverse)));
        assert!(matches!(
            semiring_by_name("union-intersect", Some(65)),
            Err(Error::UniverseTooLarge(65))
        ));
    }

    #[test]
    fn domain_membership_checked_on_construction() {
        let sr = Semiring::max_min(Variant::NonNegative);
        assert!(sr.scalar(-1.0).is_err());
        assert!(sr.scalar(f64::INFINITY).is_ok());
        assert!(Semiring::max_plus().scalar(f64::INFINITY).is_err());
        assert!(Semiring::arith_real().scalar(f64::NAN).is_err());
    }

    #[test]
    fn xor_and_exhaustive() {
        let sr = Semiring::xor_and();
        for a in [false, true] {
            assert_eq!(sr.mul(a.into(), a.into()).unwrap(), a.into());
            assert_eq!(sr.add(a.into(), a.into()).unwrap(), false.into());
        }
    }

    #[test]
    fn custom_semiring_registration() {
        let sr = Semiring::custom(
            "min-times",
            Domain::Nat,
            BinaryOp::min(),
            BinaryOp::times(),
            Scalar::Nat(u64::MAX),
            None,
        );
        // u64::MAX is not an annihilator under multiplication
        if cfg!(debug_assertions) {
            assert!(matches!(sr, Err(Error::LawViolation { .. }) | Err(Error::Overflow { .. })));
        }

        let ok = Semiring::custom(
            "max-and",
            Domain::Bool,
            BinaryOp::max(),
            BinaryOp::and(),
            Scalar::Bool(false),
            Some(Scalar::Bool(true)),
        )
        .unwrap();
        assert_eq!(ok.add(true.into(), false.into()).unwrap(), true.into());

        let bogus = BinaryOp::custom("minus", Laws::COMMUTATIVE_ASSOCIATIVE, |a, b| match (a, b) {
            (Scalar::Int(x), Scalar::Int(y)) => Ok(Scalar::Int(x - y)),
            _ => unreachable!(),
        });
        let res = Semiring::custom("bad", Domain::Int, bogus, BinaryOp::times(), Scalar::Int(0), None);
        if cfg!(debug_assertions) {
            assert!(matches!(res, Err(Error::LawViolation { .. })));
        }
    }
}
