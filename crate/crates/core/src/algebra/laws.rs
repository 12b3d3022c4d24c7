//! Randomized checks of semiring laws.

use rand::Rng;

use super::scalar::Scalar;
use super::semiring::Semiring;
use crate::error::{Error, Result};

/// Equality with a relative tolerance for reals. `scale` is the magnitude
/// the rounding error is measured against (e.g. `|a|+|b|+|c|` for a
/// reassociated sum). Non-real scalars compare exactly.
pub fn scalars_close(x: &Scalar, y: &Scalar, rel: f64, scale: f64) -> bool {
    match (x, y) {
        (Scalar::Real(a), Scalar::Real(b)) => {
            if a == b {
                return true;
            }
            if !a.is_finite() || !b.is_finite() {
                return false;
            }
            (a - b).abs() <= rel * scale.max(a.abs()).max(b.abs())
        }
        _ => x == y,
    }
}

fn magnitude(v: &Scalar) -> f64 {
    match v {
        Scalar::Real(x) if x.is_finite() => x.abs(),
        _ => 0.0,
    }
}

/// Checks the operators' declared laws, both identities, the multiplicative
/// annihilator and two-sided distributivity on `samples` random triples.
pub fn check_semiring<R: Rng + ?Sized>(sr: &Semiring, samples: usize, rng: &mut R) -> Result<()> {
    const REL: f64 = 1e-9;
    let zero = sr.zero();
    let one = sr.one().ok();
    let (add, mul) = (sr.add_op(), sr.mul_op());
    let violation = |law: &'static str, detail: String| Error::LawViolation {
        semiring: sr.name().to_owned(),
        law,
        detail,
    };

    for _ in 0..samples {
        let (a, b, c) = (sr.sample(rng), sr.sample(rng), sr.sample(rng));
        let scale = magnitude(&a) + magnitude(&b) + magnitude(&c);

        if add.apply(a, zero)? != a || add.apply(zero, a)? != a {
            return Err(violation("additive identity", format!("a = {a}")));
        }
        if mul.apply(a, zero)? != zero || mul.apply(zero, a)? != zero {
            return Err(violation("multiplicative annihilator", format!("a = {a}")));
        }
        if let Some(one) = one {
            if mul.apply(a, one)? != a || mul.apply(one, a)? != a {
                return Err(violation("multiplicative identity", format!("a = {a}")));
            }
        }
        let dist_scale = magnitude(&a) * (magnitude(&b) + magnitude(&c));
        let left = mul.apply(a, add.apply(b, c)?)?;
        let right = add.apply(mul.apply(a, b)?, mul.apply(a, c)?)?;
        if !scalars_close(&left, &right, REL, dist_scale) {
            return Err(violation("left distributivity", format!("({a}, {b}, {c})")));
        }
        let left = mul.apply(add.apply(b, c)?, a)?;
        let right = add.apply(mul.apply(b, a)?, mul.apply(c, a)?)?;
        if !scalars_close(&left, &right, REL, dist_scale) {
            return Err(violation("right distributivity", format!("({a}, {b}, {c})")));
        }
        for (op, label) in [(add, "⊕"), (mul, "⊗")] {
            let laws = op.laws();
            if laws.commutative && op.apply(a, b)? != op.apply(b, a)? {
                return Err(violation("commutativity", format!("{label} on ({a}, {b})")));
            }
            if laws.associative {
                let left = op.apply(op.apply(a, b)?, c)?;
                let right = op.apply(a, op.apply(b, c)?)?;
                let s = if label == "⊗" {
                    magnitude(&a) * magnitude(&b) * magnitude(&c)
                } else {
                    scale
                };
                if !scalars_close(&left, &right, REL, s) {
                    return Err(violation("associativity", format!("{label} on ({a}, {b}, {c})")));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{semiring_by_name, SEMIRING_NAMES};
    use rand::SeedableRng;

    #[test]
    fn named_semirings_pass_their_own_checks() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for name in SEMIRING_NAMES {
            let sr = semiring_by_name(name, Some(16)).unwrap();
            check_semiring(&sr, 2_000, &mut rng).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn close_handles_infinities() {
        let inf = Scalar::Real(f64::INFINITY);
        assert!(scalars_close(&inf, &inf, 1e-12, 0.0));
        assert!(!scalars_close(&inf, &Scalar::Real(1e300), 1e-12, 1e300));
        assert!(scalars_close(&Scalar::Real(1.0), &Scalar::Real(1.0 + 1e-14), 1e-12, 1.0));
    }
}
