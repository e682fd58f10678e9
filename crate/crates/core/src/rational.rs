//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`: arbitrary-precision, always in
//! lowest terms with a positive denominator, zero normalized to 0/1. The
//! helpers here cover the conversions the rest of the crate needs.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics on d == 0.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Nearest f64; falls back to a magnitude-scaled quotient when numerator or
/// denominator individually overflow f64.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let bits = (q.numer().bits() as i64 - q.denom().bits() as i64).clamp(-1020, 1020);
        let scaled = q / Rational::from_integer(BigInt::from(2).pow(bits.unsigned_abs() as u32));
        let base = scaled.to_f64().unwrap_or(if q.is_negative() { -1.0 } else { 1.0 });
        base * 2f64.powi(bits as i32)
    })
}

/// True iff the rational is an integer.
pub fn is_integer(q: &Rational) -> bool {
    q.denom() == &BigInt::from(1)
}

/// The integer value, if the rational is one.
pub fn as_integer(q: &Rational) -> Option<BigInt> {
    is_integer(q).then(|| q.numer().clone())
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
pub fn to_string(q: &Rational) -> String {
    if q.is_zero() {
        "0".to_string()
    } else {
        q.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(ratio(1, -2), ratio(-1, 2));
        assert!(ratio(1, -2).denom() > &BigInt::zero());
        assert_eq!(ratio(0, 7), rat(0));
    }

    #[test]
    fn string_forms() {
        assert_eq!(to_string(&rat(5)), "5");
        assert_eq!(to_string(&ratio(-3, 2)), "-3/2");
        assert_eq!(to_string(&rat(0)), "0");
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(to_f64(&ratio(1, 2)), 0.5);
        assert!((to_f64(&ratio(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
    }
}
