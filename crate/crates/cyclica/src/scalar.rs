//! Exact rational scalars.
//!
//! Every quantity in the engine is a rational number in lowest terms with a
//! positive denominator; there is no floating point anywhere. `Scalar` is
//! backed by [`num::BigRational`], which maintains exactly that normal form.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always in lowest terms, denominator > 0.
pub type Scalar = BigRational;

/// Error produced when a fraction string cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("empty scalar string")]
    Empty,
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed fraction `{0}` (expected `p` or `p/q`)")]
    Malformed(String),
}

/// The scalar `n`.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// The scalar `n/d`. Panics if `d == 0`; intended for literals in code.
pub fn frac(n: i64, d: i64) -> Scalar {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with optional leading sign, exact and unlimited
/// precision. Rejects zero denominators instead of panicking.
pub fn parse_scalar(s: &str) -> Result<Scalar, ScalarParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    let parse_int = |part: &str| -> Result<BigInt, ScalarParseError> {
        part.trim()
            .parse::<BigInt>()
            .map_err(|_| ScalarParseError::BadInteger(part.trim().to_string()))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            if den.contains('/') {
                return Err(ScalarParseError::Malformed(s.to_string()));
            }
            let n = parse_int(num)?;
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(ScalarParseError::ZeroDenominator(s.to_string()));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Formats a scalar as `"p"` or `"p/q"` (lowest terms, `q > 0`). Inverse of
/// [`parse_scalar`] on its image, so reports round-trip byte-for-byte.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "1", "-7", "3/4", "-3/4", "22/7"] {
            let x = parse_scalar(s).unwrap();
            assert_eq!(format_scalar(&x), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_scalar("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse_scalar("4/2").unwrap(), int(2));
        assert_eq!(format_scalar(&parse_scalar("3/-6").unwrap()), "-1/2");
        assert_eq!(format_scalar(&parse_scalar("-0").unwrap()), "0");
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert_eq!(
            parse_scalar("1/0"),
            Err(ScalarParseError::ZeroDenominator("1/0".to_string()))
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("a/b").is_err());
        assert!(parse_scalar("1/2/3").is_err());
        assert!(parse_scalar("1.5").is_err());
    }
}
