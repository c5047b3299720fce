//! Arbitrary-precision rational scalars and coordinates in `[0, 1)`.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// The scalar type used everywhere: an arbitrary-precision rational,
/// automatically kept in lowest terms with a positive denominator.
pub type Rat = num_rational::BigRational;

/// Shorthand constructor for small rationals.
///
/// Panics if `denom == 0`.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Formats a rational in the canonical `p/q` form (lowest terms, `q > 0`),
/// e.g. `0/1`, `-3/4`.
pub fn format_rat(r: &Rat) -> String {
    let mut s = r.numer().to_string();
    s.push('/');
    s.push_str(&r.denom().to_string());
    s
}

/// Parses a rational literal: `p/q` with `q > 0`, or a bare integer `p`
/// (read as `p/1`). The fraction need not be in lowest terms; the result is.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::BadRational(s.to_string());
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer = BigInt::from_str(num_str).map_err(|_| bad())?;
    let denom = BigInt::from_str(den_str).map_err(|_| bad())?;
    if !denom.is_positive() {
        return Err(bad());
    }
    Ok(Rat::new(numer, denom))
}

/// A rational coordinate of the space `[0, 1)`.
///
/// The right endpoint `1` is deliberately not representable here; it occurs
/// only as an interval bound.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatPoint(Rat);

impl RatPoint {
    /// Wraps a rational, rejecting values outside `[0, 1)`.
    pub fn new(value: Rat) -> Result<Self> {
        if value.is_negative() || value >= Rat::one() {
            return Err(Error::PointOutOfUnit(format_rat(&value)));
        }
        Ok(RatPoint(value))
    }

    pub fn zero() -> Self {
        RatPoint(Rat::zero())
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(numer: i64, denom: i64) -> Result<Self> {
        RatPoint::new(rat(numer, denom))
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn into_value(self) -> Rat {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rat(&self.0))
    }
}

impl fmt::Debug for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoint({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_live_in_the_unit_interval() {
        assert!(RatPoint::from_ints(0, 1).is_ok());
        assert!(RatPoint::from_ints(2, 3).is_ok());
        assert!(RatPoint::from_ints(1, 1).is_err());
        assert!(RatPoint::from_ints(-1, 5).is_err());
        assert!(RatPoint::from_ints(7, 5).is_err());
    }

    #[test]
    fn literals_round_trip_in_lowest_terms() {
        let r = parse_rat("6/8").unwrap();
        assert_eq!(r, rat(3, 4));
        assert_eq!(format_rat(&r), "3/4");
        assert_eq!(parse_rat("5").unwrap(), rat(5, 1));
        assert_eq!(parse_rat("-2/6").unwrap(), rat(-1, 3));
        assert_eq!(format_rat(&rat(0, 9)), "0/1");
    }

    #[test]
    fn bad_literals_are_rejected() {
        for s in ["", "/", "1/", "/2", "a", "1/0", "1/-2", "1.5", "1 /2"] {
            assert!(parse_rat(s).is_err(), "accepted {s:?}");
        }
    }
}
