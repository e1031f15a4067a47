//! Scalar abstraction shared by the stochastic-matrix machinery.
//!
//! Floating types compare against explicit tolerances; the exact rational
//! type ignores tolerances and compares exactly.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

pub trait Scalar: Clone + PartialOrd + Debug + Display + Num + Signed + Send + Sync + 'static {
    /// True when arithmetic is exact and tolerances collapse to zero.
    const EXACT: bool;

    /// Threshold below which an entry counts as zero (support detection).
    const DEFAULT_TOL: f64;

    /// Converts a tolerance to this scalar type. Exact types return zero.
    fn tolerance(tol: f64) -> Self;

    fn to_f64(&self) -> f64;

    fn approx_eq(&self, other: &Self, tol: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= *tol
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const DEFAULT_TOL: f64 = 1e-12;

    fn tolerance(tol: f64) -> Self {
        tol
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
    const DEFAULT_TOL: f64 = 1e-6;

    fn tolerance(tol: f64) -> Self {
        tol as f32
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    const DEFAULT_TOL: f64 = 0.0;

    fn tolerance(_tol: f64) -> Self {
        BigRational::from_integer(BigInt::from(0))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Parses `"p/q"`, `"p"` or a plain integer string into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(num, den))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Shorthand for `num / den` as an exact rational.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("2/4"), Some(ratio(1, 2)));
        assert_eq!(parse_rational(" 3 "), Some(ratio(3, 1)));
        assert_eq!(parse_rational("-1/3"), Some(ratio(-1, 3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn exact_tolerance_is_zero() {
        assert_eq!(<BigRational as Scalar>::tolerance(0.5), ratio(0, 1));
        assert!(ratio(1, 3).approx_eq(&ratio(2, 6), &BigRational::tolerance(1.0)));
        assert!(!ratio(1, 3).approx_eq(&ratio(1, 2), &BigRational::tolerance(1.0)));
    }

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(ratio(2, 4).to_string(), "1/2");
        assert_eq!(ratio(4, 4).to_string(), "1");
        assert_eq!(ratio(0, 7).to_string(), "0");
    }
}
