//! Exact rational scalars.
//!
//! The ground field is ℚ with arbitrary-precision integers; `num-rational`
//! already maintains the canonical reduced form with a positive denominator,
//! so the crate only adds a few constructors used throughout.

use num_bigint::BigInt;

/// Arbitrary-precision rational in canonical reduced form.
pub type Rational = num_rational::BigRational;

/// The rational `n`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The rational `num/den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Binomial coefficient as a rational scalar.
pub(crate) fn binomial(n: u32, k: u32) -> Rational {
    Rational::from_integer(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn canonical_form() {
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(ratio(1, -2), ratio(-1, 2));
        assert!(ratio(-1, 2).denom() > &BigInt::zero());
        assert!(rat(0).is_zero());
        assert!(rat(1).is_one());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), rat(6));
        assert_eq!(binomial(5, 0), rat(1));
        assert_eq!(binomial(3, 5), rat(0));
    }
}
