//! Arbitrary-precision rational scalars.
//!
//! `BigRational` already keeps values in lowest terms with a positive
//! denominator, which is exactly the canonical form we need, so this
//! module is a thin layer of constructors on top of it.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Size proxy used for pivot selection: bits of numerator plus denominator.
pub fn bit_size(r: &Rat) -> u64 {
    r.numer().abs().bits() + r.denom().bits()
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Generalized binomial coefficient C(n, k) for integer `n` (possibly
/// negative) and natural `k`.
pub fn binomial(n: i64, k: u32) -> Rat {
    let mut num = int(1);
    for j in 0..k as i64 {
        num *= int(n - j);
    }
    let mut den = int(1);
    for j in 1..=k as i64 {
        den *= int(j);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = rat(2, -4);
        assert_eq!(r, rat(-1, 2));
        assert!(r.denom() > &BigInt::from(0));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(0, 2), int(0));
        assert_eq!(binomial(-1, 3), int(-1));
        assert_eq!(binomial(-3, 2), int(6));
        assert_eq!(binomial(5, 0), int(1));
    }
}
