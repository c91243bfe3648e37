//! Arbitrary-precision rationals and the few helpers the rest of the crate
//! needs on top of [`num_rational::BigRational`].

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

/// Lowest-terms rational with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `10^-k`.
pub fn pow10_inv(k: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), k as usize))
}

fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

/// Exact rational square root: `Some(r)` with `r >= 0` and `r * r == q` when
/// both numerator and denominator are perfect squares.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let num = integer_sqrt_exact(q.numer())?;
    let den = integer_sqrt_exact(q.denom())?;
    Some(Rational::new(num, den))
}

pub fn is_rational_square(q: &Rational) -> bool {
    rational_sqrt(q).is_some()
}

/// Fixed-point rendering rounded half away from zero.
pub fn to_decimal(q: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + rat(1, 2)).floor().to_integer();
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let negative = q.is_negative() && !rounded.is_zero();
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac_part.to_string(),
        width = digits
    )
}
