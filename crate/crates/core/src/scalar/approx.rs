//! Bisection square roots for the rational-only backend.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::qext::QExt;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// A strictly positive rational accuracy bound.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tolerance(Rational);

impl Tolerance {
    pub fn new(eps: Rational) -> Result<Self> {
        if !eps.is_positive() {
            return Err(Error::InvalidTolerance);
        }
        Ok(Tolerance(eps))
    }

    /// `10^-k`.
    pub fn pow10(k: u32) -> Self {
        Tolerance(super::rational::pow10_inv(k))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::pow10(12)
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Rational `r` with `|r - sqrt(x)| <= e`.
///
/// Bisects `[0, max(1, ceil x)]` until the bracket is no wider than `e` and
/// returns its midpoint. The upper end is rounded up to an integer so every
/// bracket endpoint stays dyadic.
pub fn iter_sqrt(x: &Rational, e: &Tolerance) -> Result<Rational> {
    if x.is_negative() {
        return Err(Error::NegativeSqrt);
    }
    if x.is_zero() {
        return Ok(Rational::zero());
    }
    let top = x.ceil().max(Rational::one()).to_integer();
    // After k halvings the bracket is [lo*w, (lo+1)*w] with w = top/2^k.
    // The midpoint test (2lo+1)^2 w_{k+1}^2 <= p/q becomes the integer
    // comparison (2lo+1)^2 * top^2 * q <= p * 4^(k+1).
    let (p, q) = (x.numer(), x.denom());
    let top_sq_q = &top * &top * q;
    let mut lo = BigInt::zero();
    let mut k: usize = 0;
    while Rational::new(top.clone(), BigInt::one() << k) > *e.value() {
        let odd = (&lo << 1usize) + 1u32;
        let fits = &odd * &odd * &top_sq_q <= p << (2 * (k + 1));
        lo = if fits { odd } else { lo << 1usize };
        k += 1;
    }
    // midpoint (lo + 1/2) * top / 2^k
    let num = ((lo << 1usize) + 1u32) * top;
    Ok(Rational::new(num, BigInt::one() << (k + 1)))
}

/// Rational approximation of `a + b*sqrt(2)` accurate to `e`.
pub fn approx_of_qext(x: &QExt, e: &Tolerance) -> Rational {
    if x.b.is_zero() {
        return x.a.clone();
    }
    let weight = x.b.abs().max(Rational::one());
    let inner = Tolerance(e.value() / weight);
    let root2 = iter_sqrt(&int(2), &inner).expect("2 is nonnegative");
    &x.a + &x.b * root2
}
