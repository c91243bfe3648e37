//! Scalar fields: exact `Q[sqrt 2]`, plain rationals for the approximate
//! backend, and complex numbers over either.

mod approx;
mod complex;
mod literal;
mod qext;
mod rational;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use approx::{approx_of_qext, iter_sqrt, Tolerance};
pub use complex::CScalar;
pub use literal::{parse_cplx, parse_qext, parse_rational};
pub use qext::QExt;
pub use rational::{int, is_rational_square, pow10_inv, rat, rational_sqrt, to_decimal, Rational};

/// An ordered field the state machinery can compute over.
pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(q: Rational) -> Self;

    fn checked_div(&self, rhs: &Self) -> Result<Self>;

    /// Exact sign of the value.
    fn sign(&self) -> Ordering;
}

impl Real for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }

    fn sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl Real for QExt {
    fn from_rational(q: Rational) -> Self {
        QExt::from(q)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        QExt::checked_div(self, rhs)
    }

    fn sign(&self) -> Ordering {
        QExt::sign(self)
    }
}
