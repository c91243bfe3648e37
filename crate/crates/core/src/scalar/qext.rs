use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{int, rational_sqrt, Rational};
use crate::error::{Error, Result};

/// An element `a + b*sqrt(2)` of the real quadratic field `Q[sqrt 2]`.
///
/// Since `sqrt(2)` is irrational the pair `(a, b)` is unique, so derived
/// equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QExt {
    pub a: Rational,
    pub b: Rational,
}

impl QExt {
    pub fn new(a: Rational, b: Rational) -> Self {
        QExt { a, b }
    }

    /// `sqrt(2)`.
    pub fn sqrt2() -> Self {
        QExt::new(Rational::zero(), Rational::one())
    }

    /// `1/sqrt(2) = sqrt(2)/2`.
    pub fn frac_1_sqrt2() -> Self {
        QExt::new(Rational::zero(), super::rat(1, 2))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QExt::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a^2 - 2b^2 = x * conjugate(x)`.
    pub fn field_norm(&self) -> Rational {
        &self.a * &self.a - int(2) * &self.b * &self.b
    }

    pub fn checked_div(&self, rhs: &QExt) -> Result<QExt> {
        let n = rhs.field_norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self.clone() * rhs.conjugate();
        Ok(QExt::new(num.a / &n, num.b / n))
    }

    pub fn recip(&self) -> Result<QExt> {
        QExt::one().checked_div(self)
    }

    /// Exact sign of `a + b*sqrt(2)`.
    pub fn sign(&self) -> Ordering {
        let sa = rsign(&self.a);
        let sb = rsign(&self.b);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // Mixed signs: the component with the larger square wins.
            _ => {
                let a2 = &self.a * &self.a;
                let b2 = int(2) * &self.b * &self.b;
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Square root inside `Q[sqrt 2]`.
    ///
    /// `Ok(None)` means the root exists in the reals but not in the field.
    /// The returned root is nonnegative.
    pub fn sqrt(&self) -> Result<Option<QExt>> {
        if self.sign() == Ordering::Less {
            return Err(Error::NegativeSqrt);
        }
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Ok(Some(QExt::from(r)));
            }
            // a = 2c^2  =>  sqrt(a) = c*sqrt(2)
            if let Some(c) = rational_sqrt(&(&self.a / int(2))) {
                return Ok(Some(QExt::new(Rational::zero(), c)));
            }
            return Ok(None);
        }
        // (c + d*sqrt2)^2 = (c^2 + 2d^2) + 2cd*sqrt2
        let Some(s) = rational_sqrt(&self.field_norm()) else {
            return Ok(None);
        };
        for c2 in [(&self.a + &s) / int(2), (&self.a - &s) / int(2)] {
            let Some(c) = rational_sqrt(&c2) else {
                continue;
            };
            if c.is_zero() {
                continue;
            }
            let d = &self.b / (int(2) * &c);
            let root = QExt::new(c, d);
            if root.clone() * root.clone() == *self {
                let root = if root.sign() == Ordering::Less {
                    -root
                } else {
                    root
                };
                return Ok(Some(root));
            }
        }
        Ok(None)
    }
}

fn rsign(q: &Rational) -> Ordering {
    if q.is_zero() {
        Ordering::Equal
    } else if q.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl From<Rational> for QExt {
    fn from(a: Rational) -> Self {
        QExt::new(a, Rational::zero())
    }
}

impl From<i64> for QExt {
    fn from(a: i64) -> Self {
        QExt::from(int(a))
    }
}

impl PartialOrd for QExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QExt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }
}

impl Add for QExt {
    type Output = QExt;
    fn add(self, rhs: QExt) -> QExt {
        QExt::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for QExt {
    type Output = QExt;
    fn sub(self, rhs: QExt) -> QExt {
        QExt::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Mul for QExt {
    type Output = QExt;
    fn mul(self, rhs: QExt) -> QExt {
        let a = &self.a * &rhs.a + int(2) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &rhs.a * &self.b;
        QExt::new(a, b)
    }
}

impl Neg for QExt {
    type Output = QExt;
    fn neg(self) -> QExt {
        QExt::new(-self.a, -self.b)
    }
}

impl Zero for QExt {
    fn zero() -> Self {
        QExt::default()
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QExt {
    fn one() -> Self {
        QExt::from(Rational::one())
    }
}

/// Renders in the literal grammar: `3/2`, `1/2*s2`, `3/2+1*s2`, `1-1/2*s2`.
impl fmt::Display for QExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*s2", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*s2", self.a, self.b.abs())
        } else {
            write!(f, "{}+{}*s2", self.a, self.b)
        }
    }
}
