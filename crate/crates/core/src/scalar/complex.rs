use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Real;
use crate::error::Result;

/// Complex number `re + im*i` over a real scalar field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CScalar<R> {
    pub re: R,
    pub im: R,
}

impl<R: Real> CScalar<R> {
    pub fn new(re: R, im: R) -> Self {
        CScalar { re, im }
    }

    pub fn real(re: R) -> Self {
        CScalar::new(re, R::zero())
    }

    pub fn i() -> Self {
        CScalar::new(R::zero(), R::one())
    }

    pub fn zero() -> Self {
        CScalar::real(R::zero())
    }

    pub fn one() -> Self {
        CScalar::real(R::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        CScalar::new(self.re.clone(), -self.im.clone())
    }

    /// `z * conj(z)`, which is always real.
    pub fn norm_sq(&self) -> R {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn scale(&self, k: &R) -> Self {
        CScalar::new(self.re.clone() * k.clone(), self.im.clone() * k.clone())
    }

    pub fn div_real(&self, k: &R) -> Result<Self> {
        Ok(CScalar::new(
            self.re.checked_div(k)?,
            self.im.checked_div(k)?,
        ))
    }

    pub fn map<S: Real>(&self, f: impl Fn(&R) -> S) -> CScalar<S> {
        CScalar::new(f(&self.re), f(&self.im))
    }
}

impl<R: Real> Add for CScalar<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        CScalar::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<R: Real> Sub for CScalar<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        CScalar::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<R: Real> Mul for CScalar<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        CScalar::new(re, im)
    }
}

impl<R: Real> Neg for CScalar<R> {
    type Output = Self;
    fn neg(self) -> Self {
        CScalar::new(-self.re, -self.im)
    }
}

impl<R: fmt::Display> fmt::Display for CScalar<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, QExt, Rational};

    #[test]
    fn examples() {
        let z = CScalar::new(rat(3, 5), rat(4, 5));
        assert_eq!(z.norm_sq(), rat(1, 1));

        let i: CScalar<Rational> = CScalar::i();
        assert_eq!(i.conjugate(), CScalar::new(rat(0, 1), rat(-1, 1)));

        let h = CScalar::real(QExt::frac_1_sqrt2());
        assert_eq!(h.clone() * h, CScalar::real(QExt::from(rat(1, 2))));
    }

    #[test]
    fn display() {
        let z = CScalar::new(QExt::frac_1_sqrt2(), QExt::from(0));
        assert_eq!(z.to_string(), "(1/2*s2, 0)");
    }
}
