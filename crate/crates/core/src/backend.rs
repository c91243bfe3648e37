//! The two arithmetic backends.
//!
//! [`Exact`] computes over complex `Q[sqrt 2]` and defers any normalization
//! whose square root leaves the field. [`Approx`] computes over plain
//! rationals and replaces every square root with a bisection to a fixed
//! tolerance.

use std::fmt::Debug;

use num_traits::Signed;

use crate::error::Result;
use crate::scalar::{approx_of_qext, iter_sqrt, rat, QExt, Rational, Real, Tolerance};

pub trait Backend: Clone + Debug + Send + Sync {
    type Real: Real;

    fn name(&self) -> &'static str;

    /// Square root of a nonnegative scalar; `Ok(None)` when the backend
    /// cannot represent it.
    fn sqrt(&self, x: &Self::Real) -> Result<Option<Self::Real>>;

    /// The Hadamard factor `1/sqrt(2)`.
    fn frac_1_sqrt2(&self) -> Self::Real;

    /// Converts an exact literal into this backend's scalars.
    fn lift(&self, x: &QExt) -> Self::Real;

    /// Rational within `tol` of `x`.
    fn to_rational(&self, x: &Self::Real, tol: &Tolerance) -> Rational;

    /// Whether two scalars count as equal for verification purposes.
    fn agrees(&self, a: &Self::Real, b: &Self::Real) -> bool;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Exact;

impl Backend for Exact {
    type Real = QExt;

    fn name(&self) -> &'static str {
        "exact"
    }

    fn sqrt(&self, x: &QExt) -> Result<Option<QExt>> {
        x.sqrt()
    }

    fn frac_1_sqrt2(&self) -> QExt {
        QExt::frac_1_sqrt2()
    }

    fn lift(&self, x: &QExt) -> QExt {
        x.clone()
    }

    fn to_rational(&self, x: &QExt, tol: &Tolerance) -> Rational {
        approx_of_qext(x, tol)
    }

    fn agrees(&self, a: &QExt, b: &QExt) -> bool {
        a == b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approx {
    eps: Tolerance,
    agreement: Rational,
    frac_1_sqrt2: Rational,
}

impl Approx {
    /// Agreement tolerance used when none is given: `10^-4`.
    pub fn default_agreement() -> Rational {
        rat(1, 10_000)
    }

    pub fn new(eps: Tolerance) -> Self {
        Approx::with_agreement(eps, Approx::default_agreement())
    }

    /// `agreement` bounds [`Backend::agrees`]; it is looser than `eps`
    /// because rational inputs like `131072/185363` only approximate the
    /// amplitudes they stand for.
    pub fn with_agreement(eps: Tolerance, agreement: Rational) -> Self {
        let frac_1_sqrt2 = iter_sqrt(&rat(1, 2), &eps).expect("1/2 is nonnegative");
        Approx {
            eps,
            agreement,
            frac_1_sqrt2,
        }
    }

    pub fn eps(&self) -> &Tolerance {
        &self.eps
    }

    pub fn agreement(&self) -> &Rational {
        &self.agreement
    }
}

impl Default for Approx {
    fn default() -> Self {
        Approx::new(Tolerance::default())
    }
}

impl Backend for Approx {
    type Real = Rational;

    fn name(&self) -> &'static str {
        "approx"
    }

    fn sqrt(&self, x: &Rational) -> Result<Option<Rational>> {
        iter_sqrt(x, &self.eps).map(Some)
    }

    fn frac_1_sqrt2(&self) -> Rational {
        self.frac_1_sqrt2.clone()
    }

    fn lift(&self, x: &QExt) -> Rational {
        approx_of_qext(x, &self.eps)
    }

    fn to_rational(&self, x: &Rational, _tol: &Tolerance) -> Rational {
        x.clone()
    }

    fn agrees(&self, a: &Rational, b: &Rational) -> bool {
        (a - b).abs() <= self.agreement
    }
}
