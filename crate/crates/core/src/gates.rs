//! The X, Z, H, I, CN and M gates. Each takes a state and returns a new one;
//! none of them normalize their output.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed};

use crate::backend::Backend;
use crate::error::{Error, Result};
use crate::qstate::QState;
use crate::scalar::{CScalar, Rational, Real};

/// A rational in `[0, 1]` fed to a measurement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RandomDraw(Rational);

impl RandomDraw {
    pub fn new(r: Rational) -> Result<Self> {
        if r.is_negative() || r > Rational::one() {
            return Err(Error::DrawOutOfRange(r.to_string()));
        }
        Ok(RandomDraw(r))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl fmt::Display for RandomDraw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn gate_x<R: Real>(s: &QState<R>, n: usize) -> Result<QState<R>> {
    let mask = s.qubit_mask(n)?;
    let src = s.amplitudes();
    let amps = (0..src.len()).map(|i| src[i ^ mask].clone()).collect();
    Ok(s.with_amplitudes(amps))
}

pub fn gate_z<R: Real>(s: &QState<R>, n: usize) -> Result<QState<R>> {
    let mask = s.qubit_mask(n)?;
    let amps = s
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, c)| if i & mask != 0 { -c.clone() } else { c.clone() })
        .collect();
    Ok(s.with_amplitudes(amps))
}

/// `a|0> + b|1>  ->  ((a+b)/sqrt2)|0> + ((a-b)/sqrt2)|1>` on qubit `n`.
pub fn gate_h<B: Backend>(s: &QState<B::Real>, n: usize, backend: &B) -> Result<QState<B::Real>> {
    let mask = s.qubit_mask(n)?;
    let k = backend.frac_1_sqrt2();
    let src = s.amplitudes();
    let mut amps = vec![CScalar::zero(); src.len()];
    for i in (0..src.len()).filter(|i| i & mask == 0) {
        let a = src[i].clone();
        let b = src[i | mask].clone();
        amps[i] = (a.clone() + b.clone()).scale(&k);
        amps[i | mask] = (a - b).scale(&k);
    }
    Ok(s.with_amplitudes(amps))
}

pub fn gate_i<R: Real>(s: &QState<R>, n: usize) -> Result<QState<R>> {
    s.qubit_mask(n)?;
    Ok(s.clone())
}

/// Flips `target` on every term whose `control` bit is set.
pub fn gate_cn<R: Real>(s: &QState<R>, control: usize, target: usize) -> Result<QState<R>> {
    let cmask = s.qubit_mask(control)?;
    let tmask = s.qubit_mask(target)?;
    if control == target {
        return Err(Error::SelfControlled(control));
    }
    let src = s.amplitudes();
    let amps = (0..src.len())
        .map(|i| {
            let from = if i & cmask != 0 { i ^ tmask } else { i };
            src[from].clone()
        })
        .collect();
    Ok(s.with_amplitudes(amps))
}

/// Probability that qubit `n` reads `|0>`, as a ratio of squared norms so
/// it is correct for states that are not normalized.
pub fn prob_zero<R: Real>(s: &QState<R>, n: usize) -> Result<R> {
    let (p0, total) = split_norms(s, n)?;
    p0.checked_div(&total)
}

pub fn prob_one<R: Real>(s: &QState<R>, n: usize) -> Result<R> {
    let (p0, total) = split_norms(s, n)?;
    (total.clone() - p0).checked_div(&total)
}

fn split_norms<R: Real>(s: &QState<R>, n: usize) -> Result<(R, R)> {
    let mask = s.qubit_mask(n)?;
    let mut zero = R::zero();
    let mut total = R::zero();
    for (i, c) in s.amplitudes().iter().enumerate() {
        let w = c.norm_sq();
        if i & mask == 0 {
            zero = zero + w.clone();
        }
        total = total + w;
    }
    Ok((zero, total))
}

/// Outcome of measuring qubit `n` with draw `r`: `|0>` iff `r < p0`.
///
/// An outcome of probability zero is never selected, so with `p0 = 1` the
/// draw `r = 1` still reads `|0>`.
pub fn measure_outcome<R: Real>(s: &QState<R>, n: usize, r: &RandomDraw) -> Result<bool> {
    let (zero, total) = split_norms(s, n)?;
    if total.is_zero() {
        return Err(Error::ZeroState);
    }
    if zero.is_zero() {
        return Ok(true);
    }
    if zero == total {
        return Ok(false);
    }
    let p0 = zero.checked_div(&total)?;
    let below = (p0 - R::from_rational(r.value().clone())).sign() == Ordering::Greater;
    Ok(!below)
}

/// Measures qubit `n` and zeroes every term inconsistent with the outcome.
/// The result is not renormalized.
pub fn gate_m<R: Real>(s: &QState<R>, n: usize, r: &RandomDraw) -> Result<QState<R>> {
    let outcome = measure_outcome(s, n, r)?;
    let mask = s.qubit_mask(n)?;
    let amps = s
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if (i & mask != 0) == outcome {
                c.clone()
            } else {
                CScalar::zero()
            }
        })
        .collect();
    Ok(s.with_amplitudes(amps))
}
