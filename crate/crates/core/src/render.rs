//! State files and state rendering.
//!
//! One term per line, `cplx | bitstring`, qubit 0 leftmost:
//!
//! ```text
//! # Bell pair
//! (1/2*s2, 0) | 00
//! (1/2*s2, 0) | 11
//! ```

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::backend::Backend;
use crate::error::{Error, Result};
use crate::qstate::{bits_from_str, bits_to_string, QState, Term};
use crate::scalar::{
    iter_sqrt, parse_cplx, pow10_inv, rat, to_decimal, CScalar, Rational, Real, Tolerance,
};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a state file and canonicalizes it.
pub fn parse_state<B: Backend>(text: &str, backend: &B) -> Result<QState<B::Real>> {
    let mut terms = Vec::new();
    let mut width: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (coeff, bits) = line
            .rsplit_once('|')
            .ok_or_else(|| parse_err(lineno, "expected `cplx | bitstring`"))?;
        let bits = bits.trim();
        let bits = bits_from_str(bits)
            .filter(|b| !b.is_empty())
            .ok_or_else(|| parse_err(lineno, format!("bad bitstring `{bits}`")))?;
        match width {
            Some(w) if w != bits.len() => {
                return Err(parse_err(
                    lineno,
                    format!(
                        "bitstring has {} qubits, earlier lines have {w}",
                        bits.len()
                    ),
                ));
            }
            _ => width = Some(bits.len()),
        }
        let c = parse_cplx(coeff).map_err(|e| parse_err(lineno, e.to_string()))?;
        terms.push(Term::new(c.map(|x| backend.lift(x)), bits));
    }
    let n = width.ok_or_else(|| parse_err(0, "state has no terms"))?;
    QState::sort_and_merge(terms, n)
}

/// Inline initial-state specs: `zero:<n>` or `qubit:<cplx>,<cplx>`.
/// Returns `None` when `spec` is neither (e.g. a file path).
pub fn parse_inline_state<B: Backend>(spec: &str, backend: &B) -> Option<Result<QState<B::Real>>> {
    if let Some(n) = spec.strip_prefix("zero:") {
        return Some(
            n.trim()
                .parse::<usize>()
                .map_err(|_| Error::Literal(spec.to_string()))
                .and_then(QState::zero_qstate),
        );
    }
    let body = spec.strip_prefix("qubit:")?;
    Some(parse_qubit_pair(body).and_then(|(a, b)| {
        QState::make_qubit(a.map(|x| backend.lift(x)), b.map(|x| backend.lift(x)))
    }))
}

type ExactPair = (CScalar<crate::scalar::QExt>, CScalar<crate::scalar::QExt>);

/// Splits `(a,b),(c,d)` into two complex literals.
pub fn parse_qubit_pair(body: &str) -> Result<ExactPair> {
    let close = body
        .find(')')
        .ok_or_else(|| Error::Literal(body.to_string()))?;
    let (first, rest) = body.split_at(close + 1);
    let second = rest
        .trim_start()
        .strip_prefix(',')
        .ok_or_else(|| Error::Literal(body.to_string()))?;
    Ok((parse_cplx(first)?, parse_cplx(second)?))
}

/// Exact rendering in the state-file grammar. Fails with `NotRepresentable`
/// when the state still carries a deferred normalization.
pub fn format_state<R: Real>(state: &QState<R>, sparse: bool) -> Result<String> {
    if *state.scale_sq() != R::one() {
        return Err(Error::NotRepresentable(format!(
            "amplitudes need sqrt({}); try --backend approx or --emit decimal",
            state.scale_sq()
        )));
    }
    let mut out = String::new();
    for (i, c) in state.amplitudes().iter().enumerate() {
        if sparse && c.is_zero() {
            continue;
        }
        writeln!(out, "{c} | {}", bits_to_string(&state.basis_bits(i))).unwrap();
    }
    Ok(out)
}

/// Physical amplitudes as rationals, each component within `tol`.
pub fn approx_amplitudes<B: Backend>(
    state: &QState<B::Real>,
    backend: &B,
    tol: &Tolerance,
) -> Result<Vec<CScalar<Rational>>> {
    if *state.scale_sq() == B::Real::one() {
        return Ok(state
            .amplitudes()
            .iter()
            .map(|c| c.map(|x| backend.to_rational(x, tol)))
            .collect());
    }
    // Deferred scale: amplitude = coeff / sqrt(scale_sq). Coefficients are
    // bounded by sqrt(scale_sq), so tightening every step by 10^-3 keeps the
    // quotient well within `tol`.
    let fine = Tolerance::new(tol.value() * pow10_inv(3))?;
    let scale = backend.to_rational(state.scale_sq(), &fine);
    let root = iter_sqrt(&scale, &fine)?;
    let floor = Tolerance::new(tol.value() * rat(1, 2))?;
    let denom = if root.is_zero() {
        floor.value().clone()
    } else {
        root
    };
    state
        .amplitudes()
        .iter()
        .map(|c| c.map(|x| backend.to_rational(x, &fine)).div_real(&denom))
        .collect()
}

/// Fixed-point rendering with `digits` decimals: `(0.70711, 0.00000) | 00`.
pub fn format_state_decimal<B: Backend>(
    state: &QState<B::Real>,
    backend: &B,
    digits: usize,
    sparse: bool,
) -> Result<String> {
    let tol = Tolerance::pow10(digits as u32 + 2);
    let amps = approx_amplitudes(state, backend, &tol)?;
    let mut out = String::new();
    for (i, (exact, c)) in state.amplitudes().iter().zip(&amps).enumerate() {
        if sparse && exact.is_zero() {
            continue;
        }
        writeln!(
            out,
            "({}, {}) | {}",
            to_decimal(&c.re, digits),
            to_decimal(&c.im, digits),
            bits_to_string(&state.basis_bits(i))
        )
        .unwrap();
    }
    Ok(out)
}
