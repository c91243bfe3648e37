//! Text literals for scalars.
//!
//! ```text
//! rat  := ['-'] digits ['/' digits]
//! qext := rat | [rat ('+'|'-')] rat '*' 's2' | rat ('+'|'-') 's2'
//! cplx := '(' qext ',' qext ')'
//! ```
//!
//! Whitespace between tokens is ignored.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::complex::CScalar;
use super::qext::QExt;
use super::rational::Rational;
use crate::error::{Error, Result};

fn bad(s: &str) -> Error {
    Error::Literal(s.to_string())
}

fn strip_ws(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn parse_digits(s: &str, whole: &str) -> Result<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad(whole));
    }
    s.parse().map_err(|_| bad(whole))
}

fn parse_rat_compact(s: &str, whole: &str) -> Result<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (parse_digits(n, whole)?, parse_digits(d, whole)?),
        None => (parse_digits(body, whole)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(bad(whole));
    }
    let num = if neg { -num } else { num };
    Ok(Rational::new(num, den))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let compact = strip_ws(s);
    parse_rat_compact(&compact, s)
}

pub fn parse_qext(s: &str) -> Result<QExt> {
    let compact = strip_ws(s);
    parse_qext_compact(&compact, s)
}

fn parse_qext_compact(c: &str, whole: &str) -> Result<QExt> {
    let Some(body) = c.strip_suffix("s2") else {
        return Ok(QExt::from(parse_rat_compact(c, whole)?));
    };
    if let Some(body) = body.strip_suffix('*') {
        // Optional rational part, then a (possibly signed) sqrt2 coefficient.
        let split = body
            .char_indices()
            .skip(1)
            .find(|&(_, ch)| ch == '+' || ch == '-');
        return match split {
            None => Ok(QExt::new(Rational::zero(), parse_rat_compact(body, whole)?)),
            Some((idx, op)) => {
                let a = parse_rat_compact(&body[..idx], whole)?;
                let b = parse_rat_compact(&body[idx + 1..], whole)?;
                Ok(QExt::new(a, if op == '-' { -b } else { b }))
            }
        };
    }
    // `rat+s2`, `rat-s2`, and the bare `s2` / `-s2` shorthands.
    let (rest, b) = if let Some(rest) = body.strip_suffix('+') {
        (rest, Rational::one())
    } else if let Some(rest) = body.strip_suffix('-') {
        (rest, -Rational::one())
    } else if body.is_empty() {
        ("", Rational::one())
    } else {
        return Err(bad(whole));
    };
    let a = if rest.is_empty() {
        Rational::zero()
    } else {
        parse_rat_compact(rest, whole)?
    };
    if rest.is_empty() && body == "+" {
        return Err(bad(whole));
    }
    Ok(QExt::new(a, b))
}

pub fn parse_cplx(s: &str) -> Result<CScalar<QExt>> {
    let compact = strip_ws(s);
    let inner = compact
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| bad(s))?;
    let (re, im) = inner.split_once(',').ok_or_else(|| bad(s))?;
    Ok(CScalar::new(
        parse_qext_compact(re, s)?,
        parse_qext_compact(im, s)?,
    ))
}
