#![allow(dead_code)]

pub mod oracle;

use proptest::prelude::*;
use qnet_core::scalar::rat;
use qnet_core::{CScalar, Exact, Gate, QExt, QState, RandomDraw, Rational};

pub type C = CScalar<QExt>;

pub fn small_rat() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=8).prop_map(|(n, d)| rat(n, d))
}

pub fn nonneg_rat() -> impl Strategy<Value = Rational> {
    (0i64..=5000, 1i64..=500).prop_map(|(n, d)| rat(n, d))
}

pub fn qext() -> impl Strategy<Value = QExt> {
    (small_rat(), small_rat()).prop_map(|(a, b)| QExt::new(a, b))
}

pub fn nonzero_qext() -> impl Strategy<Value = QExt> {
    qext().prop_filter("nonzero", |x| x != &QExt::from(0))
}

pub fn cplx() -> impl Strategy<Value = C> {
    (qext(), qext()).prop_map(|(re, im)| CScalar::new(re, im))
}

/// Coefficients with a good share of exact zeros.
pub fn sparse_cplx() -> impl Strategy<Value = C> {
    prop_oneof![1 => Just(C::zero()), 2 => cplx()]
}

pub fn state_with(n: usize) -> impl Strategy<Value = QState<QExt>> {
    proptest::collection::vec(sparse_cplx(), 1 << n).prop_filter_map("zero state", move |amps| {
        QState::from_amplitudes(n, amps).ok()
    })
}

pub fn state() -> impl Strategy<Value = QState<QExt>> {
    (1usize..=3).prop_flat_map(state_with)
}

pub fn unit_state() -> impl Strategy<Value = QState<QExt>> {
    state().prop_map(|s| s.normalize(&Exact).unwrap())
}

/// Draws `k/9973` with `0 < k < 9973`: never on a threshold built from
/// the states above, never exactly 0 or 1.
pub fn draw() -> impl Strategy<Value = RandomDraw> {
    (1i64..9973).prop_map(|k| RandomDraw::new(rat(k, 9973)).unwrap())
}

pub fn gate_for(n: usize) -> impl Strategy<Value = Gate> {
    let kinds = if n >= 2 { 6u8 } else { 5 };
    (0..kinds, 0..n, 0..n.max(2) - 1).prop_map(move |(kind, q, off)| match kind {
        0 => Gate::X(q),
        1 => Gate::Z(q),
        2 => Gate::H(q),
        3 => Gate::I(q),
        4 => Gate::M(q),
        _ => Gate::CN {
            control: q,
            target: (q + 1 + off) % n,
        },
    })
}

pub fn unitary_gate_for(n: usize) -> impl Strategy<Value = Gate> {
    gate_for(n).prop_filter("unitary", |g| !g.is_measurement())
}

pub fn to_f64(q: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap()
}
