mod common;

use std::cmp::Ordering;

use common::*;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use qnet_core::gates::{self, prob_one, prob_zero};
use qnet_core::interpreter::{run_circuit, Circuit};
use qnet_core::scalar::{int, iter_sqrt, rat};
use qnet_core::{Approx, Exact, Gate, QExt, QState, RandomStream, Rational, Term, Tolerance};

fn apply(g: &Gate, s: &QState<QExt>) -> QState<QExt> {
    g.apply(s, None, &Exact).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn field_axioms(x in qext(), y in qext(), z in qext()) {
        prop_assert_eq!(x.clone() + y.clone(), y.clone() + x.clone());
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        prop_assert_eq!((x.clone() + y.clone()) + z.clone(), x.clone() + (y.clone() + z.clone()));
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(
            x.clone() * (y.clone() + z.clone()),
            x.clone() * y.clone() + x.clone() * z.clone()
        );
        if !x.is_zero() {
            prop_assert_eq!(x.clone() * x.recip().unwrap(), QExt::one());
        }
    }

    #[test]
    fn sqrt_of_squares(x in qext()) {
        let sq = x.clone() * x.clone();
        let root = sq.sqrt().unwrap().expect("square of a field element");
        prop_assert!(root == x || root == -x);
        prop_assert_ne!(root.sign(), Ordering::Less);
    }

    #[test]
    fn sqrt_is_sound(x in qext()) {
        if x.sign() != Ordering::Less {
            if let Some(r) = x.sqrt().unwrap() {
                prop_assert_eq!(r.clone() * r, x);
            }
        }
    }

    #[test]
    fn iter_sqrt_squared_bound(x in nonneg_rat(), k in 1u32..=30) {
        // |r^2 - x| <= e (2 sqrt(x) + e), compared without square roots:
        // u <= 2e sqrt(x) holds iff u <= 0 or u^2 <= 4 e^2 x.
        let e = Tolerance::new(rat(1, 1i64 << k)).unwrap();
        let r = iter_sqrt(&x, &e).unwrap();
        let ev = e.value();
        let bound = |u: Rational| !u.is_positive() || &u * &u <= int(4) * ev * ev * &x;
        prop_assert!(bound(&r * &r - &x - ev * ev), "r={} x={}", r, x);
        prop_assert!(bound(&x - &r * &r - ev * ev), "r={} x={}", r, x);
    }

    #[test]
    fn norm_sq_is_multiplicative(z in cplx(), w in cplx()) {
        prop_assert_eq!((z.clone() * w.clone()).norm_sq(), z.norm_sq() * w.norm_sq());
    }

    #[test]
    fn sort_and_merge_idempotent(s in state()) {
        prop_assert_eq!(QState::sort_and_merge(s.terms(), s.nqubits()).unwrap(), s);
    }

    #[test]
    fn representation_invariance(
        s in state(),
        seed in any::<u64>(),
        split in small_rat(),
    ) {
        // Drop zeros, split every coefficient into two parts, shuffle.
        let mut terms: Vec<Term<QExt>> = Vec::new();
        for t in s.terms().into_iter().filter(|t| !t.coeff.is_zero()) {
            let part = t.coeff.scale(&QExt::from(split.clone()));
            terms.push(Term::new(t.coeff.clone() - part.clone(), t.bits.clone()));
            terms.push(Term::new(part, t.bits));
        }
        let len = terms.len();
        let mut state = seed;
        for i in (1..len).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            terms.swap(i, (state >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(QState::sort_and_merge(terms, s.nqubits()).unwrap(), s);
    }

    #[test]
    fn tensor_norm_multiplicative(a in state(), b in state()) {
        let t = a.tensor_product(&b).unwrap();
        prop_assert_eq!(t.norm_sq(), a.norm_sq() * b.norm_sq());
    }

    #[test]
    fn normalize_idempotent(s in state()) {
        let once = s.normalize(&Exact).unwrap();
        prop_assert!(once.is_unit());
        prop_assert_eq!(once.normalize(&Exact).unwrap(), once);
    }

    #[test]
    fn narrowing_reconstructs_product_states(q in state_with(1), rest in state_with(2), pos in 0usize..3) {
        // Place q at position `pos` of a 3-qubit product state.
        let s = match pos {
            0 => q.tensor_product(&rest).unwrap(),
            2 => rest.tensor_product(&q).unwrap(),
            _ => {
                let (hi, lo) = split_two(&rest);
                hi.tensor_product(&q).unwrap().tensor_product(&lo).unwrap()
            }
        };
        let s = s.normalize(&Exact).unwrap();
        match s.narrow_to_qubit(pos, &Exact) {
            Ok(n) => {
                // n is proportional to q's amplitudes: cross-multiplication.
                let (a, b) = (&n.amplitudes()[0], &n.amplitudes()[1]);
                let (c, d) = (&q.amplitudes()[0], &q.amplitudes()[1]);
                prop_assert_eq!(a.clone() * d.clone(), b.clone() * c.clone());
                prop_assert!(n.is_fully_normalized());
            }
            Err(qnet_core::Error::NotRepresentable(_)) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn first_qubit_zero_is_deterministic(rest in state()) {
        let s = QState::make_qubit(C::one(), C::zero()).unwrap().tensor_product(&rest).unwrap();
        prop_assert_eq!(s.deterministic_qubit(0), Ok(false));
    }

    #[test]
    fn gates_preserve_norm(s in unit_state(), pick in any::<prop::sample::Index>()) {
        let n = s.nqubits();
        let all = all_unitary_gates(n);
        let g = &all[pick.index(all.len())];
        prop_assert_eq!(apply(g, &s).norm_sq(), s.norm_sq());
    }

    #[test]
    fn gates_are_involutions(s in state(), pick in any::<prop::sample::Index>()) {
        let all = all_unitary_gates(s.nqubits());
        let g = &all[pick.index(all.len())];
        prop_assert_eq!(apply(g, &apply(g, &s)), s);
    }

    #[test]
    fn x_and_z_anticommute(s in state_with(1)) {
        let xz = gates::gate_x(&gates::gate_z(&s, 0).unwrap(), 0).unwrap();
        let zx = gates::gate_z(&gates::gate_x(&s, 0).unwrap(), 0).unwrap();
        let neg: Vec<C> = zx.amplitudes().iter().map(|c| -c.clone()).collect();
        prop_assert_eq!(xz.amplitudes(), &neg[..]);
    }

    #[test]
    fn measurement_complete(s in state(), q in 0usize..3) {
        let q = q % s.nqubits();
        prop_assert_eq!(prob_zero(&s, q).unwrap() + prob_one(&s, q).unwrap(), QExt::one());
    }

    #[test]
    fn collapse_is_sound(s in state(), q in 0usize..3, r in draw(), r2 in draw()) {
        let q = q % s.nqubits();
        let outcome = gates::measure_outcome(&s, q, &r).unwrap();
        let m = gates::gate_m(&s, q, &r).unwrap().normalize(&Exact).unwrap();
        prop_assert_eq!(m.deterministic_qubit(q), Ok(outcome));
        prop_assert_eq!(gates::gate_m(&m, q, &r2).unwrap(), m);
    }

    #[test]
    fn gates_are_local(s in state_with(3), g in gate_for(3), r in draw()) {
        let touched: Vec<usize> = match g {
            Gate::CN { control, target } => vec![control, target],
            Gate::X(q) | Gate::Z(q) | Gate::H(q) | Gate::I(q) | Gate::M(q) => vec![q],
        };
        let out = g.apply(&s, Some(&r), &Exact).unwrap();
        for m in (0..3).filter(|m| !touched.contains(m)) {
            if let Ok(v) = s.deterministic_qubit(m) {
                prop_assert_eq!(out.deterministic_qubit(m), Ok(v));
            }
        }
    }

    #[test]
    fn run_matches_manual_fold(
        (s, gates, draws) in (1usize..=3).prop_flat_map(|n| (
            state_with(n),
            proptest::collection::vec(gate_for(n), 0..8),
            proptest::collection::vec(draw(), 8),
        ))
    ) {
        let c = Circuit::new(s.nqubits(), gates.clone()).unwrap();
        let out = run_circuit(&c, &s, &mut RandomStream::new(draws.clone()), &Exact).unwrap();
        let mut cur = s.normalize(&Exact).unwrap();
        let mut d = draws.iter();
        for g in &gates {
            let r = if g.is_measurement() { d.next() } else { None };
            cur = g.apply(&cur, r, &Exact).unwrap().normalize(&Exact).unwrap();
        }
        prop_assert_eq!(out, cur);
    }

    #[test]
    fn circuits_compose(
        (s, g1, g2, draws) in (1usize..=3).prop_flat_map(|n| (
            state_with(n),
            proptest::collection::vec(gate_for(n), 0..6),
            proptest::collection::vec(gate_for(n), 0..6),
            proptest::collection::vec(draw(), 12),
        ))
    ) {
        let n = s.nqubits();
        let c1 = Circuit::new(n, g1).unwrap();
        let c2 = Circuit::new(n, g2).unwrap();
        let whole = run_circuit(&c1.then(&c2).unwrap(), &s, &mut RandomStream::new(draws.clone()), &Exact).unwrap();
        let k = c1.count_measurements();
        let mid = run_circuit(&c1, &s, &mut RandomStream::new(draws[..k].to_vec()), &Exact).unwrap();
        let end = run_circuit(&c2, &mid, &mut RandomStream::new(draws[k..].to_vec()), &Exact).unwrap();
        prop_assert_eq!(whole, end);
    }

    #[test]
    fn measurement_free_ignores_stream(
        (s, gates, d1, d2) in (1usize..=3).prop_flat_map(|n| (
            state_with(n),
            proptest::collection::vec(unitary_gate_for(n), 0..8),
            proptest::collection::vec(draw(), 0..4),
            proptest::collection::vec(draw(), 0..4),
        ))
    ) {
        let c = Circuit::new(s.nqubits(), gates).unwrap();
        let a = run_circuit(&c, &s, &mut RandomStream::new(d1), &Exact).unwrap();
        let b = run_circuit(&c, &s, &mut RandomStream::new(d2), &Exact).unwrap();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn deterministic_in_both_backends(
        (s, gates, draws) in (1usize..=3).prop_flat_map(|n| (
            state_with(n),
            proptest::collection::vec(gate_for(n), 0..8),
            proptest::collection::vec(draw(), 8),
        ))
    ) {
        let c = Circuit::new(s.nqubits(), gates).unwrap();
        let run_exact = || run_circuit(&c, &s, &mut RandomStream::new(draws.clone()), &Exact).unwrap();
        prop_assert_eq!(run_exact(), run_exact());
        let approx = Approx::new(Tolerance::pow10(12));
        let sa = s.map_scalars(|x| qnet_core::Backend::lift(&approx, x));
        let run_approx = || run_circuit(&c, &sa, &mut RandomStream::new(draws.clone()), &approx).unwrap();
        prop_assert_eq!(run_approx(), run_approx());
    }

    #[test]
    fn backends_agree_without_measurement(
        (s, gates) in (1usize..=3).prop_flat_map(|n| (
            rational_state(n),
            proptest::collection::vec(unitary_gate_for(n), 0..=12),
        ))
    ) {
        let c = Circuit::new(s.nqubits(), gates).unwrap();
        let exact = run_circuit(&c, &s, &mut RandomStream::empty(), &Exact).unwrap();
        let approx = Approx::new(Tolerance::pow10(12));
        let sa = s.map_scalars(|x| x.a.clone());
        let out = run_circuit(&c, &sa, &mut RandomStream::empty(), &approx).unwrap();
        let reference = qnet_core::render::approx_amplitudes(&exact, &Exact, &Tolerance::pow10(15)).unwrap();
        let bound = rat(1, 1_000_000);
        for (a, e) in out.amplitudes().iter().zip(&reference) {
            prop_assert!((&a.re - &e.re).abs() <= bound);
            prop_assert!((&a.im - &e.im).abs() <= bound);
        }
    }
}

fn rational_state(n: usize) -> impl Strategy<Value = QState<QExt>> {
    proptest::collection::vec((small_rat(), small_rat()), 1 << n).prop_filter_map(
        "zero",
        move |v| {
            let amps = v
                .into_iter()
                .map(|(re, im)| C::new(QExt::from(re), QExt::from(im)))
                .collect();
            QState::from_amplitudes(n, amps).ok()
        },
    )
}

fn all_unitary_gates(n: usize) -> Vec<Gate> {
    let mut v = Vec::new();
    for q in 0..n {
        v.extend([Gate::X(q), Gate::Z(q), Gate::H(q), Gate::I(q)]);
        for t in (0..n).filter(|&t| t != q) {
            v.push(Gate::CN {
                control: q,
                target: t,
            });
        }
    }
    v
}

/// Factors a 2-qubit product state built by `tensor_product` back into
/// two single-qubit states; panics otherwise.
fn split_two(s: &QState<QExt>) -> (QState<QExt>, QState<QExt>) {
    let a = s.amplitudes();
    let row = if !a[0].is_zero() || !a[1].is_zero() {
        0
    } else {
        2
    };
    let col = if !a[0].is_zero() || !a[2].is_zero() {
        0
    } else {
        1
    };
    let lo = QState::make_qubit(a[row].clone(), a[row + 1].clone()).unwrap();
    let hi = QState::make_qubit(a[col].clone(), a[col + 2].clone()).unwrap();
    (hi, lo)
}
