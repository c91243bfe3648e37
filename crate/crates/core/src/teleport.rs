//! Quantum teleportation: Alice's entangle-and-measure circuit, Bob's
//! classically controlled corrections, and an exhaustive checker over the
//! four measurement branches.

use std::fmt;

use num_traits::{One, Zero};

use crate::backend::Backend;
use crate::error::{Error, Result};
use crate::gates::RandomDraw;
use crate::interpreter::{run_circuit, Circuit, Gate, RandomStream};
use crate::qstate::QState;
use crate::scalar::{rat, CScalar, QExt, Real};

/// `H 1, CN 1 2, CN 0 1, H 0, M 0, M 1` on three qubits.
pub fn alice_circuit() -> Circuit {
    Circuit::new(
        3,
        vec![
            Gate::H(1),
            Gate::CN {
                control: 1,
                target: 2,
            },
            Gate::CN {
                control: 0,
                target: 1,
            },
            Gate::H(0),
            Gate::M(0),
            Gate::M(1),
        ],
    )
    .expect("static circuit is valid")
}

/// Bob's corrections on qubit 2: qubit 1 reading `|1>` calls for X, qubit 0
/// reading `|1>` calls for Z, applied X first.
pub fn bob_circuit(m0: bool, m1: bool) -> Circuit {
    let gates = match (m0, m1) {
        (false, false) => vec![],
        (false, true) => vec![Gate::X(2)],
        (true, false) => vec![Gate::Z(2)],
        (true, true) => vec![Gate::X(2), Gate::Z(2)],
    };
    Circuit::new(3, gates).expect("static circuit is valid")
}

#[derive(Clone, Debug, PartialEq)]
pub struct AliceResult<R> {
    pub state: QState<R>,
    pub m0: bool,
    pub m1: bool,
}

/// Rejects `(alpha, beta)` unless `|alpha|^2 + |beta|^2 = 1` according to
/// the backend's notion of agreement.
pub fn check_unit<B: Backend>(
    alpha: &CScalar<B::Real>,
    beta: &CScalar<B::Real>,
    backend: &B,
) -> Result<()> {
    let norm = alpha.norm_sq() + beta.norm_sq();
    if backend.agrees(&norm, &B::Real::one()) {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!(
            "|alpha|^2 + |beta|^2 = {norm}, expected 1"
        )))
    }
}

pub fn teleport_alice<B: Backend>(
    alpha: &CScalar<B::Real>,
    beta: &CScalar<B::Real>,
    r1: &RandomDraw,
    r2: &RandomDraw,
    backend: &B,
) -> Result<AliceResult<B::Real>> {
    check_unit(alpha, beta, backend)?;
    let input = QState::make_qubit(alpha.clone(), beta.clone())?
        .tensor_product(&QState::zero_qstate(2)?)?;
    let mut stream = RandomStream::new(vec![r1.clone(), r2.clone()]);
    let state = run_circuit(&alice_circuit(), &input, &mut stream, backend)?;
    let m0 = state.deterministic_qubit(0)?;
    let m1 = state.deterministic_qubit(1)?;
    Ok(AliceResult { state, m0, m1 })
}

pub fn teleport_bob<B: Backend>(
    state: &QState<B::Real>,
    m0: bool,
    m1: bool,
    backend: &B,
) -> Result<QState<B::Real>> {
    if state.nqubits() != 3 {
        return Err(Error::QubitCountMismatch {
            expected: 3,
            found: state.nqubits(),
        });
    }
    if !m0 && !m1 {
        return Ok(state.clone());
    }
    run_circuit(
        &bob_circuit(m0, m1),
        state,
        &mut RandomStream::empty(),
        backend,
    )
}

pub fn teleport_protocol<B: Backend>(
    alpha: &CScalar<B::Real>,
    beta: &CScalar<B::Real>,
    r1: &RandomDraw,
    r2: &RandomDraw,
    backend: &B,
) -> Result<QState<B::Real>> {
    let alice = teleport_alice(alpha, beta, r1, r2, backend)?;
    teleport_bob(&alice.state, alice.m0, alice.m1, backend)
}

/// Alice's output for the two branches with `m0 = |0>`.
pub fn alice_expected<R: Real>(
    alpha: &CScalar<R>,
    beta: &CScalar<R>,
    m1: bool,
) -> Result<QState<R>> {
    let mut amps = vec![CScalar::zero(); 8];
    if m1 {
        amps[0b010] = beta.clone();
        amps[0b011] = alpha.clone();
    } else {
        amps[0b000] = alpha.clone();
        amps[0b001] = beta.clone();
    }
    QState::from_amplitudes(3, amps)
}

/// Component-wise agreement of physical amplitudes for normalized states.
pub fn states_agree<B: Backend>(a: &QState<B::Real>, b: &QState<B::Real>, backend: &B) -> bool {
    let one = B::Real::one();
    a.nqubits() == b.nqubits()
        && backend.agrees(a.scale_sq(), &one)
        && backend.agrees(b.scale_sq(), &one)
        && a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .all(|(x, y)| backend.agrees(&x.re, &y.re) && backend.agrees(&x.im, &y.im))
}

/// Draws `1/4` and `3/4`, one per half of `[0, 1]`. Both measurements in
/// the circuit have threshold exactly `1/2`, so these cover every branch.
pub fn branch_draws() -> [(RandomDraw, RandomDraw); 4] {
    let lo = || RandomDraw::new(rat(1, 4)).expect("in range");
    let hi = || RandomDraw::new(rat(3, 4)).expect("in range");
    [(lo(), lo()), (lo(), hi()), (hi(), lo()), (hi(), hi())]
}

/// Exact unit inputs exercised by the built-in verifier.
pub fn standard_inputs() -> Vec<(CScalar<QExt>, CScalar<QExt>)> {
    let r = |n, d| QExt::from(rat(n, d));
    let h = QExt::frac_1_sqrt2();
    vec![
        (CScalar::one(), CScalar::zero()),
        (CScalar::zero(), CScalar::one()),
        (CScalar::real(h.clone()), CScalar::real(h.clone())),
        (CScalar::real(r(3, 5)), CScalar::new(QExt::zero(), r(4, 5))),
        (CScalar::real(h.clone()), CScalar::real(-h.clone())),
        (
            CScalar::real(h.clone()),
            CScalar::new(QExt::zero(), h.clone()),
        ),
        (
            CScalar::new(r(1, 2), r(1, 2)),
            CScalar::new(r(1, 2), r(-1, 2)),
        ),
        (CScalar::real(r(-5, 13)), CScalar::new(r(0, 1), r(12, 13))),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail(String),
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }

    fn from_bool(ok: bool, why: impl FnOnce() -> String) -> Check {
        if ok {
            Check::Pass
        } else {
            Check::Fail(why())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub input: usize,
    pub m0: bool,
    pub m1: bool,
    /// Alice's post-measurement state against the closed form (printed
    /// branches) or against qubit 0/1 determinism (the others).
    pub alice: Check,
    /// Bob's qubit 2 against `make_qubit(alpha, beta)`.
    pub protocol: Check,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.alice.passed() && self.protocol.passed()
    }
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "case {} branch {}{} : {}",
            self.input,
            self.m0 as u8,
            self.m1 as u8,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub cases: Vec<CaseReport>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(CaseReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseReport> {
        self.cases.iter().filter(|c| !c.passed())
    }
}

pub fn verify_teleportation<B: Backend>(
    inputs: &[(CScalar<QExt>, CScalar<QExt>)],
    backend: &B,
) -> Report {
    verify_teleportation_with(inputs, backend, teleport_bob::<B>)
}

/// Runs every input through all four branches with a caller-supplied Bob.
pub fn verify_teleportation_with<B, F>(
    inputs: &[(CScalar<QExt>, CScalar<QExt>)],
    backend: &B,
    bob: F,
) -> Report
where
    B: Backend,
    F: Fn(&QState<B::Real>, bool, bool, &B) -> Result<QState<B::Real>>,
{
    let mut cases = Vec::new();
    for (input, (a, b)) in inputs.iter().enumerate() {
        let alpha = a.map(|x| backend.lift(x));
        let beta = b.map(|x| backend.lift(x));
        for (r1, r2) in branch_draws() {
            let expect_m0 = r1.value() >= &rat(1, 2);
            let expect_m1 = r2.value() >= &rat(1, 2);
            let report = |alice, protocol| CaseReport {
                input,
                m0: expect_m0,
                m1: expect_m1,
                alice,
                protocol,
            };
            let res = match teleport_alice(&alpha, &beta, &r1, &r2, backend) {
                Ok(res) => res,
                Err(e) => {
                    let why = format!("alice: {e}");
                    cases.push(report(Check::Fail(why.clone()), Check::Fail(why)));
                    continue;
                }
            };
            let alice = if (res.m0, res.m1) != (expect_m0, expect_m1) {
                Check::Fail(format!("measured {}{}", res.m0 as u8, res.m1 as u8))
            } else if !expect_m0 {
                match alice_expected(&alpha, &beta, expect_m1) {
                    Ok(want) => Check::from_bool(states_agree(&res.state, &want, backend), || {
                        "post-measurement state differs from the closed form".into()
                    }),
                    Err(e) => Check::Fail(e.to_string()),
                }
            } else {
                Check::Pass
            };
            let protocol = bob(&res.state, res.m0, res.m1, backend)
                .and_then(|out| out.narrow_to_qubit(2, backend))
                .and_then(|q2| {
                    let want = QState::make_qubit(alpha.clone(), beta.clone())?;
                    Ok(Check::from_bool(states_agree(&q2, &want, backend), || {
                        "qubit 2 differs from the input qubit".into()
                    }))
                })
                .unwrap_or_else(|e| Check::Fail(e.to_string()));
            cases.push(report(alice, protocol));
        }
    }
    Report { cases }
}
