//! Browser bindings for the qnet interpreter.
//!
//! Each exported function takes plain strings and returns the rendered
//! output, so the page only has to move text in and out of `<textarea>`s.

use std::fmt::Write as _;

use wasm_bindgen::prelude::*;

use qnet_core::gates::{prob_one, prob_zero};
use qnet_core::interpreter::{parse_circuit, run_circuit_traced, RandomStream};
use qnet_core::render::{self, format_state, format_state_decimal};
use qnet_core::scalar::{parse_rational, to_decimal};
use qnet_core::teleport;
use qnet_core::{Approx, Backend, Exact, QState, RandomDraw, Tolerance};

const DIGITS: usize = 6;

fn show<B: Backend>(s: &QState<B::Real>, backend: &B, decimal: bool) -> qnet_core::Result<String> {
    if decimal {
        format_state_decimal(s, backend, DIGITS, true)
    } else {
        format_state(s, true)
    }
}

fn initial<B: Backend>(
    spec: &str,
    nqubits: usize,
    backend: &B,
) -> qnet_core::Result<QState<B::Real>> {
    let spec = spec.trim();
    if spec.is_empty() {
        return QState::zero_qstate(nqubits);
    }
    render::parse_inline_state(spec, backend).unwrap_or_else(|| render::parse_state(spec, backend))
}

fn simulate_with<B: Backend>(
    circuit: &str,
    state: &str,
    randoms: &str,
    backend: &B,
    decimal: bool,
) -> qnet_core::Result<String> {
    let circuit = parse_circuit(circuit, None)?;
    let state = initial(state, circuit.nqubits(), backend)?;
    let mut stream = RandomStream::parse(randoms)?;
    let (out, events) = run_circuit_traced(&circuit, &state, &mut stream, backend)?;
    let mut text = String::new();
    for ev in &events {
        match &ev.draw {
            Some(r) => writeln!(text, "# step {}: {} (r = {r})", ev.step, ev.gate),
            None => writeln!(text, "# step {}: {}", ev.step, ev.gate),
        }
        .unwrap();
        text.push_str(&show(&ev.state, backend, decimal)?);
    }
    text.push_str("# final\n");
    text.push_str(&show(&out, backend, decimal)?);
    Ok(text)
}

fn probabilities_with<B: Backend>(
    circuit: &str,
    state: &str,
    randoms: &str,
    backend: &B,
) -> qnet_core::Result<String> {
    let circuit = parse_circuit(circuit, None)?;
    let state = initial(state, circuit.nqubits(), backend)?;
    let mut stream = RandomStream::parse(randoms)?;
    let (out, _) = run_circuit_traced(&circuit, &state, &mut stream, backend)?;
    let tol = Tolerance::pow10(DIGITS as u32 + 2);
    let mut text = String::new();
    for n in 0..out.nqubits() {
        let p0 = prob_zero(&out, n)?;
        let p1 = prob_one(&out, n)?;
        writeln!(
            text,
            "qubit {n}: P(0) = {} ~ {}, P(1) = {} ~ {}",
            p0,
            to_decimal(&backend.to_rational(&p0, &tol), DIGITS),
            p1,
            to_decimal(&backend.to_rational(&p1, &tol), DIGITS),
        )
        .unwrap();
    }
    Ok(text)
}

fn teleport_with<B: Backend>(
    alpha: &str,
    beta: &str,
    r1: &str,
    r2: &str,
    backend: &B,
    decimal: bool,
) -> qnet_core::Result<String> {
    let (a, b) = render::parse_qubit_pair(&format!("{alpha},{beta}"))?;
    let alpha = a.map(|x| backend.lift(x));
    let beta = b.map(|x| backend.lift(x));
    let r1 = RandomDraw::new(parse_rational(r1)?)?;
    let r2 = RandomDraw::new(parse_rational(r2)?)?;
    let alice = teleport::teleport_alice(&alpha, &beta, &r1, &r2, backend)?;
    let out = teleport::teleport_bob(&alice.state, alice.m0, alice.m1, backend)?;
    let q2 = out.narrow_to_qubit(2, backend)?;
    let expected = QState::make_qubit(alpha, beta)?;
    let ok = teleport::states_agree(&q2, &expected, backend);

    let mut text = String::new();
    writeln!(
        text,
        "# measured qubit 0 = {}, qubit 1 = {}",
        alice.m0 as u8, alice.m1 as u8
    )
    .unwrap();
    text.push_str("# after Alice\n");
    text.push_str(&show(&alice.state, backend, decimal)?);
    text.push_str("# after Bob\n");
    text.push_str(&show(&out, backend, decimal)?);
    text.push_str("# qubit 2\n");
    text.push_str(&show(&q2, backend, decimal)?);
    writeln!(text, "{}", if ok { "PASS" } else { "FAIL" }).unwrap();
    Ok(text)
}

/// Dispatches on the backend name: `exact`, or `approx` with a rational `eps`.
fn with_backend<F, G>(backend: &str, eps: &str, exact: F, approx: G) -> Result<String, String>
where
    F: FnOnce(&Exact) -> qnet_core::Result<String>,
    G: FnOnce(&Approx) -> qnet_core::Result<String>,
{
    match backend {
        "exact" => exact(&Exact),
        "approx" => {
            let eps = match eps.trim() {
                "" => Tolerance::default(),
                e => Tolerance::new(parse_rational(e).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?,
            };
            approx(&Approx::new(eps))
        }
        other => return Err(format!("unknown backend `{other}`")),
    }
    .map_err(|e| e.to_string())
}

/// Runs `circuit` on `state` (empty for `|0...0>`) and returns every
/// intermediate state.
pub fn simulate(
    circuit: &str,
    state: &str,
    randoms: &str,
    backend: &str,
    eps: &str,
    decimal: bool,
) -> Result<String, String> {
    with_backend(
        backend,
        eps,
        |b| simulate_with(circuit, state, randoms, b, decimal),
        |b| simulate_with(circuit, state, randoms, b, decimal),
    )
}

/// Per-qubit measurement probabilities of the state `circuit` produces.
pub fn probabilities(
    circuit: &str,
    state: &str,
    randoms: &str,
    backend: &str,
    eps: &str,
) -> Result<String, String> {
    with_backend(
        backend,
        eps,
        |b| probabilities_with(circuit, state, randoms, b),
        |b| probabilities_with(circuit, state, randoms, b),
    )
}

/// Teleports `alpha|0> + beta|1>` with Alice's draws `r1`, `r2`.
pub fn teleport(
    alpha: &str,
    beta: &str,
    r1: &str,
    r2: &str,
    backend: &str,
    eps: &str,
    decimal: bool,
) -> Result<String, String> {
    with_backend(
        backend,
        eps,
        |b| teleport_with(alpha, beta, r1, r2, b, decimal),
        |b| teleport_with(alpha, beta, r1, r2, b, decimal),
    )
}

#[wasm_bindgen(js_name = simulate)]
pub fn simulate_js(
    circuit: &str,
    state: &str,
    randoms: &str,
    backend: &str,
    eps: &str,
    decimal: bool,
) -> Result<String, JsError> {
    simulate(circuit, state, randoms, backend, eps, decimal).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = probabilities)]
pub fn probabilities_js(
    circuit: &str,
    state: &str,
    randoms: &str,
    backend: &str,
    eps: &str,
) -> Result<String, JsError> {
    probabilities(circuit, state, randoms, backend, eps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = teleport)]
pub fn teleport_js(
    alpha: &str,
    beta: &str,
    r1: &str,
    r2: &str,
    backend: &str,
    eps: &str,
    decimal: bool,
) -> Result<String, JsError> {
    teleport(alpha, beta, r1, r2, backend, eps, decimal).map_err(|e| JsError::new(&e))
}
