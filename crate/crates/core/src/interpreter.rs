//! Circuits as flat gate lists, their text form, and the evaluation loop.
//!
//! ```text
//! # Bell pair
//! qubits 2
//! H 0
//! CN 0 1
//! ```
//!
//! One gate per line; `#` starts a comment. The optional `qubits N` header
//! must be the first non-comment line.

use std::fmt;

use crate::backend::Backend;
use crate::error::{Error, Result};
use crate::gates::{self, RandomDraw};
use crate::qstate::QState;
use crate::scalar::parse_rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    X(usize),
    Z(usize),
    H(usize),
    I(usize),
    CN { control: usize, target: usize },
    M(usize),
}

impl Gate {
    pub fn mnemonic(&self) -> &'static str {
        match self {
            Gate::X(_) => "X",
            Gate::Z(_) => "Z",
            Gate::H(_) => "H",
            Gate::I(_) => "I",
            Gate::CN { .. } => "CN",
            Gate::M(_) => "M",
        }
    }

    pub fn is_measurement(&self) -> bool {
        matches!(self, Gate::M(_))
    }

    fn operands(&self) -> Vec<usize> {
        match *self {
            Gate::X(q) | Gate::Z(q) | Gate::H(q) | Gate::I(q) | Gate::M(q) => vec![q],
            Gate::CN { control, target } => vec![control, target],
        }
    }

    fn validate(&self, nqubits: usize) -> Result<()> {
        for q in self.operands() {
            if q >= nqubits {
                return Err(Error::QubitOutOfRange { index: q, nqubits });
            }
        }
        if let Gate::CN { control, target } = *self {
            if control == target {
                return Err(Error::SelfControlled(control));
            }
        }
        Ok(())
    }

    /// Applies the gate without normalizing. `draw` is required for `M`.
    pub fn apply<B: Backend>(
        &self,
        state: &QState<B::Real>,
        draw: Option<&RandomDraw>,
        backend: &B,
    ) -> Result<QState<B::Real>> {
        match *self {
            Gate::X(q) => gates::gate_x(state, q),
            Gate::Z(q) => gates::gate_z(state, q),
            Gate::H(q) => gates::gate_h(state, q, backend),
            Gate::I(q) => gates::gate_i(state, q),
            Gate::CN { control, target } => gates::gate_cn(state, control, target),
            Gate::M(q) => {
                let r = draw.ok_or(Error::StreamExhausted {
                    needed: 1,
                    available: 0,
                })?;
                gates::gate_m(state, q, r)
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::CN { control, target } => write!(f, "CN {control} {target}"),
            Gate::X(q) | Gate::Z(q) | Gate::H(q) | Gate::I(q) | Gate::M(q) => {
                write!(f, "{} {q}", self.mnemonic())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    nqubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(nqubits: usize, gates: Vec<Gate>) -> Result<Self> {
        if nqubits == 0 {
            return Err(Error::Format("a circuit needs at least one qubit".into()));
        }
        for g in &gates {
            g.validate(nqubits)?;
        }
        Ok(Circuit { nqubits, gates })
    }

    pub fn nqubits(&self) -> usize {
        self.nqubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn count_measurements(&self) -> usize {
        self.gates.iter().filter(|g| g.is_measurement()).count()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Circuit) -> Result<Circuit> {
        if self.nqubits != other.nqubits {
            return Err(Error::QubitCountMismatch {
                expected: self.nqubits,
                found: other.nqubits,
            });
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Ok(Circuit {
            nqubits: self.nqubits,
            gates,
        })
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.nqubits)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(line, format!("bad qubit index `{tok}`")));
    }
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad qubit index `{tok}`")))
}

/// Parses the line-based circuit grammar.
///
/// The qubit count comes from the `qubits` header or from `nqubits`; when
/// both are present they must agree.
pub fn parse_circuit(text: &str, nqubits: Option<usize>) -> Result<Circuit> {
    let mut declared: Option<usize> = None;
    let mut parsed: Vec<(usize, Gate)> = Vec::new();
    let mut seen_content = false;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let (head, args) = toks.split_first().expect("line is not empty");
        if *head == "qubits" {
            if seen_content {
                return Err(parse_err(lineno, "`qubits` header must come first"));
            }
            seen_content = true;
            let [count] = args else {
                return Err(parse_err(lineno, "`qubits` takes one count"));
            };
            let count = parse_index(count, lineno)?;
            if count == 0 {
                return Err(parse_err(lineno, "qubit count must be positive"));
            }
            declared = Some(count);
            continue;
        }
        seen_content = true;
        let arity = match *head {
            "X" | "Z" | "H" | "I" | "M" => 1,
            "CN" => 2,
            other => return Err(parse_err(lineno, format!("unknown gate `{other}`"))),
        };
        if args.len() != arity {
            return Err(parse_err(
                lineno,
                format!("{head} takes {arity} operand(s), got {}", args.len()),
            ));
        }
        let idx: Vec<usize> = args
            .iter()
            .map(|t| parse_index(t, lineno))
            .collect::<Result<_>>()?;
        let gate = match *head {
            "X" => Gate::X(idx[0]),
            "Z" => Gate::Z(idx[0]),
            "H" => Gate::H(idx[0]),
            "I" => Gate::I(idx[0]),
            "M" => Gate::M(idx[0]),
            _ => Gate::CN {
                control: idx[0],
                target: idx[1],
            },
        };
        parsed.push((lineno, gate));
    }
    let n = match (declared, nqubits) {
        (Some(d), Some(n)) if d != n => {
            return Err(Error::QubitCountMismatch {
                expected: n,
                found: d,
            });
        }
        (Some(d), _) => d,
        (None, Some(n)) => n,
        (None, None) => return Err(parse_err(0, "qubit count not declared")),
    };
    for (lineno, g) in &parsed {
        g.validate(n)
            .map_err(|e| parse_err(*lineno, e.to_string()))?;
    }
    Circuit::new(n, parsed.into_iter().map(|(_, g)| g).collect())
}

/// Qubit count from a `qubits` header, if the text has one.
pub fn declared_qubits(text: &str) -> Option<usize> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| {
            let mut toks = l.split_whitespace();
            (toks.next() == Some("qubits")).then(|| toks.next()?.parse().ok())?
        })
}

/// Ordered measurement draws with a read cursor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RandomStream {
    draws: Vec<RandomDraw>,
    cursor: usize,
}

impl RandomStream {
    pub fn new(draws: Vec<RandomDraw>) -> Self {
        RandomStream { draws, cursor: 0 }
    }

    pub fn empty() -> Self {
        RandomStream::default()
    }

    /// Parses rational literals separated by commas and/or newlines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut draws = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let r = parse_rational(tok).map_err(|e| parse_err(i + 1, e.to_string()))?;
                draws.push(RandomDraw::new(r).map_err(|e| parse_err(i + 1, e.to_string()))?);
            }
        }
        Ok(RandomStream::new(draws))
    }

    pub fn remaining(&self) -> usize {
        self.draws.len() - self.cursor
    }

    pub fn consumed(&self) -> usize {
        self.cursor
    }

    pub fn next_draw(&mut self) -> Option<&RandomDraw> {
        let d = self.draws.get(self.cursor)?;
        self.cursor += 1;
        Some(d)
    }
}

/// Final state plus one event per gate.
pub type Traced<R> = (QState<R>, Vec<TraceEvent<R>>);

/// One executed gate.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceEvent<R> {
    pub step: usize,
    pub gate: Gate,
    pub state: QState<R>,
    pub draw: Option<RandomDraw>,
}

/// Normalizes `state`, then applies each gate followed by a normalization.
/// Only `M` gates consume draws.
pub fn run_circuit<B: Backend>(
    circuit: &Circuit,
    state: &QState<B::Real>,
    stream: &mut RandomStream,
    backend: &B,
) -> Result<QState<B::Real>> {
    run(circuit, state, stream, backend, |_| {})
}

pub fn run_circuit_traced<B: Backend>(
    circuit: &Circuit,
    state: &QState<B::Real>,
    stream: &mut RandomStream,
    backend: &B,
) -> Result<Traced<B::Real>> {
    let mut trace = Vec::with_capacity(circuit.len());
    let out = run(circuit, state, stream, backend, |ev| trace.push(ev))?;
    Ok((out, trace))
}

fn run<B: Backend>(
    circuit: &Circuit,
    state: &QState<B::Real>,
    stream: &mut RandomStream,
    backend: &B,
    mut observe: impl FnMut(TraceEvent<B::Real>),
) -> Result<QState<B::Real>> {
    if state.nqubits() != circuit.nqubits() {
        return Err(Error::QubitCountMismatch {
            expected: circuit.nqubits(),
            found: state.nqubits(),
        });
    }
    let needed = circuit.count_measurements();
    if stream.remaining() < needed {
        return Err(Error::StreamExhausted {
            needed,
            available: stream.remaining(),
        });
    }
    let mut current = state.normalize(backend)?;
    for (step, gate) in circuit.gates().iter().enumerate() {
        let draw = if gate.is_measurement() {
            stream.next_draw().cloned()
        } else {
            None
        };
        current = gate
            .apply(&current, draw.as_ref(), backend)?
            .normalize(backend)?;
        observe(TraceEvent {
            step: step + 1,
            gate: *gate,
            state: current.clone(),
            draw,
        });
    }
    Ok(current)
}
