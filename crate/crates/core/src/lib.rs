//! Netlist-style quantum circuit interpreter.
//!
//! States are dense term lists over either exact complex `Q[sqrt 2]`
//! scalars ([`Exact`]) or plain rationals with bisection square roots
//! ([`Approx`]). Circuits are flat gate lists executed over a state with an
//! explicit stream of random draws for measurements.

pub mod backend;
pub mod error;
pub mod gates;
pub mod interpreter;
pub mod qstate;
pub mod render;
pub mod scalar;
pub mod teleport;

pub use backend::{Approx, Backend, Exact};
pub use error::{Error, Result};
pub use gates::RandomDraw;
pub use interpreter::{Circuit, Gate, RandomStream, TraceEvent, Traced};
pub use qstate::{QState, Term};
pub use scalar::{CScalar, QExt, Rational, Real, Tolerance};
