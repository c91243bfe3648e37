use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative value")]
    NegativeSqrt,
    #[error("tolerance must be positive")]
    InvalidTolerance,
    #[error("malformed literal `{0}`")]
    Literal(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("state has no nonzero coefficient")]
    ZeroState,
    #[error("qubit {index} out of range for a {nqubits}-qubit state")]
    QubitOutOfRange { index: usize, nqubits: usize },
    #[error("{requested} qubits exceeds the limit of {limit}")]
    TooManyQubits { requested: usize, limit: usize },
    #[error("qubit count mismatch: expected {expected}, found {found}")]
    QubitCountMismatch { expected: usize, found: usize },
    #[error("qubit {0} is not deterministic")]
    NotDeterministic(usize),
    #[error("qubit {0} is entangled with the rest of the state")]
    Entangled(usize),
    #[error("not representable in Q[sqrt 2]: {0}")]
    NotRepresentable(String),
    #[error("CN control and target are both qubit {0}")]
    SelfControlled(usize),
    #[error("random draw {0} outside [0, 1]")]
    DrawOutOfRange(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("random stream has {available} draws but the circuit needs {needed}")]
    StreamExhausted { needed: usize, available: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}
