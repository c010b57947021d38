use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count {0} outside supported range 2..=14")]
    QubitCount(usize),
    #[error("amplitude array has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("state vector has zero norm")]
    ZeroVector,
    #[error("invalid qubit subset: {0}")]
    InvalidSubset(&'static str),
    #[error("qubit label {label} outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("subset covers the whole system; the marginal is the pure projector")]
    FullSystem,
    #[error("marginal order {k} outside {min}..={max}")]
    OrderOutOfRange { k: usize, min: usize, max: usize },
    #[error("correlation invariants are defined here for supports of size 1..=4, got {0}")]
    SupportTooLarge(usize),
    #[error("subset must contain exactly 4 qubits, got {0}")]
    NotFourSubset(usize),
    #[error("operation requires n = 9, got n = {0}")]
    NotNineQubits(usize),
    #[error("Pauli expectation has imaginary part {0:e}")]
    ComplexExpectation(f64),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("finite-difference step {0:e} outside [1e-7, 1e-3]")]
    StepOutOfRange(f64),
}
