use thiserror::Error;

/// Errors surfaced by the simulator and protocol layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate qubit label {0}")]
    DuplicateLabel(usize),
    #[error("qubit label {0} is not in the register")]
    UnknownLabel(usize),
    #[error("registers share qubit labels")]
    OverlappingLabels,
    #[error("state is not normalized (|amp|^2 sums to {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("matrix is not unitary within tolerance")]
    NonUnitary,
    #[error("operation needs a register of {expected} qubits, got {got}")]
    WrongRegisterSize { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("projection onto a zero-probability outcome")]
    ZeroNormProjection,
    #[error("keep set for a partial trace must be a nonempty subset of the register")]
    BadKeepSet,
    #[error("probabilities must be nonnegative and sum to 1 (sum = {sum})")]
    BadProbabilities { sum: f64 },
    #[error("matrix is not Hermitian within tolerance")]
    NotHermitian,
    #[error("matrix has trace {trace}, expected 1")]
    BadTrace { trace: f64 },
    #[error("matrix has a negative eigenvalue {min}")]
    NotPositive { min: f64 },
    #[error("round index {index} outside 1..={rounds}")]
    RoundOutOfRange { index: usize, rounds: usize },
    #[error("sequence lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("mapping is not a bijection on its domain")]
    NotABijection,
    #[error("key sequence needs at least 2 keys, got {0}")]
    KeySequenceTooShort(usize),
    #[error("amplitudes are not normalized within tolerance")]
    BadFakeState,
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
