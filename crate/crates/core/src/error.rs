use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("{0} qubits exceeds the supported maximum of {max}", max = crate::linalg::MAX_QUBITS)]
    TooManyQubits(usize),
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("matrix is not Hermitian: |m[{row}][{col}] - conj(m[{col}][{row}])| = {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },
    #[error("trace {0} differs from 1")]
    TraceNotOne(f64),
    #[error("operator is not positive semidefinite (minimum eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("qubit index {index} outside 1..={n_qubits}")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("basis index {index} outside 0..{dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected a single-qubit operator, got {0} qubits")]
    NotSingleQubit(usize),
    #[error("qubit {0} assigned more than once in map spec")]
    DuplicateQubit(usize),
    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NotConverged(usize),
    #[error("Bloch vector ({x}, {y}, {z}) lies outside the ball of radius 1/2")]
    OutsideBlochBall { x: f64, y: f64, z: f64 },
    #[error("parameter {name} = {value} out of range: {expected}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("witness undefined: element ({a}, {b}) is zero")]
    ZeroElement { a: usize, b: usize },
    #[error("diagonal pair ({0}, {0}) has no off-diagonal witness")]
    DiagonalPair(usize),
    #[error("off-diagonal elements do not share a common argument")]
    UnequalArguments,
    #[error("dense off-diagonal scan is limited to {max} qubits, got {n_qubits}", max = 8)]
    ScanTooLarge { n_qubits: usize },
}
