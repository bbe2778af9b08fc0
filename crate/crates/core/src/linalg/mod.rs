//! Dense complex matrix substrate for qubit operators.
//!
//! Basis indices use the big-endian qubit convention throughout the crate:
//! qubit 1 is the most significant bit of the index, so `|q1 q2 ... qn>`
//! maps to index `q1 * 2^(n-1) + ... + qn`.

mod bits;
mod bloch;
mod eigen;
mod matrix;
mod operator;

pub use bits::{bit_mask, hamming, qubit_bit};
pub use bloch::{bloch_from_density, density_from_bloch, BlochVector};
pub use eigen::{hermitian_eigen, hermitian_eigenvalues, min_eigenvalue, Eigen, MAX_SWEEPS};
pub use matrix::ComplexMatrix;
pub use operator::{partial_trace, tensor, DensityOperator, HermitianOperator};

/// Largest supported register. A dense 4096 x 4096 complex matrix is ~268 MB.
pub const MAX_QUBITS: usize = 12;

/// Entry-wise Hermiticity tolerance.
pub const TOL_HERM: f64 = 1e-12;
/// Unit-trace tolerance for density operators.
pub const TOL_TRACE: f64 = 1e-10;
/// Allowed negative eigenvalue for a matrix still considered positive semidefinite.
pub const TOL_PSD: f64 = 1e-9;
/// Eigensolver accuracy target.
pub const TOL_EIG: f64 = 1e-10;
