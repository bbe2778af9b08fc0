use std::ops::Deref;

use num_complex::Complex64;

use super::bits::bit_mask;
use super::eigen::{self, Eigen};
use super::matrix::ComplexMatrix;
use super::{MAX_QUBITS, TOL_HERM, TOL_PSD, TOL_TRACE};
use crate::error::{Error, Result};

/// Hermitian operator on `n` qubits. May be indefinite (maps produce these).
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
    n_qubits: usize,
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    let n = dim.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits(n));
    }
    Ok(n)
}

impl HermitianOperator {
    /// Validates dimension and Hermiticity (within [`TOL_HERM`]).
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let n_qubits = qubits_for_dim(matrix.dim())?;
        let (row, col, deviation) = matrix.hermiticity_defect();
        if deviation > TOL_HERM {
            return Err(Error::NotHermitian { row, col, deviation });
        }
        Ok(Self { matrix, n_qubits })
    }

    /// Skips the Hermiticity scan. Callers guarantee the structure.
    pub(crate) fn new_unchecked(matrix: ComplexMatrix) -> Self {
        let n_qubits = matrix.dim().trailing_zeros() as usize;
        debug_assert_eq!(1 << n_qubits, matrix.dim());
        Self { matrix, n_qubits }
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(n_qubits));
        }
        Self::new(ComplexMatrix::identity(1 << n_qubits))
    }

    /// `sum_i coeff_i * op_i`; all terms must share a qubit count.
    pub fn linear_combination(terms: &[(f64, &HermitianOperator)]) -> Self {
        let (_, first) = terms.first().expect("at least one term");
        let mut acc = ComplexMatrix::zeros(first.dim());
        for (coeff, op) in terms {
            assert_eq!(op.n_qubits, first.n_qubits, "qubit count mismatch");
            acc = &acc + &(op.matrix() * *coeff);
        }
        Self::new_unchecked(acc)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigen::hermitian_eigenvalues(self)
    }

    pub fn eigen(&self) -> Result<Eigen> {
        eigen::hermitian_eigen(self)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        eigen::min_eigenvalue(self)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }
}

/// Positive semidefinite, unit-trace Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    op: HermitianOperator,
}

impl DensityOperator {
    /// Validates unit trace and positivity (minimum eigenvalue >= -[`TOL_PSD`]).
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let tr = op.trace();
        if (tr - 1.0).abs() > TOL_TRACE {
            return Err(Error::TraceNotOne(tr));
        }
        let min = op.min_eigenvalue()?;
        if min < -TOL_PSD {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { op })
    }

    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        Self::new(HermitianOperator::new(matrix)?)
    }

    /// Normalized projector onto `psi`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let unit: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::from_matrix(ComplexMatrix::projector(&unit))
    }

    pub(crate) fn new_unchecked(op: HermitianOperator) -> Self {
        Self { op }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        let id = HermitianOperator::identity(n_qubits)?;
        let dim = id.dim() as f64;
        Ok(Self::new_unchecked(HermitianOperator::new_unchecked(
            id.matrix() * (1.0 / dim),
        )))
    }

    pub fn as_operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn into_operator(self) -> HermitianOperator {
        self.op
    }
}

impl Deref for DensityOperator {
    type Target = HermitianOperator;

    fn deref(&self) -> &HermitianOperator {
        &self.op
    }
}

impl AsRef<HermitianOperator> for DensityOperator {
    fn as_ref(&self) -> &HermitianOperator {
        &self.op
    }
}

impl AsRef<HermitianOperator> for HermitianOperator {
    fn as_ref(&self) -> &HermitianOperator {
        self
    }
}

/// `a ⊗ b`, with the qubits of `a` first (most significant).
pub fn tensor(a: &HermitianOperator, b: &HermitianOperator) -> Result<HermitianOperator> {
    let n = a.n_qubits + b.n_qubits;
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits(n));
    }
    Ok(HermitianOperator::new_unchecked(a.matrix.kron(&b.matrix)))
}

/// Traces out qubit `k` (1-based).
pub fn partial_trace(rho: &HermitianOperator, k: usize) -> Result<HermitianOperator> {
    let n = rho.n_qubits;
    if k < 1 || k > n {
        return Err(Error::QubitOutOfRange { index: k, n_qubits: n });
    }
    if n == 1 {
        return Err(Error::QubitOutOfRange { index: k, n_qubits: 0 });
    }
    let mask = bit_mask(k, n);
    let low = mask - 1;
    let out_dim = rho.dim() / 2;
    // reduced index r = (high bits, low bits) with bit k removed
    let expand = |r: usize, bit: usize| ((r & !low) << 1) | (bit * mask) | (r & low);
    let mut out = ComplexMatrix::zeros(out_dim);
    for r in 0..out_dim {
        for s in 0..out_dim {
            out[(r, s)] = rho.get(expand(r, 0), expand(s, 0)) + rho.get(expand(r, 1), expand(s, 1));
        }
    }
    Ok(HermitianOperator::new_unchecked(out))
}
