use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::operator::{DensityOperator, HermitianOperator};
use super::TOL_PSD;
use crate::error::{Error, Result};

/// Coordinates of `I/2 + x X + y Y + z Z`; the state ball has radius 1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ORIGIN: Self = Self { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

/// Reads the Bloch coordinates of a single-qubit operator.
///
/// Accepts any single-qubit Hermitian operator so that map outputs can be
/// inspected without re-validating positivity.
pub fn bloch_from_density(sigma: &HermitianOperator) -> Result<BlochVector> {
    if sigma.n_qubits() != 1 {
        return Err(Error::NotSingleQubit(sigma.n_qubits()));
    }
    let lower = sigma.get(1, 0);
    Ok(BlochVector {
        x: lower.re,
        y: lower.im,
        z: (sigma.get(0, 0).re - sigma.get(1, 1).re) / 2.0,
    })
}

pub fn density_from_bloch(v: BlochVector) -> Result<DensityOperator> {
    if !(v.norm_sqr() <= 0.25 + TOL_PSD) {
        return Err(Error::OutsideBlochBall { x: v.x, y: v.y, z: v.z });
    }
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 0)] = Complex64::new(0.5 + v.z, 0.0);
    m[(1, 1)] = Complex64::new(0.5 - v.z, 0.0);
    m[(0, 1)] = Complex64::new(v.x, -v.y);
    m[(1, 0)] = Complex64::new(v.x, v.y);
    // inside the ball the 2x2 determinant is 1/4 - |v|^2 >= 0
    Ok(DensityOperator::new_unchecked(HermitianOperator::new_unchecked(m)))
}
