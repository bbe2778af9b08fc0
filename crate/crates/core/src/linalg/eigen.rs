//! Cyclic Jacobi eigensolver for dense complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so every step
//! is a unitary similarity and the iteration converges for any Hermitian input.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::operator::HermitianOperator;
use crate::error::{Error, Result};

/// Sweep cap; convergence is quadratic so real inputs finish in well under 20.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted ascending with optional matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// Column `i` is the unit eigenvector for `values[i]`.
    pub vectors: Option<ComplexMatrix>,
}

impl Eigen {
    pub fn vector(&self, i: usize) -> Option<Vec<Complex64>> {
        let v = self.vectors.as_ref()?;
        Some((0..v.dim()).map(|r| v[(r, i)]).collect())
    }

    /// `V diag(values) V^dagger`, or `None` when vectors were not requested.
    pub fn reconstruct(&self) -> Option<ComplexMatrix> {
        let v = self.vectors.as_ref()?;
        let d = ComplexMatrix::from_diagonal(&self.values);
        Some(v.matmul(&d).matmul(&v.adjoint()))
    }
}

pub fn hermitian_eigenvalues(op: &HermitianOperator) -> Result<Vec<f64>> {
    jacobi(op.matrix(), false).map(|e| e.values)
}

pub fn hermitian_eigen(op: &HermitianOperator) -> Result<Eigen> {
    jacobi(op.matrix(), true)
}

pub fn min_eigenvalue(op: &HermitianOperator) -> Result<f64> {
    hermitian_eigenvalues(op).map(|v| v[0])
}

pub(crate) fn jacobi(input: &ComplexMatrix, want_vectors: bool) -> Result<Eigen> {
    let n = input.dim();
    // work on the exactly Hermitian part
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        a[(i, i)] = Complex64::new(input[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let z = (input[(i, j)] + input[(j, i)].conj()) * 0.5;
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));

    let frob = a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = (n as f64) * f64::EPSILON * frob;

    let mut converged = n == 1 || frob == 0.0;
    let mut sweep = 0;
    while !converged {
        if sweep == MAX_SWEEPS {
            return Err(Error::NotConverged(MAX_SWEEPS));
        }
        sweep += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_mut(), p, q, target);
            }
        }
        converged = off_diagonal_norm(&a) <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = v.map(|v| {
        let mut sorted = ComplexMatrix::zeros(n);
        for (col, &src) in order.iter().enumerate() {
            for r in 0..n {
                sorted[(r, col)] = v[(r, src)];
            }
        }
        sorted
    });
    Ok(Eigen { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            sum += 2.0 * a[(p, q)].norm_sqr();
        }
    }
    sum.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize, target: f64) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    // below this the pivot cannot move the off-diagonal norm past the target
    if mag <= target * 1e-3 || mag == 0.0 {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = diag(1, e^{-i phi}) on (p, q) followed by the real rotation [[c, s], [-s, c]]
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * mag, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * jpp + vkq * jqp;
            v[(k, q)] = vkp * jpq + vkq * jqq;
        }
    }
}
