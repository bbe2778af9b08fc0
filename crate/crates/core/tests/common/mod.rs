#![allow(dead_code)]

use num_complex::Complex64;
use popmap::linalg::ComplexMatrix;
use popmap::states::{rng_from_seed, StateRng};
use popmap::{DensityOperator, HermitianOperator};
use rand::Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> StateRng {
    rng_from_seed(seed)
}

pub fn gaussian(rng: &mut StateRng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Random Hermitian matrix with unit trace (generally indefinite).
pub fn random_hermitian_trace_one(rng: &mut StateRng, n_qubits: usize) -> HermitianOperator {
    let dim = 1 << n_qubits;
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(rng.random::<f64>(), 0.0);
        for j in (i + 1)..dim {
            let z = gaussian(rng) * 0.3;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    let tr = m.trace().re;
    for i in 0..dim {
        m[(i, i)] += Complex64::new((1.0 - tr) / dim as f64, 0.0);
    }
    HermitianOperator::new(m).unwrap()
}

/// `G G^dagger / Tr` with a Gaussian `dim x rank` factor.
pub fn random_density(rng: &mut StateRng, n_qubits: usize, rank: usize) -> DensityOperator {
    let dim = 1 << n_qubits;
    let g: Vec<Vec<Complex64>> = (0..dim).map(|_| (0..rank).map(|_| gaussian(rng)).collect()).collect();
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = (0..rank).map(|r| g[i][r] * g[j][r].conj()).sum();
        }
    }
    let tr = m.trace().re;
    let m = &m * (1.0 / tr);
    symmetrized_density(m)
}

/// Random density operator whose non-zero lower-triangle elements all have argument `theta`.
///
/// Diagonal dominance guarantees positivity. Roughly a third of the
/// off-diagonal pairs are left at zero.
pub fn random_equal_argument(rng: &mut StateRng, n_qubits: usize, theta: f64) -> DensityOperator {
    let dim = 1 << n_qubits;
    let phase = Complex64::from_polar(1.0, theta);
    let mut m = ComplexMatrix::zeros(dim);
    let mut row_sum = vec![0.0; dim];
    for i in 1..dim {
        for j in 0..i {
            if rng.random::<f64>() < 0.33 {
                continue;
            }
            let r = rng.random::<f64>();
            m[(i, j)] = phase * r;
            m[(j, i)] = phase.conj() * r;
            row_sum[i] += r;
            row_sum[j] += r;
        }
    }
    for i in 0..dim {
        m[(i, i)] = Complex64::new(row_sum[i] + rng.random::<f64>(), 0.0);
    }
    let tr = m.trace().re;
    symmetrized_density(&m * (1.0 / tr))
}

/// Mixture `w |psi><psi| + (1-w) 1/dim` with a non-negative real `psi`.
///
/// All off-diagonal elements are real and non-negative, so the state meets
/// the equal-argument hypothesis with argument zero.
pub fn random_nonnegative_mixture(rng: &mut StateRng, n_qubits: usize) -> DensityOperator {
    let dim = 1 << n_qubits;
    let mut psi: Vec<Complex64> = (0..dim)
        .map(|_| {
            // concentrate weight on a few basis states so elements can exceed their bounds
            let x: f64 = rng.random::<f64>();
            Complex64::new(x.powi(6), 0.0)
        })
        .collect();
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    psi.iter_mut().for_each(|z| *z /= norm);
    let w = 0.5 + 0.5 * rng.random::<f64>();
    let pure = ComplexMatrix::projector(&psi);
    let m = &(&pure * w) + &(&ComplexMatrix::identity(dim) * ((1.0 - w) / dim as f64));
    symmetrized_density(m)
}

/// Random state with a large antidiagonal element: noisy GHZ-type superposition
/// of `|a>` and its bitwise complement with a random relative phase.
pub fn random_antidiagonal_heavy(rng: &mut StateRng, n_qubits: usize) -> DensityOperator {
    let dim = 1 << n_qubits;
    let a = rng.random_range(0..dim);
    let b = dim - 1 - a;
    let mut psi = vec![Complex64::new(0.0, 0.0); dim];
    let t: f64 = 0.2 + 0.6 * rng.random::<f64>();
    psi[a] = Complex64::new(t.sqrt(), 0.0);
    psi[b] = Complex64::from_polar((1.0 - t).sqrt(), rng.random::<f64>() * std::f64::consts::TAU);
    let noise = random_density(rng, n_qubits, dim);
    let w = 0.6 + 0.4 * rng.random::<f64>();
    let m = &(&ComplexMatrix::projector(&psi) * w) + &(noise.matrix() * (1.0 - w));
    symmetrized_density(m)
}

fn symmetrized_density(m: ComplexMatrix) -> DensityOperator {
    let h = &(&m + &m.adjoint()) * 0.5;
    DensityOperator::from_matrix(h).unwrap()
}
