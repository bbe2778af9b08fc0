//! Fixture states and seeded multiseparable controls.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{density_from_bloch, BlochVector, ComplexMatrix, DensityOperator, HermitianOperator, MAX_QUBITS};

/// Generator behind every seeded sampler in this module.
pub type StateRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Three-qubit state of Horodecki's 2x4 PPT family, normalized by `1/(7b+1)`.
pub fn horodecki_b(b: f64) -> Result<DensityOperator> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::InvalidParameter {
            name: "b",
            value: b,
            expected: "0 < b < 1",
        });
    }
    let d = (1.0 + b) / 2.0;
    let r = (1.0 - b * b).sqrt() / 2.0;
    #[rustfmt::skip]
    let rows: [[f64; 8]; 8] = [
        [b,   0.0, 0.0, 0.0, 0.0, b,   0.0, 0.0],
        [0.0, b,   0.0, 0.0, 0.0, 0.0, b,   0.0],
        [0.0, 0.0, b,   0.0, 0.0, 0.0, 0.0, b  ],
        [0.0, 0.0, 0.0, b,   0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, d,   0.0, 0.0, r  ],
        [b,   0.0, 0.0, 0.0, 0.0, b,   0.0, 0.0],
        [0.0, b,   0.0, 0.0, 0.0, 0.0, b,   0.0],
        [0.0, 0.0, b,   0.0, r,   0.0, 0.0, d  ],
    ];
    let norm = 1.0 / (7.0 * b + 1.0);
    let data = rows
        .iter()
        .flatten()
        .map(|&x| Complex64::new(x * norm, 0.0))
        .collect();
    DensityOperator::from_matrix(ComplexMatrix::from_vec(8, data)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus];

    pub fn amplitudes(self) -> [Complex64; 4] {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (z, p, m) = (Complex64::new(0.0, 0.0), Complex64::new(h, 0.0), Complex64::new(-h, 0.0));
        match self {
            Bell::PhiPlus => [p, z, z, p],
            Bell::PhiMinus => [p, z, z, m],
            Bell::PsiPlus => [z, p, p, z],
            Bell::PsiMinus => [z, p, m, z],
        }
    }

    pub fn projector(self) -> DensityOperator {
        let m = ComplexMatrix::projector(&self.amplitudes());
        DensityOperator::new_unchecked(HermitianOperator::new_unchecked(m))
    }
}

impl fmt::Display for Bell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bell::PhiPlus => "phi+",
            Bell::PhiMinus => "phi-",
            Bell::PsiPlus => "psi+",
            Bell::PsiMinus => "psi-",
        })
    }
}

impl FromStr for Bell {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "phi+" | "phiplus" => Ok(Bell::PhiPlus),
            "phi-" | "phiminus" => Ok(Bell::PhiMinus),
            "psi+" | "psiplus" => Ok(Bell::PsiPlus),
            "psi-" | "psiminus" => Ok(Bell::PsiMinus),
            _ => Err(format!("unknown Bell state `{s}` (expected phi+, phi-, psi+ or psi-)")),
        }
    }
}

/// Isotropic mixing parameter `s` and Bell state; `s` must lie outside (-4, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicParams {
    pub s: f64,
    pub bell: Bell,
}

impl IsotropicParams {
    pub fn new(s: f64, bell: Bell) -> Self {
        Self { s, bell }
    }
}

/// `(|phi><phi| + s 1/4) / (1 + s)`.
pub fn isotropic(params: IsotropicParams) -> Result<DensityOperator> {
    let s = params.s;
    if !(s <= -4.0 || s >= 0.0) || !s.is_finite() {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s,
            expected: "s <= -4 or s >= 0",
        });
    }
    let proj = params.bell.projector();
    let mixed = &proj.matrix().clone() + &(&ComplexMatrix::identity(4) * (s / 4.0));
    DensityOperator::from_matrix(&mixed * (1.0 / (1.0 + s)))
}

/// Projector onto `sqrt(p)|00> + sqrt(1-p)|11>`.
pub fn pure_superposition(p: f64) -> Result<DensityOperator> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
            expected: "0 < p < 1",
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    let psi = [Complex64::new(p.sqrt(), 0.0), zero, zero, Complex64::new((1.0 - p).sqrt(), 0.0)];
    let m = ComplexMatrix::projector(&psi);
    Ok(DensityOperator::new_unchecked(HermitianOperator::new_unchecked(m)))
}

/// Projector onto `(|0...0> + |1...1>)/sqrt(2)`.
pub fn ghz(n_qubits: usize) -> Result<DensityOperator> {
    if n_qubits < 2 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n_qubits as f64,
            expected: "n >= 2",
        });
    }
    if n_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits(n_qubits));
    }
    let dim = 1usize << n_qubits;
    let mut m = ComplexMatrix::zeros(dim);
    for i in [0, dim - 1] {
        for j in [0, dim - 1] {
            m[(i, j)] = Complex64::new(0.5, 0.0);
        }
    }
    Ok(DensityOperator::new_unchecked(HermitianOperator::new_unchecked(m)))
}

/// Seed for [`random_multiseparable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MixtureSeed {
    pub n_qubits: usize,
    pub terms: usize,
    pub rng_seed: u64,
}

/// Uniform draw from the radius-1/2 Bloch ball by rejection from the cube.
pub fn random_bloch_vector<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    loop {
        let v = BlochVector::new(
            rng.random::<f64>() - 0.5,
            rng.random::<f64>() - 0.5,
            rng.random::<f64>() - 0.5,
        );
        if v.norm_sqr() <= 0.25 {
            return v;
        }
    }
}

/// `σ_1 ⊗ ... ⊗ σ_n` from Bloch coordinates, qubit 1 first.
pub fn product_state(factors: &[BlochVector]) -> Result<DensityOperator> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
            expected: "at least one factor",
        });
    }
    if factors.len() > MAX_QUBITS {
        return Err(Error::TooManyQubits(factors.len()));
    }
    let mut acc = density_from_bloch(factors[0])?.matrix().clone();
    for &v in &factors[1..] {
        acc = acc.kron(density_from_bloch(v)?.matrix());
    }
    Ok(DensityOperator::new_unchecked(HermitianOperator::new_unchecked(acc)))
}

/// `sum_i w_i σ_i^[1] ⊗ ... ⊗ σ_i^[n]` with weights rescaled to sum to one.
pub fn multiseparable_mixture(weights: &[f64], factors: &[Vec<BlochVector>]) -> Result<DensityOperator> {
    if weights.is_empty() || weights.len() != factors.len() {
        return Err(Error::EntryCount {
            expected: factors.len(),
            found: weights.len(),
        });
    }
    let total: f64 = weights.iter().sum();
    if weights.iter().any(|&w| !(w >= 0.0)) || !(total > 0.0) {
        return Err(Error::InvalidParameter {
            name: "weights",
            value: total,
            expected: "non-negative with positive sum",
        });
    }
    let n = factors[0].len();
    let mut acc: Option<ComplexMatrix> = None;
    for (&w, term) in weights.iter().zip(factors) {
        if term.len() != n {
            return Err(Error::EntryCount {
                expected: n,
                found: term.len(),
            });
        }
        let scaled = product_state(term)?.matrix() * (w / total);
        acc = Some(match acc {
            Some(a) => &a + &scaled,
            None => scaled,
        });
    }
    let m = acc.expect("at least one term");
    Ok(DensityOperator::new_unchecked(HermitianOperator::new_unchecked(m)))
}

/// Seeded random convex mixture of product states.
pub fn random_multiseparable(seed: MixtureSeed) -> Result<DensityOperator> {
    if seed.n_qubits == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
            expected: "n >= 1",
        });
    }
    if seed.n_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits(seed.n_qubits));
    }
    if seed.terms == 0 {
        return Err(Error::InvalidParameter {
            name: "terms",
            value: 0.0,
            expected: "terms >= 1",
        });
    }
    let mut rng = rng_from_seed(seed.rng_seed);
    let mut weights = Vec::with_capacity(seed.terms);
    let mut factors = Vec::with_capacity(seed.terms);
    for _ in 0..seed.terms {
        // (0, 1]: a zero total is impossible
        weights.push(1.0 - rng.random::<f64>());
        factors.push((0..seed.n_qubits).map(|_| random_bloch_vector(&mut rng)).collect());
    }
    multiseparable_mixture(&weights, &factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{TOL_PSD, TOL_TRACE};
    use crate::maps::{apply_on_qubit, MapKind};

    #[test]
    fn horodecki_examples() {
        let rho = horodecki_b(0.1).unwrap();
        let expected = 0.99f64.sqrt() / 3.4;
        assert!((rho.get(7, 4).re - expected).abs() < 1e-15);
        assert!((rho.get(4, 7).re - expected).abs() < 1e-15);
        for b in [0.01, 0.1, 0.5, 0.9, 0.99] {
            assert!((horodecki_b(b).unwrap().trace() - 1.0).abs() < TOL_TRACE);
        }
        let pt = apply_on_qubit(&horodecki_b(0.5).unwrap(), 1, MapKind::T).unwrap();
        assert!(pt.min_eigenvalue().unwrap() >= -TOL_PSD);
    }

    #[test]
    fn horodecki_rejects_out_of_range() {
        for b in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
            assert!(horodecki_b(b).is_err(), "b = {b}");
        }
    }

    #[test]
    fn isotropic_examples() {
        let rho = isotropic(IsotropicParams::new(0.0, Bell::PhiPlus)).unwrap();
        assert!(rho.max_abs_diff(&Bell::PhiPlus.projector()) < 1e-15);

        let rho = isotropic(IsotropicParams::new(1e6, Bell::PsiMinus)).unwrap();
        let mixed = DensityOperator::maximally_mixed(2).unwrap();
        assert!(rho.max_abs_diff(&mixed) < 1e-5);

        let rho = isotropic(IsotropicParams::new(-4.0, Bell::PhiMinus)).unwrap();
        assert!(rho.min_eigenvalue().unwrap() >= -TOL_PSD);
    }

    #[test]
    fn isotropic_forbidden_interval() {
        for s in [-3.9, -1.0, -0.01, f64::INFINITY] {
            assert!(isotropic(IsotropicParams::new(s, Bell::PhiPlus)).is_err(), "s = {s}");
        }
    }

    #[test]
    fn pure_superposition_examples() {
        let rho = pure_superposition(0.5).unwrap();
        assert!(rho.max_abs_diff(&Bell::PhiPlus.projector()) < 1e-15);
        let p: f64 = 0.2;
        let rho = pure_superposition(p).unwrap();
        assert!((rho.get(0, 3).re - (p * (1.0 - p)).sqrt()).abs() < 1e-15);
        assert!(pure_superposition(0.0).is_err());
        assert!(pure_superposition(1.0).is_err());
    }

    #[test]
    fn ghz_examples() {
        assert!(ghz(2).unwrap().max_abs_diff(&Bell::PhiPlus.projector()) < 1e-15);
        let g3 = ghz(3).unwrap();
        assert_eq!(g3.get(0, 7), Complex64::new(0.5, 0.0));
        assert!(ghz(1).is_err());
        assert_eq!(ghz(13), Err(Error::TooManyQubits(13)));
    }

    #[test]
    fn bell_parsing_round_trip() {
        for bell in Bell::ALL {
            assert_eq!(bell.to_string().parse::<Bell>().unwrap(), bell);
        }
        assert!("phi".parse::<Bell>().is_err());
    }

    #[test]
    fn mixture_at_origin_is_maximally_mixed() {
        let rho = multiseparable_mixture(&[1.0], &[vec![BlochVector::ORIGIN; 3]]).unwrap();
        assert!(rho.max_abs_diff(&DensityOperator::maximally_mixed(3).unwrap()) < 1e-16);
    }

    #[test]
    fn random_mixtures_are_valid_and_reproducible() {
        for seed in 0..50 {
            let s = MixtureSeed {
                n_qubits: 3,
                terms: 4,
                rng_seed: seed,
            };
            let rho = random_multiseparable(s).unwrap();
            assert!((rho.trace() - 1.0).abs() < TOL_TRACE);
            assert!(rho.min_eigenvalue().unwrap() >= -TOL_PSD);
            assert_eq!(rho, random_multiseparable(s).unwrap());
        }
        let a = random_multiseparable(MixtureSeed { n_qubits: 2, terms: 3, rng_seed: 1 }).unwrap();
        let b = random_multiseparable(MixtureSeed { n_qubits: 2, terms: 3, rng_seed: 2 }).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn random_bloch_stays_in_ball() {
        let mut rng = rng_from_seed(7);
        for _ in 0..1000 {
            assert!(random_bloch_vector(&mut rng).norm_sqr() <= 0.25);
        }
    }
}
