//! One-sided inseparability criteria.
//!
//! Every check here can only certify that a state is *not* multiseparable.
//! An [`Verdict::Inconclusive`] result never claims separability.
//!
//! Off-diagonal witnesses are always reported from the lower triangle
//! (`a > b`); the upper-triangle partner has the same modulus.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hamming, DensityOperator, HermitianOperator, TOL_PSD};
use crate::maps::{apply_product, lambda_p_all, MapSpec};

/// Margin by which a strict inequality must hold before a criterion fires.
pub const TOL_CRIT: f64 = 1e-9;

/// Elements with modulus at or below this have no meaningful argument.
pub const ZERO_ELEMENT: f64 = 1e-12;

/// Default angular tolerance (radians) for the equal-argument hypothesis.
pub const TOL_ARG: f64 = 1e-9;

/// Largest register accepted by the full off-diagonal scan.
pub const MAX_SCAN_QUBITS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Inseparable,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Inseparable => "inseparable",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    LzAntidiagonal,
    HammingOffDiagonal,
    MapNegativity,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::LzAntidiagonal => "lz-antidiagonal",
            Criterion::HammingOffDiagonal => "hamming-offdiagonal",
            Criterion::MapNegativity => "map-negativity",
        })
    }
}

/// Element `(a, b)` compared against the product-state bound `2^-h(a,b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OffDiagonalWitness {
    pub a: usize,
    pub b: usize,
    pub value: Complex64,
    pub hamming_distance: u32,
    pub bound: f64,
}

impl OffDiagonalWitness {
    pub fn margin(&self) -> f64 {
        self.value.norm() - self.bound
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    OffDiagonal(OffDiagonalWitness),
    /// Negative eigenvalue of the mapped operator and its unit eigenvector.
    Eigen {
        min_eigenvalue: f64,
        eigenvector: Vec<Complex64>,
    },
    /// `<v|σ|v>` for `|v> = |a> - (s_ab^*/|s_ab|)|b>` on the mapped operator.
    QuadraticForm { a: usize, b: usize, value: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionReport {
    pub verdict: Verdict,
    pub criterion: Criterion,
    /// Present whenever the verdict is `Inseparable`.
    pub witness: Option<Witness>,
    pub spec_used: Option<MapSpec>,
    /// The tested statistic: best `|c| - bound` for element scans, the
    /// minimum eigenvalue (or quadratic form) for map checks.
    pub score: f64,
}

impl DetectionReport {
    pub fn is_inseparable(&self) -> bool {
        self.verdict == Verdict::Inseparable
    }

    pub fn off_diagonal(&self) -> Option<&OffDiagonalWitness> {
        match &self.witness {
            Some(Witness::OffDiagonal(w)) => Some(w),
            _ => None,
        }
    }

    fn new(criterion: Criterion, witness: Option<Witness>, spec_used: Option<MapSpec>, score: f64) -> Self {
        let verdict = if witness.is_some() {
            Verdict::Inseparable
        } else {
            Verdict::Inconclusive
        };
        Self {
            verdict,
            criterion,
            witness,
            spec_used,
            score,
        }
    }
}

fn element_witness(rho: &HermitianOperator, a: usize, b: usize) -> OffDiagonalWitness {
    let h = (a ^ b).count_ones();
    OffDiagonalWitness {
        a,
        b,
        value: rho.get(a, b),
        hamming_distance: h,
        bound: 0.5f64.powi(h as i32),
    }
}

/// Scans pairs in lexicographic order, keeping the first maximal margin.
fn best_pair(rho: &HermitianOperator, pairs: impl Iterator<Item = (usize, usize)>) -> Option<OffDiagonalWitness> {
    let mut best: Option<OffDiagonalWitness> = None;
    for (a, b) in pairs {
        let w = element_witness(rho, a, b);
        if best.as_ref().is_none_or(|cur| w.margin() > cur.margin()) {
            best = Some(w);
        }
    }
    best
}

fn report_from_best(criterion: Criterion, best: Option<OffDiagonalWitness>) -> DetectionReport {
    let score = best.as_ref().map_or(f64::NEG_INFINITY, OffDiagonalWitness::margin);
    let witness = best.filter(|w| w.margin() > TOL_CRIT).map(Witness::OffDiagonal);
    DetectionReport::new(criterion, witness, None, score)
}

/// Antidiagonal elements of a fully separable state are bounded by `2^-n`.
pub fn lz_antidiagonal_check(rho: &DensityOperator) -> DetectionReport {
    let dim = rho.dim();
    let pairs = (dim / 2..dim).map(|a| (a, dim - 1 - a));
    report_from_best(Criterion::LzAntidiagonal, best_pair(rho, pairs))
}

/// Element `(a, b)` of a fully separable state is bounded by `2^-h(a,b)`.
///
/// Reports the lower-triangle element with the largest excess over its bound.
pub fn hamming_offdiagonal_check(rho: &DensityOperator) -> Result<DetectionReport> {
    let n = rho.n_qubits();
    if n > MAX_SCAN_QUBITS {
        return Err(Error::ScanTooLarge { n_qubits: n });
    }
    let dim = rho.dim();
    let pairs = (1..dim).flat_map(|a| (0..a).map(move |b| (a, b)));
    Ok(report_from_best(Criterion::HammingOffDiagonal, best_pair(rho, pairs)))
}

/// Negativity of `spec` applied to `rho`, at the default PSD tolerance.
pub fn map_negativity_check(rho: &DensityOperator, spec: &MapSpec) -> Result<DetectionReport> {
    map_negativity_check_with_tol(rho, spec, TOL_PSD)
}

pub fn map_negativity_check_with_tol(rho: &DensityOperator, spec: &MapSpec, tol: f64) -> Result<DetectionReport> {
    let mapped = apply_product(rho, spec)?;
    let eigen = mapped.eigen()?;
    let min = eigen.values[0];
    let witness = (min < -tol).then(|| Witness::Eigen {
        min_eigenvalue: min,
        eigenvector: eigen.vector(0).expect("vectors requested"),
    });
    Ok(DetectionReport::new(Criterion::MapNegativity, witness, Some(spec.clone()), min))
}

/// Eigensolver-free variant of the all-qubit `Λ_P` check.
///
/// After `Λ_P` on every qubit all diagonal entries equal `2^-n`, so the
/// largest off-diagonal modulus of the image decides the quadratic-form
/// witness directly. Negativity found here implies negativity found by
/// [`map_negativity_check`]; the converse need not hold.
pub fn lambda_p_quadratic_check(rho: &DensityOperator) -> Result<DetectionReport> {
    let n = rho.n_qubits();
    let sigma = lambda_p_all(rho);
    let dim = sigma.dim();
    let mut best = (1, 0, 0.0);
    for a in 1..dim {
        for b in 0..a {
            let m = sigma.get(a, b).norm();
            if m > best.2 {
                best = (a, b, m);
            }
        }
    }
    let spec = Some(MapSpec::all(n, crate::maps::MapKind::P));
    let (a, b, m) = best;
    if m <= ZERO_ELEMENT {
        let score = 2.0 * sigma.get(0, 0).re;
        return Ok(DetectionReport::new(Criterion::MapNegativity, None, spec, score));
    }
    let value = lemma2_witness_value(&sigma, a, b)?;
    let witness = (value < -TOL_PSD).then_some(Witness::QuadraticForm { a, b, value });
    Ok(DetectionReport::new(Criterion::MapNegativity, witness, spec, value))
}

fn check_index(index: usize, dim: usize) -> Result<()> {
    if index >= dim {
        return Err(Error::IndexOutOfRange { index, dim });
    }
    Ok(())
}

/// Unit-free witness vector `|a> - (s_ab^*/|s_ab|)|b>`.
pub fn lemma2_witness_vector(sigma: &HermitianOperator, a: usize, b: usize) -> Result<Vec<Complex64>> {
    let dim = sigma.dim();
    check_index(a, dim)?;
    check_index(b, dim)?;
    if a == b {
        return Err(Error::DiagonalPair(a));
    }
    let s = sigma.get(a, b);
    if s.norm() == 0.0 {
        return Err(Error::ZeroElement { a, b });
    }
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[a] = Complex64::new(1.0, 0.0);
    v[b] = -s.conj() / s.norm();
    Ok(v)
}

/// `<v|σ|v>` for the two-level witness vector on `(a, b)`.
///
/// Equals `s_aa + s_bb - 2|s_ab|`; with all diagonals `2^-n` this is
/// `2(2^-n - |s_ab|)`.
pub fn lemma2_witness_value(sigma: &HermitianOperator, a: usize, b: usize) -> Result<f64> {
    let v = lemma2_witness_vector(sigma, a, b)?;
    // only the (a, b) block contributes
    let (va, vb) = (v[a], v[b]);
    let form = va.conj() * sigma.get(a, a) * va
        + va.conj() * sigma.get(a, b) * vb
        + vb.conj() * sigma.get(b, a) * va
        + vb.conj() * sigma.get(b, b) * vb;
    Ok(form.re)
}

fn angle_between(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// True when every non-zero lower-triangle element shares one argument.
pub fn equal_argument_check(rho: &HermitianOperator, tol_arg: f64) -> bool {
    let dim = rho.dim();
    let mut reference: Option<f64> = None;
    for i in 1..dim {
        for j in 0..i {
            let c = rho.get(i, j);
            if c.norm() <= ZERO_ELEMENT {
                continue;
            }
            let arg = c.arg();
            match reference {
                None => reference = Some(arg),
                Some(r) if angle_between(arg, r) > tol_arg => return false,
                Some(_) => {}
            }
        }
    }
    true
}

/// `|(Λ_P^{⊗n} ρ)_ab| >= |ρ_ab| / 2^(n - h(a,b))` for an equal-argument `ρ`.
pub fn lemma1_bound_check(rho: &HermitianOperator, a: usize, b: usize) -> Result<bool> {
    let n = rho.n_qubits();
    let dim = rho.dim();
    check_index(a, dim)?;
    check_index(b, dim)?;
    if a == b {
        return Err(Error::DiagonalPair(a));
    }
    if !equal_argument_check(rho, TOL_ARG) {
        return Err(Error::UnequalArguments);
    }
    let h = hamming(a, b, n)?;
    let mapped = lambda_p_all(rho);
    let lower = rho.get(a, b).norm() / f64::from(1u32 << (n as u32 - h));
    Ok(mapped.get(a, b).norm() >= lower - TOL_CRIT)
}
