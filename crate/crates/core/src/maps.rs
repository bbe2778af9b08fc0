//! Single-qubit positive maps and their partial or product application.
//!
//! All maps act linearly on arbitrary Hermitian operators, not only on
//! positive ones, so intermediate results of a product map may be indefinite.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{bit_mask, qubit_bit, ComplexMatrix, HermitianOperator};

type Block = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A linear map on a single qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    /// Population-only decay: both populations become their mean, coherences are kept.
    P,
    /// Transpose in the computational basis.
    T,
    /// Reduction map `1 Tr(s) - s`.
    H,
    /// Conjugation by the NOT gate, `X s X`.
    X,
    Identity,
}

impl MapKind {
    pub const ALL: [MapKind; 5] = [MapKind::P, MapKind::T, MapKind::H, MapKind::X, MapKind::Identity];

    /// Action on an arbitrary 2x2 complex matrix (the linear extension).
    pub fn act(self, m: Block) -> Block {
        let [[a, b], [c, d]] = m;
        match self {
            MapKind::P => {
                let mean = (a + d) * 0.5;
                [[mean, b], [c, mean]]
            }
            MapKind::T => [[a, c], [b, d]],
            MapKind::H => [[d, -b], [-c, a]],
            MapKind::X => [[d, c], [b, a]],
            MapKind::Identity => m,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            MapKind::P => "P",
            MapKind::T => "T",
            MapKind::H => "H",
            MapKind::X => "X",
            MapKind::Identity => "Identity",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseMapKindError(pub String);

impl fmt::Display for ParseMapKindError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown map kind `{}` (expected P, T, H, X or Identity)", self.0)
    }
}

impl std::error::Error for ParseMapKindError {}

impl FromStr for MapKind {
    type Err = ParseMapKindError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "P" | "p" => Ok(MapKind::P),
            "T" | "t" => Ok(MapKind::T),
            "H" | "h" => Ok(MapKind::H),
            "X" | "x" => Ok(MapKind::X),
            "I" | "Id" | "Identity" | "identity" => Ok(MapKind::Identity),
            other => Err(ParseMapKindError(other.to_string())),
        }
    }
}

/// Assignment of single-qubit maps to qubits; unlisted qubits get the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSpec {
    assignments: Vec<(usize, MapKind)>,
}

impl MapSpec {
    /// Qubit indices are 1-based and must be distinct.
    pub fn new(assignments: Vec<(usize, MapKind)>) -> Result<Self> {
        let mut seen = Vec::with_capacity(assignments.len());
        for &(k, _) in &assignments {
            if k == 0 {
                return Err(Error::QubitOutOfRange { index: 0, n_qubits: 0 });
            }
            if seen.contains(&k) {
                return Err(Error::DuplicateQubit(k));
            }
            seen.push(k);
        }
        Ok(Self { assignments })
    }

    pub fn single(k: usize, kind: MapKind) -> Self {
        assert!(k >= 1, "qubit indices are 1-based");
        Self {
            assignments: vec![(k, kind)],
        }
    }

    /// The same map on every one of `n_qubits` qubits.
    pub fn all(n_qubits: usize, kind: MapKind) -> Self {
        Self {
            assignments: (1..=n_qubits).map(|k| (k, kind)).collect(),
        }
    }

    pub fn assignments(&self) -> &[(usize, MapKind)] {
        &self.assignments
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        match self.assignments.iter().find(|&&(k, _)| k > n_qubits) {
            Some(&(index, _)) => Err(Error::QubitOutOfRange { index, n_qubits }),
            None => Ok(()),
        }
    }

    /// Assignments sorted by ascending qubit index.
    pub fn ordered(&self) -> Vec<(usize, MapKind)> {
        let mut v = self.assignments.clone();
        v.sort_by_key(|&(k, _)| k);
        v
    }
}

impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, kind)) in self.assignments.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}:{kind}")?;
        }
        Ok(())
    }
}

fn single_qubit_map(sigma: &HermitianOperator, kind: MapKind) -> Result<HermitianOperator> {
    if sigma.n_qubits() != 1 {
        return Err(Error::NotSingleQubit(sigma.n_qubits()));
    }
    let m = sigma.matrix();
    let out = kind.act([[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]);
    let rows = [out[0].to_vec(), out[1].to_vec()];
    Ok(HermitianOperator::new_unchecked(ComplexMatrix::from_rows(&rows)?))
}

/// Population-only decay of a single-qubit operator.
pub fn lambda_p(sigma: &HermitianOperator) -> Result<HermitianOperator> {
    single_qubit_map(sigma, MapKind::P)
}

pub fn lambda_t(sigma: &HermitianOperator) -> Result<HermitianOperator> {
    single_qubit_map(sigma, MapKind::T)
}

pub fn lambda_h(sigma: &HermitianOperator) -> Result<HermitianOperator> {
    single_qubit_map(sigma, MapKind::H)
}

pub fn lambda_x(sigma: &HermitianOperator) -> Result<HermitianOperator> {
    single_qubit_map(sigma, MapKind::X)
}

fn check_qubit(rho: &HermitianOperator, k: usize) -> Result<()> {
    if k < 1 || k > rho.n_qubits() {
        return Err(Error::QubitOutOfRange {
            index: k,
            n_qubits: rho.n_qubits(),
        });
    }
    Ok(())
}

/// Applies `kind` to qubit `k` (1-based) and the identity elsewhere.
///
/// Each output element is read directly from at most two input elements.
/// For `P`, element `(i, j)` becomes the mean of its two partners that share
/// every bit except bit `k` when `i_k = j_k`, and is left unchanged when
/// `i_k != j_k`.
pub fn apply_on_qubit(rho: &HermitianOperator, k: usize, kind: MapKind) -> Result<HermitianOperator> {
    check_qubit(rho, k)?;
    if kind == MapKind::Identity {
        return Ok(rho.clone());
    }
    let n = rho.n_qubits();
    let dim = rho.dim();
    let mask = bit_mask(k, n);
    let src = rho.matrix();
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        let ik = qubit_bit(i, k, n);
        let i0 = i & !mask;
        for j in 0..dim {
            let jk = qubit_bit(j, k, n);
            let j0 = j & !mask;
            out[(i, j)] = match kind {
                MapKind::P if ik == jk => (src[(i0, j0)] + src[(i0 | mask, j0 | mask)]) * 0.5,
                MapKind::P => src[(i, j)],
                MapKind::T => src[(i0 | (jk * mask), j0 | (ik * mask))],
                MapKind::X => src[(i ^ mask, j ^ mask)],
                MapKind::H if ik == jk => src[(i0, j0)] + src[(i0 | mask, j0 | mask)] - src[(i, j)],
                MapKind::H => -src[(i, j)],
                MapKind::Identity => unreachable!(),
            };
        }
    }
    Ok(HermitianOperator::new_unchecked(out))
}

/// Reference construction of [`apply_on_qubit`].
///
/// Splits `rho = sum_{x,y} A_xy ⊗_k |x><y|` and rebuilds
/// `sum_{x,y} A_xy ⊗_k kind(|x><y|)` by injecting each image of a matrix
/// unit back at qubit `k`. Quadratic in memory traffic like the fast path,
/// but shares no element rule with it.
pub fn apply_on_qubit_dense(rho: &HermitianOperator, k: usize, kind: MapKind) -> Result<HermitianOperator> {
    check_qubit(rho, k)?;
    let n = rho.n_qubits();
    let mask = bit_mask(k, n);
    let low = mask - 1;
    let reduced_dim = rho.dim() / 2;
    let inject = |r: usize, bit: usize| ((r & !low) << 1) | (bit * mask) | (r & low);
    let mut out = ComplexMatrix::zeros(rho.dim());
    for x in 0..2 {
        for y in 0..2 {
            let mut unit = [[ZERO; 2]; 2];
            unit[x][y] = ONE;
            let image = kind.act(unit);
            for r in 0..reduced_dim {
                for s in 0..reduced_dim {
                    let a = rho.get(inject(r, x), inject(s, y));
                    for (u, row) in image.iter().enumerate() {
                        for (v, &w) in row.iter().enumerate() {
                            out[(inject(r, u), inject(s, v))] += a * w;
                        }
                    }
                }
            }
        }
    }
    Ok(HermitianOperator::new_unchecked(out))
}

/// Applies every assignment of `spec`, in ascending qubit order.
pub fn apply_product(rho: &HermitianOperator, spec: &MapSpec) -> Result<HermitianOperator> {
    spec.validate(rho.n_qubits())?;
    let mut acc = rho.clone();
    for (k, kind) in spec.ordered() {
        acc = apply_on_qubit(&acc, k, kind)?;
    }
    Ok(acc)
}

/// `Λ_P` on every qubit.
pub fn lambda_p_all(rho: &HermitianOperator) -> HermitianOperator {
    apply_product(rho, &MapSpec::all(rho.n_qubits(), MapKind::P)).expect("spec covers exactly the register")
}
