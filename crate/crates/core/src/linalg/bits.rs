use crate::error::{Error, Result};

/// Bit mask selecting qubit `k` (1-based, qubit 1 most significant) of an `n`-qubit index.
#[inline]
pub fn bit_mask(k: usize, n_qubits: usize) -> usize {
    debug_assert!(k >= 1 && k <= n_qubits);
    1 << (n_qubits - k)
}

/// Value (0 or 1) of qubit `k` in basis index `index`.
#[inline]
pub fn qubit_bit(index: usize, k: usize, n_qubits: usize) -> usize {
    (index >> (n_qubits - k)) & 1
}

/// Number of differing bits between the `n`-bit expansions of `a` and `b`.
pub fn hamming(a: usize, b: usize, n_qubits: usize) -> Result<u32> {
    let dim = 1usize << n_qubits;
    for index in [a, b] {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
    }
    Ok((a ^ b).count_ones())
}
