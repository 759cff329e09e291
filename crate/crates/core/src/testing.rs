//! Deterministic random inputs for tests and cross-checks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::ComplexMatrix;
use crate::states::{DensityMatrix, StateVector};

/// Seeded generator; same seed, same stream, everywhere.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random normalized pure state with complex amplitudes.
pub fn random_state_vector(n_qubits: usize, rng: &mut ChaCha8Rng) -> StateVector {
    let dim = 1usize << n_qubits;
    let amps: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    StateVector::normalized(n_qubits, amps).expect("nonzero with probability 1")
}

/// Random full-rank density matrix, `G G^dag` normalized to unit trace.
pub fn random_density_matrix(n_qubits: usize, rng: &mut ChaCha8Rng) -> DensityMatrix {
    let dim = 1usize << n_qubits;
    let g = ComplexMatrix::from_fn(dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let pos = g.matmul(&g.adjoint());
    let tr = pos.trace().re;
    let m = pos.scale(Complex64::new(1.0 / tr, 0.0));
    // Symmetrize away the last bits of roundoff.
    let m = ComplexMatrix::from_fn(dim, |r, c| {
        (m.get(r, c) + m.get(c, r).conj()) * Complex64::new(0.5, 0.0)
    });
    DensityMatrix::from_matrix(n_qubits, m).expect("valid by construction")
}

/// Random Hermitian matrix with entries of order one.
pub fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    g.add(&g.adjoint()).scale(Complex64::new(0.5, 0.0))
}
