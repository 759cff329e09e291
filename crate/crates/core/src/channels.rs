//! Per-qubit noise channels.
//!
//! The partially depolarizing channel replaces a qubit with the maximally
//! mixed state with probability `d` and leaves it alone otherwise. Two
//! independent implementations ship: [`depolarize`] works by partial-trace
//! re-embedding, qubit by qubit, and [`pauli_weight_scale`] decomposes the
//! state over all Pauli strings and multiplies each coefficient by
//! `s^weight` with `s = 1 - d`. The two agree entrywise and cross-validate
//! each other's index conventions.
//!
//! Also here: averaging over Von Neumann measurements in uniformly random
//! bases (which converges to the `d = 2/3` channel) and measuring every
//! qubit in the computational basis with probability `p`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{DensityMatrix, QubitSubset};

/// Amount of local depolarization `d` with its scaling factor `s = 1 - d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DepolarizationLevel {
    d: f64,
}

impl DepolarizationLevel {
    pub fn new(d: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&d) {
            return Err(Error::BadProbability(d));
        }
        Ok(Self { d })
    }

    pub fn from_scaling(s: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::OutOfRange(format!("scaling factor {s}")));
        }
        Ok(Self { d: 1.0 - s })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// Scaling factor applied to every Pauli component.
    pub fn s(&self) -> f64 {
        1.0 - self.d
    }
}

/// One of the 4^n tensor products of I, X, Y, Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliString {
    letters: Vec<PauliLetter>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliString {
    /// Decode `code` as base-4 digits, qubit 0 first (most significant).
    pub fn from_index(n_qubits: usize, code: usize) -> Self {
        let letters = (0..n_qubits)
            .map(|q| match code >> (2 * (n_qubits - 1 - q)) & 0b11 {
                0 => PauliLetter::I,
                1 => PauliLetter::X,
                2 => PauliLetter::Y,
                _ => PauliLetter::Z,
            })
            .collect();
        Self { letters }
    }

    pub fn n_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| !matches!(l, PauliLetter::I))
            .count()
    }

    /// Bitmask (in index-bit positions) of the qubits this string flips.
    fn flip_mask(&self) -> usize {
        let n = self.letters.len();
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, PauliLetter::X | PauliLetter::Y))
            .map(|(q, _)| 1usize << (n - 1 - q))
            .sum()
    }

    /// `P|j> = phase * |j ^ flip_mask>`; this returns the phase.
    fn phase_on(&self, j: usize) -> Complex64 {
        let n = self.letters.len();
        let mut phase = Complex64::new(1.0, 0.0);
        for (q, letter) in self.letters.iter().enumerate() {
            let bit = j >> (n - 1 - q) & 1;
            match letter {
                PauliLetter::I | PauliLetter::X => {}
                PauliLetter::Y => {
                    // Y|0> = i|1>, Y|1> = -i|0>
                    phase *= if bit == 0 {
                        Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, -1.0)
                    };
                }
                PauliLetter::Z => {
                    if bit == 1 {
                        phase = -phase;
                    }
                }
            }
        }
        phase
    }
}

/// Apply the partially depolarizing channel to each qubit in `targets`.
///
/// Per target qubit q: `rho -> (1-d) rho + d (1/2 ⊗ Tr_q rho)` with the
/// traced factor re-embedded at q's position. Targets commute, so the
/// ascending application order is irrelevant.
pub fn depolarize(
    rho: &DensityMatrix,
    targets: &QubitSubset,
    level: DepolarizationLevel,
) -> Result<DensityMatrix> {
    if targets.n_qubits() != rho.n_qubits() {
        return Err(Error::BadSubset(format!(
            "subset is over {} qubits, state has {}",
            targets.n_qubits(),
            rho.n_qubits()
        )));
    }
    let n = rho.n_qubits();
    let d = level.d();
    let mut m = rho.matrix().clone();
    for &q in targets.members() {
        m = depolarize_one(&m, n, q, d);
    }
    DensityMatrix::from_matrix(n, m)
}

fn depolarize_one(m: &ComplexMatrix, n_qubits: usize, q: usize, d: f64) -> ComplexMatrix {
    if d == 0.0 {
        return m.clone();
    }
    let mask = 1usize << (n_qubits - 1 - q);
    let keep = 1.0 - d;
    let half_d = 0.5 * d;
    ComplexMatrix::from_fn(m.dim(), |i, j| {
        let base = m.get(i, j) * keep;
        if i & mask == j & mask {
            // Re-embedded identity/2 times the partial trace over q.
            let traced = m.get(i & !mask, j & !mask) + m.get(i | mask, j | mask);
            base + traced * half_d
        } else {
            base
        }
    })
}

/// The same channel on **all** qubits, through the Pauli picture: decompose
/// `rho = sum_P c_P P` over every Pauli string and scale each coefficient by
/// `s^weight(P)`.
///
/// Cost grows as `8^n`; meant for cross-validation at small n, not as the
/// production path.
pub fn pauli_weight_scale(rho: &DensityMatrix, s: f64) -> DensityMatrix {
    assert!((0.0..=1.0).contains(&s), "scaling factor must be in [0, 1]");
    let n = rho.n_qubits();
    let dim = rho.dim();
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(dim);
    for code in 0..4usize.pow(n as u32) {
        let p = PauliString::from_index(n, code);
        let flip = p.flip_mask();
        // c_P = tr(rho P) / 2^n
        let mut tr = Complex64::new(0.0, 0.0);
        for j in 0..dim {
            tr += m.get(j, j ^ flip) * p.phase_on(j);
        }
        let coeff = tr * s.powi(p.weight() as i32) / dim as f64;
        if coeff.norm_sqr() == 0.0 {
            continue;
        }
        for j in 0..dim {
            let cur = out.get(j ^ flip, j);
            out.set(j ^ flip, j, cur + coeff * p.phase_on(j));
        }
    }
    DensityMatrix::from_matrix(n, out).expect("channel preserves validity")
}

/// Von Neumann measurement of `target` along `axis` (unit Bloch vector),
/// unread: `rho -> P_+ rho P_+ + P_- rho P_-`.
pub fn projective_measurement(
    rho: &DensityMatrix,
    target: usize,
    axis: [f64; 3],
) -> Result<DensityMatrix> {
    if target >= rho.n_qubits() {
        return Err(Error::BadSubset(format!(
            "target {target} >= n_qubits {}",
            rho.n_qubits()
        )));
    }
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::BadAxis);
    }
    let m = measured_matrix(rho.matrix(), rho.n_qubits(), target, axis);
    DensityMatrix::from_matrix(rho.n_qubits(), m)
}

fn measured_matrix(m: &ComplexMatrix, n_qubits: usize, target: usize, axis: [f64; 3]) -> ComplexMatrix {
    let [x, y, z] = axis;
    let half = Complex64::new(0.5, 0.0);
    let p_plus = [
        [
            Complex64::new(1.0 + z, 0.0) * half,
            Complex64::new(x, -y) * half,
        ],
        [
            Complex64::new(x, y) * half,
            Complex64::new(1.0 - z, 0.0) * half,
        ],
    ];
    let p_minus = [
        [
            Complex64::new(1.0 - z, 0.0) * half,
            Complex64::new(-x, y) * half,
        ],
        [
            Complex64::new(-x, -y) * half,
            Complex64::new(1.0 + z, 0.0) * half,
        ],
    ];
    let mask = 1usize << (n_qubits - 1 - target);
    let a = sandwich_one_qubit(m, mask, &p_plus);
    let b = sandwich_one_qubit(m, mask, &p_minus);
    a.add(&b)
}

/// `A_q m A_q^dag` for a single-qubit operator `a` acting at the index bit
/// selected by `mask`.
fn sandwich_one_qubit(m: &ComplexMatrix, mask: usize, a: &[[Complex64; 2]; 2]) -> ComplexMatrix {
    let dim = m.dim();
    // Left multiply by A.
    let mut t = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        let b = usize::from(i & mask != 0);
        let i0 = i & !mask;
        let i1 = i | mask;
        for j in 0..dim {
            t.set(i, j, a[b][0] * m.get(i0, j) + a[b][1] * m.get(i1, j));
        }
    }
    // Right multiply by A^dag.
    let mut out = ComplexMatrix::zeros(dim);
    for j in 0..dim {
        let b = usize::from(j & mask != 0);
        let j0 = j & !mask;
        let j1 = j | mask;
        for i in 0..dim {
            out.set(
                i,
                j,
                t.get(i, j0) * a[b][0].conj() + t.get(i, j1) * a[b][1].conj(),
            );
        }
    }
    out
}

/// Average of unread measurements of `target` in `n_samples` bases drawn
/// uniformly on the sphere (z uniform in [-1,1], azimuth uniform in [0,2pi)).
///
/// Deterministic for a fixed `(seed, n_samples)`; converges to
/// `depolarize(rho, {target}, d = 2/3)` at the Monte-Carlo rate.
pub fn random_measurement_average(
    rho: &DensityMatrix,
    target: usize,
    n_samples: usize,
    seed: u64,
) -> Result<DensityMatrix> {
    if target >= rho.n_qubits() {
        return Err(Error::BadSubset(format!(
            "target {target} >= n_qubits {}",
            rho.n_qubits()
        )));
    }
    if n_samples == 0 {
        return Err(Error::OutOfRange("n_samples must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rho.n_qubits();
    let dim = rho.dim();
    let mut acc = ComplexMatrix::zeros(dim);
    for _ in 0..n_samples {
        let z: f64 = rng.gen_range(-1.0..=1.0);
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let r = (1.0 - z * z).max(0.0).sqrt();
        let axis = [r * phi.cos(), r * phi.sin(), z];
        let sample = measured_matrix(rho.matrix(), n, target, axis);
        acc = acc.add(&sample);
    }
    let mean = acc.scale(Complex64::new(1.0 / n_samples as f64, 0.0));
    DensityMatrix::from_matrix(n, mean)
}

/// Measure every qubit in the computational basis with probability `p`
/// (unread): entry `(i, j)` picks up `(1-p)^h` where `h` counts the qubits
/// whose bits differ between `i` and `j`.
pub fn probabilistic_measure(rho: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadProbability(p));
    }
    let keep = 1.0 - p;
    let m = ComplexMatrix::from_fn(rho.dim(), |i, j| {
        rho.matrix().get(i, j) * keep.powi((i ^ j).count_ones() as i32)
    });
    DensityMatrix::from_matrix(rho.n_qubits(), m)
}
