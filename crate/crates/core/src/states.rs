//! Multi-qubit pure states, density matrices, and qubit subsets.
//!
//! Bit convention, fixed once for the whole crate: basis index
//! `i = sum_q b_q * 2^(n-1-q)`, so **qubit 0 is the most significant bit**.
//! `|011>` on three qubits is index 3.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Largest register size for dense state construction (dim 4096).
pub const MAX_QUBITS: usize = 12;

const NORM_TOL: f64 = 1e-10;

/// Normalized pure state of `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wrap an amplitude vector; the norm must already be 1 within 1e-10.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::SizeOutOfRange {
                what: "n_qubits",
                value: n_qubits,
                min: 1,
                max: MAX_QUBITS,
            });
        }
        assert_eq!(amplitudes.len(), 1 << n_qubits, "amplitude count");
        let v = Self {
            n_qubits,
            amplitudes,
        };
        let norm = v.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(v)
    }

    /// Wrap and rescale to unit norm; rejects the zero vector.
    pub fn normalized(n_qubits: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-14 {
            return Err(Error::ZeroVector);
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Self::new(n_qubits, amplitudes)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.n_qubits, other.n_qubits);
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest deviation from another state, entrywise.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n_qubits, other.n_qubits);
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Mixed state of `n` qubits: Hermitian, unit trace, PSD matrix of dim `2^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Wrap a matrix after checking dimension, hermiticity, and trace.
    /// Positivity is not eigen-checked here; see [`DensityMatrix::min_eigenvalue`].
    pub fn from_matrix(n_qubits: usize, matrix: ComplexMatrix) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::SizeOutOfRange {
                what: "n_qubits",
                value: n_qubits,
                min: 1,
                max: MAX_QUBITS,
            });
        }
        assert_eq!(matrix.dim(), 1 << n_qubits, "matrix dimension");
        let dev = matrix.hermiticity_error();
        if dev > NORM_TOL {
            return Err(Error::NotHermitian { max_deviation: dev });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
            return Err(Error::OutOfRange(format!(
                "density matrix trace {} + {}i is not 1",
                tr.re, tr.im
            )));
        }
        Ok(Self { n_qubits, matrix })
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let w = 1.0 / dim as f64;
        Self {
            n_qubits,
            matrix: ComplexMatrix::from_fn(dim, |r, c| {
                if r == c {
                    Complex64::new(w, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// trace(rho^2)
    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).trace().re
    }

    /// Smallest eigenvalue; the PSD invariant asks for >= -1e-9.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(crate::linalg::hermitian_eigen(&self.matrix, false)?.min_eigenvalue())
    }
}

/// Set of qubit indices: a channel target or one side of a bipartite cut.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QubitSubset {
    n_qubits: usize,
    members: Vec<usize>,
}

impl QubitSubset {
    pub fn new(n_qubits: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadSubset("duplicate qubit index".into()));
        }
        if members.iter().any(|&q| q >= n_qubits) {
            return Err(Error::BadSubset(format!(
                "qubit index >= n_qubits ({n_qubits})"
            )));
        }
        Ok(Self { n_qubits, members })
    }

    pub fn single(n_qubits: usize, q: usize) -> Result<Self> {
        Self::new(n_qubits, [q])
    }

    pub fn full(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            members: (0..n_qubits).collect(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.members.binary_search(&q).is_ok()
    }

    /// Proper nonempty subset, as required of a bipartite cut.
    pub fn is_proper_cut(&self) -> bool {
        !self.members.is_empty() && self.members.len() < self.n_qubits
    }

    pub fn complement(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            members: (0..self.n_qubits).filter(|q| !self.contains(*q)).collect(),
        }
    }

    /// Bitmask over basis-index bits (qubit q sits at bit `n-1-q`).
    pub fn index_mask(&self) -> usize {
        self.members
            .iter()
            .map(|&q| 1usize << (self.n_qubits - 1 - q))
            .sum()
    }

    /// Compact text form, e.g. `{0,2}`.
    pub fn label(&self) -> String {
        let inner: Vec<String> = self.members.iter().map(|q| q.to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// The named states of the 3- and 4-qubit robustness comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedState {
    G3,
    G4,
    W3,
    W4,
    X4,
    B4,
    S4,
    Singlet,
}

impl NamedState {
    pub const ALL: [NamedState; 8] = [
        NamedState::G3,
        NamedState::G4,
        NamedState::W3,
        NamedState::W4,
        NamedState::X4,
        NamedState::B4,
        NamedState::S4,
        NamedState::Singlet,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NamedState::G3 => "G3",
            NamedState::G4 => "G4",
            NamedState::W3 => "W3",
            NamedState::W4 => "W4",
            NamedState::X4 => "X4",
            NamedState::B4 => "B4",
            NamedState::S4 => "S4",
            NamedState::Singlet => "SINGLET",
        }
    }
}

impl std::str::FromStr for NamedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "G3" => Ok(NamedState::G3),
            "G4" => Ok(NamedState::G4),
            "W3" => Ok(NamedState::W3),
            "W4" => Ok(NamedState::W4),
            "X4" => Ok(NamedState::X4),
            "B4" => Ok(NamedState::B4),
            "S4" => Ok(NamedState::S4),
            "SINGLET" => Ok(NamedState::Singlet),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

/// `(|0...0> + |1...1>)/sqrt(2)` on `n` qubits, `2 <= n <= 12`.
pub fn ghz(n: usize) -> Result<StateVector> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(Error::SizeOutOfRange {
            what: "n",
            value: n,
            min: 2,
            max: MAX_QUBITS,
        });
    }
    let dim = 1usize << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    amps[0] = Complex64::new(h, 0.0);
    amps[dim - 1] = Complex64::new(h, 0.0);
    StateVector::new(n, amps)
}

/// Equal superposition of all `n`-qubit basis states of Hamming weight `k`.
/// `dicke(n, 1)` is the W state.
pub fn dicke(n: usize, k: usize) -> Result<StateVector> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::SizeOutOfRange {
            what: "n",
            value: n,
            min: 1,
            max: MAX_QUBITS,
        });
    }
    if k > n {
        return Err(Error::SizeOutOfRange {
            what: "k",
            value: k,
            min: 0,
            max: n,
        });
    }
    let dim = 1usize << n;
    let count = binomial(n, k);
    let amp = Complex64::new(1.0 / (count as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    for (i, a) in amps.iter_mut().enumerate() {
        if i.count_ones() as usize == k {
            *a = amp;
        }
    }
    StateVector::new(n, amps)
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Construct one of the named comparison states with the printed signs.
pub fn named_state(name: NamedState) -> StateVector {
    let c = Complex64::new(0.5, 0.0);
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match name {
        NamedState::G3 => ghz(3).expect("in range"),
        NamedState::G4 => ghz(4).expect("in range"),
        NamedState::W3 => dicke(3, 1).expect("in range"),
        NamedState::W4 => dicke(4, 1).expect("in range"),
        NamedState::X4 => dicke(4, 2).expect("in range"),
        NamedState::B4 => {
            // (|0000> + |0011> + |1100> - |1111>)/2
            let mut amps = vec![zero; 16];
            amps[0b0000] = c;
            amps[0b0011] = c;
            amps[0b1100] = c;
            amps[0b1111] = -c;
            StateVector::new(4, amps).expect("normalized by construction")
        }
        NamedState::S4 => {
            // (|00>|00> + |01>|01> + |10>|10> + |11>|11>)/2: two shared
            // pairs (0,2) and (1,3).
            let mut amps = vec![zero; 16];
            amps[0b0000] = c;
            amps[0b0101] = c;
            amps[0b1010] = c;
            amps[0b1111] = c;
            StateVector::new(4, amps).expect("normalized by construction")
        }
        NamedState::Singlet => {
            // (|01> - |10>)/sqrt(2)
            let mut amps = vec![zero; 4];
            amps[0b01] = h;
            amps[0b10] = -h;
            StateVector::new(2, amps).expect("normalized by construction")
        }
    }
}

/// `|psi><psi|`
pub fn density_of(psi: &StateVector) -> DensityMatrix {
    let dim = psi.dim();
    let amps = psi.amplitudes();
    let matrix = ComplexMatrix::from_fn(dim, |r, c| amps[r] * amps[c].conj());
    DensityMatrix {
        n_qubits: psi.n_qubits(),
        matrix,
    }
}
