//! Spin squeezing: the criterion `xi^2 < 1`, one-axis-twisting generation of
//! squeezed states, and the closed-form behaviour of `xi^2` under local
//! depolarization.
//!
//! `xi^2 = n <J_x^2> / (<J_y>^2 + <J_z>^2)` in a frame with z along the mean
//! spin and x the transverse direction of least variance. Squeezing
//! (`xi^2 < 1`) is a sufficient condition for entanglement; this module only
//! reports the parameter and the noise bound derived from it, never a
//! separability verdict.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{evolve_vector, hermitian_eigen, ComplexMatrix, Spectrum};
use crate::states::{DensityMatrix, StateVector};

/// Cap for squeezing-related dense evolutions (dim 1024).
pub const MAX_SQUEEZE_QUBITS: usize = 10;

type Vec3 = [f64; 3];

/// Orthonormal right-handed frame, rows x, y, z.
pub type Frame = [Vec3; 3];

/// Dense collective angular momentum operators `J_a = 1/2 sum_i sigma_a^(i)`.
#[derive(Clone, Debug)]
pub struct CollectiveOperators {
    pub n: usize,
    pub jx: ComplexMatrix,
    pub jy: ComplexMatrix,
    pub jz: ComplexMatrix,
}

impl CollectiveOperators {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self {
            n,
            jx: collective_operator(n, [1.0, 0.0, 0.0])?,
            jy: collective_operator(n, [0.0, 1.0, 0.0])?,
            jz: collective_operator(n, [0.0, 0.0, 1.0])?,
        })
    }
}

/// Squeezing parameter with the frame it was measured in.
#[derive(Clone, Debug)]
pub struct SqueezingReport {
    pub xi_squared: f64,
    /// Mean-spin polarization: `|<J>| = zeta * n/2`.
    pub zeta: f64,
    pub frame: Frame,
}

/// Dense matrix of `axis . J` for a unit `axis`.
pub fn collective_operator(n: usize, axis: Vec3) -> Result<ComplexMatrix> {
    if n == 0 || n > MAX_SQUEEZE_QUBITS {
        return Err(Error::SizeOutOfRange {
            what: "n",
            value: n,
            min: 1,
            max: MAX_SQUEEZE_QUBITS,
        });
    }
    check_axis(axis)?;
    let [x, y, z] = axis;
    let dim = 1usize << n;
    let mut m = ComplexMatrix::zeros(dim);
    for j in 0..dim {
        let mut diag = 0.0;
        for q in 0..n {
            let mask = 1usize << (n - 1 - q);
            let bit = j & mask != 0;
            diag += if bit { -z } else { z };
            // <j^mask| axis.sigma |j> = x + iy on |0>, x - iy on |1>.
            let flip = if bit {
                Complex64::new(x, -y)
            } else {
                Complex64::new(x, y)
            };
            let cur = m.get(j ^ mask, j);
            m.set(j ^ mask, j, cur + flip * 0.5);
        }
        m.set(j, j, Complex64::new(diag * 0.5, 0.0));
    }
    Ok(m)
}

fn check_axis(axis: Vec3) -> Result<()> {
    let norm = dot(axis, axis).sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::BadAxis);
    }
    Ok(())
}

/// `<J_axis>` without building the dense operator.
pub fn expect_j(rho: &DensityMatrix, axis: Vec3) -> f64 {
    let n = rho.n_qubits();
    let m = rho.matrix();
    let [x, y, z] = axis;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..m.dim() {
        for q in 0..n {
            let mask = 1usize << (n - 1 - q);
            let bit = j & mask != 0;
            let udiag = if bit { -z } else { z };
            // u_{j, j^mask} couples to rho_{j^mask, j}.
            let uflip = if bit {
                Complex64::new(x, y)
            } else {
                Complex64::new(x, -y)
            };
            acc += m.get(j, j) * udiag + m.get(j ^ mask, j).conj() * uflip;
        }
    }
    0.5 * acc.re
}

/// `rho * J_axis`, applying the one-qubit terms sparsely, row by row.
fn mul_j_right(m: &ComplexMatrix, n: usize, axis: Vec3) -> ComplexMatrix {
    let [x, y, z] = axis;
    let dim = m.dim();
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        let src = m.row(i);
        let dst = out.row_mut(i);
        for q in 0..n {
            let mask = 1usize << (n - 1 - q);
            for (j, d) in dst.iter_mut().enumerate() {
                let bit = j & mask != 0;
                let udiag = Complex64::new(if bit { -z } else { z }, 0.0);
                // u_{j^mask, j}: entering column j from the flipped row.
                let uflip = if bit {
                    Complex64::new(x, -y)
                } else {
                    Complex64::new(x, y)
                };
                let add = src[j] * udiag + src[j ^ mask] * uflip;
                *d += add * 0.5;
            }
        }
    }
    out
}

/// `tr(t * J_axis)` for an arbitrary matrix `t`.
fn trace_with_j(t: &ComplexMatrix, n: usize, axis: Vec3) -> Complex64 {
    let [x, y, z] = axis;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..t.dim() {
        for q in 0..n {
            let mask = 1usize << (n - 1 - q);
            let bit = j & mask != 0;
            let udiag = Complex64::new(if bit { -z } else { z }, 0.0);
            let uflip = if bit {
                Complex64::new(x, -y)
            } else {
                Complex64::new(x, y)
            };
            acc += t.get(j, j) * udiag + t.get(j, j ^ mask) * uflip;
        }
    }
    acc * 0.5
}

/// Symmetrized second moment `1/2 <J_a J_b + J_b J_a>`.
pub fn second_moment(rho: &DensityMatrix, a: Vec3, b: Vec3) -> f64 {
    let n = rho.n_qubits();
    let t = mul_j_right(rho.matrix(), n, a);
    // tr(rho J_a J_b) has <J_b J_a> as its conjugate, so the real part is
    // already the symmetrized moment.
    trace_with_j(&t, n, b).re
}

/// Squeezing parameter in the optimal frame: z along the mean spin, x the
/// transverse direction minimizing `<J_x^2>`.
pub fn xi_squared(rho: &DensityMatrix) -> Result<SqueezingReport> {
    let jvec = [
        expect_j(rho, [1.0, 0.0, 0.0]),
        expect_j(rho, [0.0, 1.0, 0.0]),
        expect_j(rho, [0.0, 0.0, 1.0]),
    ];
    let jlen = dot(jvec, jvec).sqrt();
    if jlen <= 1e-6 {
        return Err(Error::MeanSpinVanishes);
    }
    let z = scale(jvec, 1.0 / jlen);
    let helper = if z[2].abs() < 0.9 {
        [0.0, 0.0, 1.0]
    } else {
        [1.0, 0.0, 0.0]
    };
    let e1 = normalize(cross(helper, z));
    let e2 = cross(z, e1);

    let m11 = second_moment(rho, e1, e1);
    let m22 = second_moment(rho, e2, e2);
    let m12 = second_moment(rho, e1, e2);

    let mean = 0.5 * (m11 + m22);
    let rad = (0.25 * (m11 - m22) * (m11 - m22) + m12 * m12).sqrt();
    let min_var = mean - rad;

    // Eigenvector of [[m11, m12], [m12, m22]] for the smaller eigenvalue.
    let (c1, c2) = if rad < 1e-14 {
        (1.0, 0.0)
    } else if (min_var - m11).abs() > (min_var - m22).abs() {
        (m12, min_var - m11)
    } else {
        (min_var - m22, m12)
    };
    let clen = (c1 * c1 + c2 * c2).sqrt();
    let x = normalize([
        c1 / clen * e1[0] + c2 / clen * e2[0],
        c1 / clen * e1[1] + c2 / clen * e2[1],
        c1 / clen * e1[2] + c2 / clen * e2[2],
    ]);
    let y = cross(z, x);

    let n = rho.n_qubits() as f64;
    Ok(SqueezingReport {
        xi_squared: n * min_var / (jlen * jlen),
        zeta: 2.0 * jlen / n,
        frame: [x, y, z],
    })
}

/// The raw criterion in a caller-fixed frame:
/// `n <J_x^2> / (<J_y>^2 + <J_z>^2)`.
pub fn xi_squared_in_frame(rho: &DensityMatrix, frame: &Frame) -> Result<f64> {
    for axis in frame {
        check_axis(*axis)?;
    }
    let [x, y, z] = frame;
    let jy = expect_j(rho, *y);
    let jz = expect_j(rho, *z);
    let denom = jy * jy + jz * jz;
    if denom <= 1e-12 {
        return Err(Error::MeanSpinVanishes);
    }
    let jx2 = second_moment(rho, *x, *x);
    Ok(rho.n_qubits() as f64 * jx2 / denom)
}

/// Precomputed `J_x^2` eigendecomposition: one eigensolve serves a whole
/// grid of twisting angles.
pub struct TwistEvolution {
    n: usize,
    spectrum: Spectrum,
}

impl TwistEvolution {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_SQUEEZE_QUBITS {
            return Err(Error::SizeOutOfRange {
                what: "n",
                value: n,
                min: 1,
                max: MAX_SQUEEZE_QUBITS,
            });
        }
        let jx2 = jx_squared(n);
        let spectrum = hermitian_eigen(&jx2, true)?;
        Ok(Self { n, spectrum })
    }

    /// `exp(-i mu J_x^2) |0...0>`
    pub fn state_at(&self, mu: f64) -> StateVector {
        let dim = 1usize << self.n;
        let mut start = vec![Complex64::new(0.0, 0.0); dim];
        start[0] = Complex64::new(1.0, 0.0);
        let amps = evolve_vector(&self.spectrum, mu, &start);
        StateVector::normalized(self.n, amps).expect("unitary evolution keeps the norm")
    }
}

/// `J_x^2` assembled directly: `1/4 (n I + 2 sum_{q<r} X_q X_r)`.
fn jx_squared(n: usize) -> ComplexMatrix {
    let dim = 1usize << n;
    let mut m = ComplexMatrix::zeros(dim);
    let quarter_n = Complex64::new(n as f64 / 4.0, 0.0);
    let half = Complex64::new(0.5, 0.0);
    for i in 0..dim {
        m.set(i, i, quarter_n);
        for q in 0..n {
            for r in (q + 1)..n {
                let mask = (1usize << (n - 1 - q)) | (1usize << (n - 1 - r));
                let cur = m.get(i ^ mask, i);
                m.set(i ^ mask, i, cur + half);
            }
        }
    }
    m
}

/// One-axis twisting: evolve the coherent state `|0...0>` under `J_x^2` for
/// an angle `mu` (the role of `chi t`).
pub fn one_axis_twist(n: usize, mu: f64) -> Result<StateVector> {
    Ok(TwistEvolution::new(n)?.state_at(mu))
}

/// Scan `mu` over `points` values in `(0, pi/2]` and return the grid point
/// with the smallest squeezing parameter.
pub fn twist_scan_min(n: usize, points: usize) -> Result<(f64, SqueezingReport)> {
    assert!(points >= 1);
    let evo = TwistEvolution::new(n)?;
    let mut best: Option<(f64, SqueezingReport)> = None;
    for j in 1..=points {
        let mu = j as f64 * std::f64::consts::FRAC_PI_2 / points as f64;
        let rho = crate::states::density_of(&evo.state_at(mu));
        let report = match xi_squared(&rho) {
            Ok(r) => r,
            // Over-twisted states can lose their mean spin; skip those.
            Err(Error::MeanSpinVanishes) => continue,
            Err(e) => return Err(e),
        };
        if best
            .as_ref()
            .map(|(_, b)| report.xi_squared < b.xi_squared)
            .unwrap_or(true)
        {
            best = Some((mu, report));
        }
    }
    best.ok_or(Error::MeanSpinVanishes)
}

/// Squeezing parameter after local depolarization with scaling factor `s`:
/// `(1 - s^2) / (zeta^2 s^2) + xi0^2`.
pub fn xi_after_depolarization(xi0_sq: f64, zeta: f64, s: f64) -> Result<f64> {
    if xi0_sq.is_nan() || xi0_sq < 0.0 {
        return Err(Error::OutOfRange(format!("xi0^2 = {xi0_sq} must be >= 0")));
    }
    if !(zeta > 0.0 && zeta <= 1.0) {
        return Err(Error::OutOfRange(format!("zeta = {zeta} outside (0, 1]")));
    }
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::OutOfRange(format!("s = {s} outside (0, 1]")));
    }
    Ok((1.0 - s * s) / (zeta * zeta * s * s) + xi0_sq)
}

/// Scaling factor above which a state squeezed to `(zeta, xi0^2)` is still
/// certified entangled: `1 / sqrt(1 + zeta^2 (1 - xi0^2))`.
pub fn scrit_squeezed(zeta: f64, xi0_sq: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&zeta) {
        return Err(Error::OutOfRange(format!("zeta = {zeta} outside [0, 1]")));
    }
    if !(0.0..=1.0).contains(&xi0_sq) {
        return Err(Error::OutOfRange(format!(
            "xi0^2 = {xi0_sq} outside [0, 1]"
        )));
    }
    Ok(1.0 / (1.0 + zeta * zeta * (1.0 - xi0_sq)).sqrt())
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn scale(a: Vec3, f: f64) -> Vec3 {
    [a[0] * f, a[1] * f, a[2] * f]
}

fn normalize(a: Vec3) -> Vec3 {
    scale(a, 1.0 / dot(a, a).sqrt())
}
