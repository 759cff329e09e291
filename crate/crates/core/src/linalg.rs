//! Dense complex matrices, Kronecker products, Hermitian eigendecomposition,
//! and Hermitian-generated unitaries.
//!
//! Everything here is plain `Vec<Complex64>` storage in row-major order.
//! Dimensions stay small (at most a few thousand), so the eigensolver is a
//! cyclic Jacobi sweep: slower than LAPACK but deterministic, dependency-free,
//! and exact about its convergence criterion.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance used by the eigensolver and the evolution builder.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Convergence threshold for the Jacobi sweep, relative to the Frobenius norm.
const JACOBI_REL_TOL: f64 = 1e-12;

/// Iteration cap for the Jacobi sweep.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Build from nested row arrays; panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must be square");
        Self {
            dim,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [Complex64] {
        &mut self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                let row_k = &other.data[k * n..(k + 1) * n];
                let row_out = &mut out.data[i * n..(i + 1) * n];
                for (o, b) in row_out.iter_mut().zip(row_k) {
                    *o += aik * b;
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let n = self.dim;
        (0..n)
            .map(|i| {
                self.data[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .map(|(a, x)| a * x)
                    .sum()
            })
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max entrywise deviation from the adjoint.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                let dev = (self.get(r, c) - self.get(c, r).conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix(dim={})", self.dim)?;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let z = self.get(r, c);
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Result of a Hermitian eigendecomposition.
///
/// Eigenvalues ascending; ties keep the original diagonal order. When
/// requested, `eigenvectors` holds orthonormal eigenvectors as columns,
/// matching the eigenvalue order.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<ComplexMatrix>,
}

impl Spectrum {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let mut out = ComplexMatrix::zeros(n);
    for ia in 0..na {
        for ja in 0..na {
            let f = a.get(ia, ja);
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for ib in 0..nb {
                for jb in 0..nb {
                    out.set(ia * nb + ib, ja * nb + jb, f * b.get(ib, jb));
                }
            }
        }
    }
    out
}

/// Kronecker product of a list of factors, left to right.
pub fn kron_all(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    assert!(!factors.is_empty());
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = kron(&acc, f);
    }
    acc
}

/// Full spectrum of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input must be Hermitian to `1e-10` entrywise. Convergence is reached
/// when the off-diagonal Frobenius mass falls below `1e-12 * ||a||_F`; the
/// sweep count is capped at 100.
pub fn hermitian_eigen(a: &ComplexMatrix, want_vectors: bool) -> Result<Spectrum> {
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }

    let n = a.dim();
    if n == 0 {
        return Ok(Spectrum {
            eigenvalues: vec![],
            eigenvectors: want_vectors.then(|| ComplexMatrix::zeros(0)),
        });
    }

    // One tiled pass checks hermiticity and builds the Hermitian average,
    // so roundoff in the input cannot leak in.
    let (mut m, herm_dev) = hermitian_average(a);
    if herm_dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            max_deviation: herm_dev,
        });
    }
    let mut vecs = want_vectors.then(|| ComplexMatrix::identity(n));

    let norm = m.frobenius_norm();
    let conv = JACOBI_REL_TOL * norm;
    // Skipping pivots below conv/n still guarantees off(A) <= conv at the end.
    let skip = conv / n as f64;
    let skip_sq = skip * skip;

    let mut converged = norm == 0.0 || n == 1;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if converged {
            break;
        }
        if off_diagonal_norm(&m) <= conv {
            converged = true;
            break;
        }

        for p in 0..(n - 1) {
            let row_p = p * n;
            for q in (p + 1)..n {
                let apq = m.data[row_p + q];
                if apq.norm_sqr() <= skip_sq {
                    continue;
                }
                let mag = apq.norm();
                // Phase e^{i theta} of the pivot, then a real Jacobi rotation.
                let phase = apq / mag;
                let alpha = m.get(p, p).re;
                let gamma = m.get(q, q).re;
                let tau = (gamma - alpha) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                rotate(&mut m, p, q, c, s, phase);
                if let Some(v) = vecs.as_mut() {
                    rotate_columns(v, p, q, c, s, phase);
                }
            }
        }
    }

    if !converged && off_diagonal_norm(&m) > conv {
        // The final sweep may still have finished the job; if not, give up.
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    // Ascending sort; ties keep original diagonal order.
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]).then(i.cmp(&j)));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = vecs.map(|v| {
        ComplexMatrix::from_fn(n, |r, c| v.get(r, order[c]))
    });

    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// `( (a + a^dag)/2, max |a - a^dag| )` in one pass, walking 32x32 tile
/// pairs so the transposed accesses stay cache-resident.
fn hermitian_average(a: &ComplexMatrix) -> (ComplexMatrix, f64) {
    const TILE: usize = 32;
    let n = a.dim();
    let mut out = ComplexMatrix::zeros(n);
    let mut dev = 0.0f64;
    let half = Complex64::new(0.5, 0.0);
    let mut r0 = 0;
    while r0 < n {
        let r1 = (r0 + TILE).min(n);
        let mut c0 = r0;
        while c0 < n {
            let c1 = (c0 + TILE).min(n);
            for r in r0..r1 {
                let c_start = if c0 == r0 { r.max(c0) } else { c0 };
                for c in c_start..c1 {
                    let upper = a.get(r, c);
                    let lower = a.get(c, r);
                    dev = dev.max((upper - lower.conj()).norm());
                    let avg = (upper + lower.conj()) * half;
                    out.set(r, c, avg);
                    out.set(c, r, avg.conj());
                }
            }
            c0 = c1;
        }
        r0 = r1;
    }
    (out, dev)
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut off_sq = 0.0;
    for p in 0..n {
        let row = &m.data[p * n..(p + 1) * n];
        for v in &row[p + 1..] {
            off_sq += 2.0 * v.norm_sqr();
        }
    }
    off_sq.sqrt()
}

/// Apply the unitary similarity G^dag A G for the pivot (p, q), p < q.
///
/// G is the identity except G[p][p]=c, G[p][q]=-s, G[q][p]=s*conj(phase),
/// G[q][q]=c*conj(phase), with c,s real and phase = a_pq/|a_pq|.
fn rotate(m: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let n = m.dim();
    let es = phase * s;
    let ecc = phase * c;
    // Rows: row_p' = c*row_p + (s*e)*row_q ; row_q' = -s*row_p + (c*e)*row_q.
    {
        let (head, tail) = m.data.split_at_mut(q * n);
        let row_p = &mut head[p * n..p * n + n];
        let row_q = &mut tail[..n];
        for (a, b) in row_p.iter_mut().zip(row_q.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = x * c + y * es;
            *b = x * (-s) + y * ecc;
        }
    }
    // Columns: col_p' = c*col_p + (s*ec)*col_q ; col_q' = -s*col_p + (c*ec)*col_q.
    let ecs = phase.conj() * s;
    let eccc = phase.conj() * c;
    let mut ip = p;
    let mut iq = q;
    for _ in 0..n {
        let x = m.data[ip];
        let y = m.data[iq];
        m.data[ip] = x * c + y * ecs;
        m.data[iq] = x * (-s) + y * eccc;
        ip += n;
        iq += n;
    }
    // The pivot is annihilated by construction; pin it and keep the
    // diagonal exactly real to stop roundoff drift.
    m.set(p, q, Complex64::new(0.0, 0.0));
    m.set(q, p, Complex64::new(0.0, 0.0));
    let dp = m.get(p, p);
    let dq = m.get(q, q);
    m.set(p, p, Complex64::new(dp.re, 0.0));
    m.set(q, q, Complex64::new(dq.re, 0.0));
}

/// Accumulate V <- V*G on the eigenvector matrix.
fn rotate_columns(v: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let n = v.dim();
    let ecs = phase.conj() * s;
    let eccc = phase.conj() * c;
    let mut ip = p;
    let mut iq = q;
    for _ in 0..n {
        let x = v.data[ip];
        let y = v.data[iq];
        v.data[ip] = x * c + y * ecs;
        v.data[iq] = x * (-s) + y * eccc;
        ip += n;
        iq += n;
    }
}

/// Unitary `U = exp(-i * theta * h)` for Hermitian `h`, built from the
/// spectral decomposition: `U = sum_k e^{-i theta lambda_k} |v_k><v_k|`.
pub fn hermitian_evolution(h: &ComplexMatrix, theta: f64) -> Result<ComplexMatrix> {
    let spec = hermitian_eigen(h, true)?;
    Ok(evolution_from_spectrum(&spec, theta))
}

/// Same as [`hermitian_evolution`] but reusing an existing decomposition,
/// so a grid of `theta` values costs one eigensolve.
pub fn evolution_from_spectrum(spec: &Spectrum, theta: f64) -> ComplexMatrix {
    let v = spec
        .eigenvectors
        .as_ref()
        .expect("spectrum must carry eigenvectors");
    let n = v.dim();
    // U = V * diag(phases) * V^dag
    let mut u = ComplexMatrix::zeros(n);
    for k in 0..n {
        let ph = Complex64::from_polar(1.0, -theta * spec.eigenvalues[k]);
        for i in 0..n {
            let vik = v.get(i, k) * ph;
            if vik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                let add = vik * v.get(j, k).conj();
                let cur = u.get(i, j);
                u.set(i, j, cur + add);
            }
        }
    }
    u
}

/// Apply `exp(-i theta h)` to a vector using a precomputed decomposition.
pub fn evolve_vector(spec: &Spectrum, theta: f64, v0: &[Complex64]) -> Vec<Complex64> {
    let vm = spec
        .eigenvectors
        .as_ref()
        .expect("spectrum must carry eigenvectors");
    let n = vm.dim();
    assert_eq!(v0.len(), n);
    // w = V^dag v0, scale by phases, back to V w.
    let w: Vec<Complex64> = (0..n)
        .map(|k| {
            let acc: Complex64 = v0
                .iter()
                .enumerate()
                .map(|(i, x)| vm.get(i, k).conj() * x)
                .sum();
            acc * Complex64::from_polar(1.0, -theta * spec.eigenvalues[k])
        })
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (k, &wk) in w.iter().enumerate() {
        if wk.norm_sqr() == 0.0 {
            continue;
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o += vm.get(i, k) * wk;
        }
    }
    out
}

/// The single-qubit operators everything else is assembled from.
pub mod qubit_ops {
    use super::ComplexMatrix;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    /// |0><0|
    pub fn p0() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
    }

    /// |1><1|
    pub fn p1() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]])
    }

    /// |0><1|
    pub fn sigma_plus() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
    }

    /// |1><0|
    pub fn sigma_minus() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
    }

    pub fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
    }

    pub fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]])
    }

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_identity_gives_identity() {
        let i2 = ComplexMatrix::identity(2);
        let i4 = kron(&i2, &i2);
        assert_eq!(i4.max_abs_diff(&ComplexMatrix::identity(4)), 0.0);
    }

    #[test]
    fn kron_sigma_z_diagonal() {
        let zz = kron(&qubit_ops::sigma_z(), &qubit_ops::sigma_z());
        let expect = [1.0, -1.0, -1.0, 1.0];
        for (i, want) in expect.iter().enumerate() {
            assert_eq!(zz.get(i, i), c(*want, 0.0));
        }
        assert_eq!(zz.frobenius_norm(), 2.0);
    }

    #[test]
    fn kron_sigma_plus_three_factors() {
        let sp = qubit_ops::sigma_plus();
        let sp3 = kron(&kron(&sp, &sp), &sp);
        for r in 0..8 {
            for col in 0..8 {
                let want = if r == 0 && col == 7 { c(1.0, 0.0) } else { c(0.0, 0.0) };
                assert_eq!(sp3.get(r, col), want);
            }
        }
    }

    #[test]
    fn kron_associativity_on_integer_matrices() {
        let a = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(3.0, 0.0), c(4.0, 0.0)]]);
        let b = ComplexMatrix::from_rows(&[vec![c(0.0, 1.0), c(5.0, 0.0)], vec![c(-1.0, 0.0), c(2.0, -3.0)]]);
        let d = ComplexMatrix::from_rows(&[vec![c(7.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 1.0), c(-2.0, 0.0)]]);
        let left = kron(&kron(&a, &b), &d);
        let right = kron(&a, &kron(&b, &d));
        assert_eq!(left.max_abs_diff(&right), 0.0);
    }

    #[test]
    fn kron_trace_multiplicative() {
        let a = ComplexMatrix::from_fn(3, |r, col| c((r * 3 + col) as f64, 0.3 * r as f64));
        let b = ComplexMatrix::from_fn(2, |r, col| c(0.5 * col as f64 - r as f64, 0.1));
        let lhs = kron(&a, &b).trace();
        let rhs = a.trace() * b.trace();
        assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
    }

    #[test]
    fn eigen_identity() {
        let spec = hermitian_eigen(&ComplexMatrix::identity(2), false).unwrap();
        assert_eq!(spec.eigenvalues, vec![1.0, 1.0]);
    }

    #[test]
    fn eigen_sigma_x() {
        let spec = hermitian_eigen(&qubit_ops::sigma_x(), true).unwrap();
        assert!((spec.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((spec.eigenvalues[1] - 1.0).abs() < 1e-12);
        // A v = lambda v
        let v = spec.eigenvectors.as_ref().unwrap();
        let sx = qubit_ops::sigma_x();
        for k in 0..2 {
            let col: Vec<Complex64> = (0..2).map(|i| v.get(i, k)).collect();
            let av = sx.mul_vec(&col);
            for i in 0..2 {
                assert!((av[i] - col[i] * spec.eigenvalues[k]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]);
        assert!(matches!(
            hermitian_eigen(&m, false),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn eigen_rejects_non_finite() {
        let mut m = ComplexMatrix::identity(2);
        m.set(0, 0, c(f64::NAN, 0.0));
        assert!(matches!(hermitian_eigen(&m, false), Err(Error::NonFinite)));
    }

    /// Singlet partial transpose has the known spectrum [-1/2, 1/2, 1/2, 1/2].
    #[test]
    fn eigen_singlet_partial_transpose() {
        // PT over the first qubit of |01>-|10> (amplitudes 1/sqrt2, -1/sqrt2):
        // rho = 1/2 (|01><01| - |01><10| - |10><01| + |10><10|); swapping the
        // first-qubit bits between row and column moves the coherences to
        // (|00>,|11>).
        let h = 0.5;
        let mut pt = ComplexMatrix::zeros(4);
        pt.set(1, 1, c(h, 0.0));
        pt.set(2, 2, c(h, 0.0));
        pt.set(0, 3, c(-h, 0.0));
        pt.set(3, 0, c(-h, 0.0));
        let spec = hermitian_eigen(&pt, false).unwrap();
        let want = [-0.5, 0.5, 0.5, 0.5];
        for (got, want) in spec.eigenvalues.iter().zip(want) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn eigen_reconstruction_random_hermitian() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for &dim in &[2usize, 5, 16, 32] {
            let g = ComplexMatrix::from_fn(dim, |_, _| {
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let herm = g.add(&g.adjoint()).scale(c(0.5, 0.0));
            let spec = hermitian_eigen(&herm, true).unwrap();
            let v = spec.eigenvectors.as_ref().unwrap();

            // Columns orthonormal.
            for a in 0..dim {
                for b in 0..dim {
                    let mut dot = c(0.0, 0.0);
                    for i in 0..dim {
                        dot += v.get(i, a).conj() * v.get(i, b);
                    }
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((dot - c(want, 0.0)).norm() < 1e-10);
                }
            }

            // Sum of eigenvalues matches the trace.
            let tr = herm.trace().re;
            let sum: f64 = spec.eigenvalues.iter().sum();
            assert!((tr - sum).abs() <= 1e-9 * dim as f64 * tr.abs().max(1.0));

            // Reconstruction.
            let mut rec = ComplexMatrix::zeros(dim);
            for k in 0..dim {
                for i in 0..dim {
                    for j in 0..dim {
                        let add = v.get(i, k) * v.get(j, k).conj() * spec.eigenvalues[k];
                        let cur = rec.get(i, j);
                        rec.set(i, j, cur + add);
                    }
                }
            }
            assert!(rec.max_abs_diff(&herm) <= 1e-8, "dim {dim}");
        }
    }

    #[test]
    fn eigen_sorted_ascending() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let g = ComplexMatrix::from_fn(12, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let herm = g.add(&g.adjoint());
        let spec = hermitian_eigen(&herm, false).unwrap();
        for w in spec.eigenvalues.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn evolution_theta_zero_is_identity() {
        let u = hermitian_evolution(&qubit_ops::sigma_y(), 0.0).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn evolution_sigma_z_pi() {
        // exp(-i pi sigma_z) = diag(e^{-i pi}, e^{i pi}) = diag(-1, -1).
        let u = hermitian_evolution(&qubit_ops::sigma_z(), std::f64::consts::PI).unwrap();
        assert!((u.get(0, 0) - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((u.get(1, 1) - c(-1.0, 0.0)).norm() < 1e-12);
        assert!(u.get(0, 1).norm() < 1e-12);
    }

    #[test]
    fn evolution_matches_taylor_series() {
        // H = Jx^2 for n = 2: Jx = (sigma_x (x) 1 + 1 (x) sigma_x)/2.
        let sx = qubit_ops::sigma_x();
        let id = qubit_ops::identity();
        let jx = kron(&sx, &id).add(&kron(&id, &sx)).scale(c(0.5, 0.0));
        let h = jx.matmul(&jx);
        let theta = 0.3;

        let u = hermitian_evolution(&h, theta).unwrap();

        // 12-term Taylor series of exp(-i theta H).
        let mut taylor = ComplexMatrix::identity(4);
        let mut term = ComplexMatrix::identity(4);
        for k in 1..12 {
            term = term.matmul(&h).scale(c(0.0, -theta) / c(k as f64, 0.0));
            taylor = taylor.add(&term);
        }
        assert!(u.max_abs_diff(&taylor) < 1e-9);
    }

    #[test]
    fn evolution_unitary_and_commutes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = ComplexMatrix::from_fn(8, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let h = g.add(&g.adjoint()).scale(c(0.5, 0.0));
        let u = hermitian_evolution(&h, 0.7).unwrap();

        let udu = u.adjoint().matmul(&u);
        assert!(udu.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-9);

        let comm = u.matmul(&h).sub(&h.matmul(&u));
        assert!(comm.max_abs() < 1e-9);
    }

    #[test]
    fn evolve_vector_matches_full_unitary() {
        let sx = qubit_ops::sigma_x();
        let id = qubit_ops::identity();
        let jx = kron(&sx, &id).add(&kron(&id, &sx)).scale(c(0.5, 0.0));
        let h = jx.matmul(&jx);
        let spec = hermitian_eigen(&h, true).unwrap();
        let v0 = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let direct = evolve_vector(&spec, 0.4, &v0);
        let u = evolution_from_spectrum(&spec, 0.4);
        let via_u = u.mul_vec(&v0);
        for (a, b) in direct.iter().zip(&via_u) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
