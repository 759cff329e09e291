//! Partial transposition over qubit subsets, NPT/PPT classification across
//! bipartite cuts, and the reduced-state diagnostics (partial trace, Von
//! Neumann entropy, Schmidt rank).
//!
//! A negative eigenvalue of the partial transpose across any cut certifies
//! entanglement. The converse holds for GHZ-diagonal states only; for other
//! states, PPT across all cuts means the criterion is exhausted, not that
//! the state is separable.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix};
use crate::states::{density_of, DensityMatrix, QubitSubset, StateVector};

/// Default eigenvalue tolerance separating genuine negativity from
/// eigensolver noise.
pub const PPT_TOL: f64 = 1e-9;

/// Verdict for one bipartite cut.
#[derive(Clone, Debug, PartialEq)]
pub struct CutReport {
    pub cut: QubitSubset,
    pub min_pt_eigenvalue: f64,
    pub is_ppt: bool,
    pub tolerance: f64,
}

/// Transpose the indices of the qubits in `cut`, leaving the rest alone.
///
/// Entry `(i, j)` moves to the pair of indices with the cut bits of `i` and
/// `j` exchanged. The output is Hermitian whenever the input is.
pub fn partial_transpose(rho: &DensityMatrix, cut: &QubitSubset) -> Result<ComplexMatrix> {
    check_cut(rho, cut)?;
    let mask = cut.index_mask();
    let m = rho.matrix();
    // The index map is an involution, so filling the output in order and
    // gathering from the swapped source index is the same permutation.
    Ok(ComplexMatrix::from_fn(m.dim(), |i, j| {
        m.get((i & !mask) | (j & mask), (j & !mask) | (i & mask))
    }))
}

/// Smallest eigenvalue of the partial transpose across `cut`.
pub fn min_pt_eigenvalue(rho: &DensityMatrix, cut: &QubitSubset) -> Result<f64> {
    let pt = partial_transpose(rho, cut)?;
    Ok(hermitian_eigen(&pt, false)?.min_eigenvalue())
}

/// All bipartite cuts of `n` qubits, one subset per bipartition.
///
/// Canonical form: qubit 0 always sits in the complement, so the
/// `2^(n-1) - 1` subsets of `{1, .., n-1}` cover every bipartition exactly
/// once. Ordered by size, then lexicographically.
pub fn enumerate_cuts(n: usize) -> Result<Vec<QubitSubset>> {
    if !(2..=crate::states::MAX_QUBITS).contains(&n) {
        return Err(Error::SizeOutOfRange {
            what: "n",
            value: n,
            min: 2,
            max: crate::states::MAX_QUBITS,
        });
    }
    let mut cuts: Vec<Vec<usize>> = (1usize..1 << (n - 1))
        .map(|bits| (1..n).filter(|q| bits >> (q - 1) & 1 == 1).collect())
        .collect();
    cuts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    cuts.into_iter()
        .map(|members| QubitSubset::new(n, members))
        .collect()
}

/// Evaluate every cut; the boolean is true iff some cut is NPT beyond `tol`.
///
/// Cuts are evaluated in parallel; the reports come back in canonical cut
/// order regardless.
pub fn is_entangled_npt(rho: &DensityMatrix, tol: f64) -> Result<(Vec<CutReport>, bool)> {
    assert!(tol > 0.0, "tolerance must be positive");
    let cuts = enumerate_cuts(rho.n_qubits())?;
    let reports: Vec<CutReport> = cuts
        .into_par_iter()
        .map(|cut| {
            let min = min_pt_eigenvalue(rho, &cut)?;
            Ok(CutReport {
                cut,
                min_pt_eigenvalue: min,
                is_ppt: min >= -tol,
                tolerance: tol,
            })
        })
        .collect::<Result<_>>()?;
    let any = reports.iter().any(|r| !r.is_ppt);
    Ok((reports, any))
}

/// Trace out every qubit not in `keep`; kept qubits keep their relative order.
pub fn partial_trace(rho: &DensityMatrix, keep: &QubitSubset) -> Result<DensityMatrix> {
    if keep.n_qubits() != rho.n_qubits() {
        return Err(Error::BadSubset(format!(
            "subset is over {} qubits, state has {}",
            keep.n_qubits(),
            rho.n_qubits()
        )));
    }
    if keep.is_empty() {
        return Err(Error::BadSubset("keep set must be nonempty".into()));
    }
    let n = rho.n_qubits();
    let k = keep.len();
    let kept: Vec<usize> = keep.members().to_vec();
    let traced: Vec<usize> = keep.complement().members().to_vec();
    let m = rho.matrix();

    // Expand a reduced index (bits of kept qubits, in order) plus an
    // environment index into a full basis index.
    let place = |sub: usize, qubits: &[usize]| -> usize {
        qubits
            .iter()
            .enumerate()
            .map(|(pos, &q)| {
                let bit = sub >> (qubits.len() - 1 - pos) & 1;
                bit << (n - 1 - q)
            })
            .sum()
    };

    let dim_out = 1usize << k;
    let dim_env = 1usize << traced.len();
    let out = ComplexMatrix::from_fn(dim_out, |a, b| {
        let mut acc = Complex64::new(0.0, 0.0);
        for e in 0..dim_env {
            let env = place(e, &traced);
            acc += m.get(place(a, &kept) | env, place(b, &kept) | env);
        }
        acc
    });
    DensityMatrix::from_matrix(k, out)
}

/// `-sum_k lambda_k log2 lambda_k`, with `0 log 0 = 0`.
///
/// Eigenvalues in `[-1e-10, 0)` are clamped to zero; anything more negative
/// is rejected as an invalid density matrix.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let spec = hermitian_eigen(rho.matrix(), false)?;
    let mut acc = 0.0;
    for &l in &spec.eigenvalues {
        if l < -1e-10 {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: l });
        }
        if l > 0.0 {
            acc -= l * l.log2();
        }
    }
    Ok(acc)
}

/// Number of Schmidt terms of `psi` across `cut`: eigenvalues of the reduced
/// density matrix on the cut exceeding `tol`.
pub fn schmidt_rank(psi: &StateVector, cut: &QubitSubset, tol: f64) -> Result<usize> {
    assert!(tol > 0.0, "tolerance must be positive");
    let rho = density_of(psi);
    check_cut(&rho, cut)?;
    let reduced = partial_trace(&rho, cut)?;
    let spec = hermitian_eigen(reduced.matrix(), false)?;
    Ok(spec.eigenvalues.iter().filter(|&&l| l > tol).count())
}

fn check_cut(rho: &DensityMatrix, cut: &QubitSubset) -> Result<()> {
    if cut.n_qubits() != rho.n_qubits() {
        return Err(Error::BadSubset(format!(
            "cut is over {} qubits, state has {}",
            cut.n_qubits(),
            rho.n_qubits()
        )));
    }
    if !cut.is_proper_cut() {
        return Err(Error::BadSubset(
            "cut must be a nonempty proper subset".into(),
        ));
    }
    Ok(())
}
