//! End-to-end acceptance checks for the whole pipeline, one test per
//! criterion. Each prints a PASS line with its measured numbers (visible
//! with `cargo test --test acceptance -- --nocapture`).
//!
//! Known-red criteria: the built-in reference table transposes the W4 and
//! X4 rows, and the GHZ threshold sequence is not strictly monotone across
//! parity; criteria 1 and 3 assert the reference statements verbatim and
//! fail on exactly those points. The recomputed truth for both is covered
//! green by the module tests.

use num_complex::Complex64;

use qrobust::channels::{
    depolarize, pauli_weight_scale, probabilistic_measure, random_measurement_average,
    DepolarizationLevel,
};
use qrobust::linalg::hermitian_eigen;
use qrobust::robustness::{dcrit_cut, ghz_scrit, ghz_scrit_limit};
use qrobust::separability::{
    enumerate_cuts, is_entangled_npt, min_pt_eigenvalue, partial_trace, partial_transpose,
    schmidt_rank, von_neumann_entropy,
};
use qrobust::squeezing::{
    expect_j, one_axis_twist, scrit_squeezed, second_moment, twist_scan_min,
    xi_after_depolarization, xi_squared, xi_squared_in_frame,
};
use qrobust::states::{density_of, dicke, ghz, named_state, DensityMatrix, NamedState, QubitSubset};
use qrobust::testing;

fn level(d: f64) -> DepolarizationLevel {
    DepolarizationLevel::new(d).unwrap()
}

fn subset(n: usize, qs: &[usize]) -> QubitSubset {
    QubitSubset::new(n, qs.iter().copied()).unwrap()
}

/// Criterion 1: the critical-depolarization table, recomputed through the
/// numeric pipeline (depolarize -> partial transpose -> eigensolve ->
/// bisection) and compared cell by cell against the reference values.
#[test]
fn acceptance_01_reference_table() {
    // (state, cut class by subset size, reference d_crit)
    let cells: [(NamedState, &[&[usize]], f64); 10] = [
        (NamedState::G3, &[&[1], &[2], &[1, 2]], 0.443),
        (NamedState::W3, &[&[1], &[2], &[1, 2]], 0.425),
        (NamedState::G4, ONE_THREE, 0.423),
        (NamedState::G4, TWO_TWO, 0.489),
        (NamedState::W4, ONE_THREE, 0.423),
        (NamedState::W4, TWO_TWO, 0.423),
        (NamedState::X4, ONE_THREE, 0.416),
        (NamedState::X4, TWO_TWO, 0.453),
        (NamedState::B4, ONE_THREE, 0.468),
        (NamedState::B4, TWO_TWO, 0.450),
    ];
    const ONE_THREE: &[&[usize]] = &[&[1], &[2], &[3], &[1, 2, 3]];
    const TWO_TWO: &[&[usize]] = &[&[1, 2], &[1, 3], &[2, 3]];

    let mut failures = Vec::new();
    for (state, cuts, reference) in cells {
        let psi = named_state(state);
        let n = psi.n_qubits();
        // Class value: the largest d at which any cut of the class is NPT.
        let mut computed = 0.0f64;
        for members in cuts {
            let d = match dcrit_cut(&psi, &subset(n, members), 1e-5) {
                Ok(d) => d,
                Err(qrobust::Error::NotEntangledAtZero) => 0.0,
                Err(e) => panic!("{state:?} cut {members:?}: {e}"),
            };
            computed = computed.max(d);
        }
        let class = if cuts.len() == 3 && n == 4 { "2-2" } else if n == 3 { "1-2" } else { "1-3" };
        if (computed - reference).abs() <= 1e-3 {
            println!("criterion 1: {:?} {class}: computed {computed:.4} matches {reference}", state);
        } else {
            failures.push(format!(
                "{:?} {class}: computed {computed:.4}, reference {reference}",
                state
            ));
        }
    }
    assert!(
        failures.is_empty(),
        "criterion 1: FAIL on {} of 10 cells:\n  {}",
        failures.len(),
        failures.join("\n  ")
    );
    println!("criterion 1 (reference table): PASS");
}

/// Criterion 2: the numeric pipeline reproduces the GHZ closed forms.
#[test]
fn acceptance_02_ghz_closed_form_vs_numerics() {
    for n in [2usize, 4, 6, 8] {
        let closed = 1.0 - 1.0 / (2f64.powf(2.0 - 2.0 / n as f64) + 1.0).sqrt();
        let balanced = subset(n, &(1..=n / 2).collect::<Vec<_>>());
        let numeric = dcrit_cut(&ghz(n).unwrap(), &balanced, 1e-5).unwrap();
        assert!(
            (numeric - closed).abs() <= 1e-3,
            "n = {n}: numeric {numeric} vs closed form {closed}"
        );
        println!("criterion 2: n = {n}: numeric {numeric:.5} vs closed {closed:.5}");
    }
    // n = 3 reduces to the cubic 4 s^3 + s^2 - 1 = 0.
    let cubic = |s: f64| 4.0 * s * s * s + s * s - 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if cubic(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s_root = 0.5 * (lo + hi);
    let numeric = dcrit_cut(&ghz(3).unwrap(), &subset(3, &[1]), 1e-5).unwrap();
    assert!(
        (numeric - (1.0 - s_root)).abs() <= 1e-3,
        "n = 3: numeric {numeric} vs cubic root {}",
        1.0 - s_root
    );
    println!("criterion 2 (GHZ closed form vs numerics): PASS");
}

/// Criterion 3: threshold asymptotics. The strict-monotonicity clause is
/// asserted verbatim over n = 2..12 and is expected to fail at the parity
/// interleavings (s_crit(7) > s_crit(6)); see the module tests for the
/// per-parity statement that does hold.
#[test]
fn acceptance_03_asymptote() {
    let mut failures = Vec::new();

    let values: Vec<f64> = (2..=12).map(|n| ghz_scrit(n).unwrap()).collect();
    let monotone = values.windows(2).all(|w| w[1] < w[0]);
    if monotone {
        println!("criterion 3: strictly decreasing over n = 2..12");
    } else {
        let breaks: Vec<String> = values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] >= w[0])
            .map(|(i, w)| format!("s_crit({}) = {:.5} >= s_crit({}) = {:.5}", i + 3, w[1], i + 2, w[0]))
            .collect();
        failures.push(format!("not strictly decreasing: {}", breaks.join("; ")));
    }

    let limit = ghz_scrit_limit();
    let at_1000 = ghz_scrit(1000).unwrap();
    if (at_1000 - limit).abs() <= 3e-4 {
        println!("criterion 3: ghz_scrit(1000) = {at_1000:.6} within 3e-4 of 1/sqrt(5)");
    } else {
        failures.push(format!("ghz_scrit(1000) = {at_1000} vs limit {limit}"));
    }

    if 1.0 - limit > 0.55 {
        println!("criterion 3: limiting d_crit = {:.5} > 0.55", 1.0 - limit);
    } else {
        failures.push(format!("1 - limit = {} not > 0.55", 1.0 - limit));
    }

    assert!(
        failures.is_empty(),
        "criterion 3: FAIL:\n  {}",
        failures.join("\n  ")
    );
    println!("criterion 3 (asymptote): PASS");
}

/// Criterion 4: the two channel implementations agree entrywise.
#[test]
fn acceptance_04_channel_equivalence() {
    let mut rng = testing::rng(1040);
    let mut worst = 0.0f64;
    for i in 0..10 {
        let rho = testing::random_density_matrix(3, &mut rng);
        let s = 0.05 + 0.09 * i as f64;
        let fast = pauli_weight_scale(&rho, s);
        let oracle = depolarize(&rho, &QubitSubset::full(3), level(1.0 - s)).unwrap();
        worst = worst.max(fast.matrix().max_abs_diff(oracle.matrix()));
    }
    assert!(worst <= 1e-12, "worst deviation {worst}");
    println!("criterion 4 (channel equivalence): PASS (worst entrywise deviation {worst:.2e})");
}

/// Criterion 5: Monte-Carlo random-basis measurement converges to the
/// d = 2/3 depolarizing channel.
#[test]
fn acceptance_05_random_measurement() {
    let n_samples = 100_000usize;
    let bound = 5.0 / (n_samples as f64).sqrt();
    let mut rng = testing::rng(1050);
    let mut worst = 0.0f64;
    for (i, seed) in [11u64, 22, 33].iter().enumerate() {
        let rho = testing::random_density_matrix(2, &mut rng);
        let target = i % 2;
        let mc = random_measurement_average(&rho, target, n_samples, *seed).unwrap();
        let exact = depolarize(&rho, &subset(2, &[target]), level(2.0 / 3.0)).unwrap();
        let dev = mc.matrix().max_abs_diff(exact.matrix());
        assert!(dev < bound, "state {i}: deviation {dev} >= {bound}");
        worst = worst.max(dev);
    }
    println!("criterion 5 (random measurement = d = 2/3 channel): PASS (worst {worst:.2e} < {bound:.2e})");
}

/// Criterion 6: probabilistically measured GHZ states keep an exponentially
/// small negativity for every p < 1 and lose it exactly at p = 1.
#[test]
fn acceptance_06_measured_ghz() {
    for n in 3..=6usize {
        let rho = density_of(&ghz(n).unwrap());
        for p in [0.5, 0.9, 0.99] {
            let measured = probabilistic_measure(&rho, p).unwrap();
            let expected = -(1.0f64 - p).powi(n as i32) / 2.0;
            let (reports, entangled) = is_entangled_npt(&measured, 1e-13).unwrap();
            for r in &reports {
                assert!(
                    (r.min_pt_eigenvalue - expected).abs() <= 1e-10,
                    "n = {n}, p = {p}, cut {}: {} vs {expected}",
                    r.cut.label(),
                    r.min_pt_eigenvalue
                );
            }
            assert!(entangled, "n = {n}, p = {p} must stay NPT");
        }
        let certain = probabilistic_measure(&rho, 1.0).unwrap();
        let (_, entangled) = is_entangled_npt(&certain, 1e-13).unwrap();
        assert!(!entangled, "n = {n}, p = 1 must not be NPT");
    }
    println!("criterion 6 (measured GHZ negativity): PASS");
}

/// Criterion 7: entropy and Schmidt-rank diagnostics across the 2-2 cut.
#[test]
fn acceptance_07_entropy_and_schmidt_rank() {
    let two_two = subset(4, &[2, 3]);

    let x4 = named_state(NamedState::X4);
    let e_x4 = von_neumann_entropy(&partial_trace(&density_of(&x4), &two_two).unwrap()).unwrap();
    assert!((e_x4 - 1.252).abs() <= 1e-3, "X4 entropy {e_x4}");

    let g4 = ghz(4).unwrap();
    let e_g4 = von_neumann_entropy(&partial_trace(&density_of(&g4), &two_two).unwrap()).unwrap();
    assert!((e_g4 - 1.0).abs() <= 1e-6, "G4 entropy {e_g4}");

    assert_eq!(schmidt_rank(&x4, &two_two, 1e-9).unwrap(), 3);
    assert_eq!(schmidt_rank(&g4, &two_two, 1e-9).unwrap(), 2);
    assert_eq!(
        schmidt_rank(&named_state(NamedState::S4), &two_two, 1e-9).unwrap(),
        4
    );
    println!("criterion 7 (entropy/Schmidt diagnostics): PASS (X4 entropy {e_x4:.4}, G4 entropy {e_g4:.6})");
}

/// Criterion 8: squeezing moment transforms, the end-to-end noisy-xi^2
/// identity, and the closed-form bound.
#[test]
#[allow(clippy::approx_constant)] // 0.70711 is the 5-digit reference value
fn acceptance_08_squeezing() {
    // Moment transform on seeded random states, n <= 5.
    let mut rng = testing::rng(1080);
    for n in 2..=5usize {
        let rho = testing::random_density_matrix(n, &mut rng);
        for s in [0.9, 0.6] {
            let noisy = depolarize(
                &rho,
                &QubitSubset::full(n),
                DepolarizationLevel::from_scaling(s).unwrap(),
            )
            .unwrap();
            let z = [0.0, 0.0, 1.0];
            let x = [1.0, 0.0, 0.0];
            let jz_after = expect_j(&noisy, z);
            assert!(
                (jz_after - s * expect_j(&rho, z)).abs() <= 1e-10,
                "n = {n}, s = {s}: <Jz>"
            );
            let jx2_after = second_moment(&noisy, x, x);
            let jx2_expect = (1.0 - s * s) * n as f64 / 4.0 + s * s * second_moment(&rho, x, x);
            assert!(
                (jx2_after - jx2_expect).abs() <= 1e-10,
                "n = {n}, s = {s}: <Jx^2>"
            );
        }
    }
    println!("criterion 8: moment transforms hold to 1e-10 for n <= 5");

    // End-to-end xi_s^2 identity in the fixed pre-noise frame.
    let psi = one_axis_twist(4, 0.25).unwrap();
    let rho = density_of(&psi);
    let report = xi_squared(&rho).unwrap();
    assert!(report.xi_squared < 1.0, "twisted state must be squeezed");
    for s in [0.9, 0.8, 0.75] {
        let noisy = depolarize(
            &rho,
            &QubitSubset::full(4),
            DepolarizationLevel::from_scaling(s).unwrap(),
        )
        .unwrap();
        let measured = xi_squared_in_frame(&noisy, &report.frame).unwrap();
        let predicted = xi_after_depolarization(report.xi_squared, report.zeta, s).unwrap();
        assert!(
            (measured - predicted).abs() <= 1e-9,
            "s = {s}: {measured} vs {predicted}"
        );
    }
    println!(
        "criterion 8: end-to-end xi_s^2 identity holds (xi0^2 = {:.4}, zeta = {:.4})",
        report.xi_squared, report.zeta
    );

    let bound = scrit_squeezed(1.0, 0.0).unwrap();
    assert!((bound - 0.70711).abs() <= 5e-6);
    assert!(1.0 - bound > 0.29);
    println!("criterion 8 (squeezing): PASS (ideal bound s_crit = {bound:.5})");
}

/// Criterion 9: property suites over seeded random inputs.
#[test]
fn acceptance_09_property_suites() {
    let mut rng = testing::rng(1090);

    // Channel outputs stay Hermitian, unit-trace, PSD.
    for i in 0..6 {
        let rho = testing::random_density_matrix(3, &mut rng);
        let d = [0.0, 0.15, 0.4, 0.65, 0.9, 1.0][i];
        let outs = [
            depolarize(&rho, &QubitSubset::full(3), level(d)).unwrap(),
            probabilistic_measure(&rho, d).unwrap(),
            random_measurement_average(&rho, i % 3, 40, i as u64).unwrap(),
        ];
        for out in &outs {
            assert!(out.matrix().hermiticity_error() <= 1e-12);
            assert!((out.matrix().trace().re - 1.0).abs() <= 1e-12);
            assert!(out.min_eigenvalue().unwrap() >= -1e-10);
        }
    }
    println!("criterion 9: channel outputs valid (Hermitian, unit trace, PSD)");

    // Partial transposition is an involution and spectra ignore the side.
    for _ in 0..4 {
        let rho = testing::random_density_matrix(3, &mut rng);
        for cut in enumerate_cuts(3).unwrap() {
            let pt = partial_transpose(&rho, &cut).unwrap();
            let back = partial_transpose(
                &DensityMatrix::from_matrix(3, pt.clone()).unwrap(),
                &cut,
            )
            .unwrap();
            assert_eq!(back.max_abs_diff(rho.matrix()), 0.0);

            let spec_a = hermitian_eigen(&pt, false).unwrap();
            let spec_b = hermitian_eigen(
                &partial_transpose(&rho, &cut.complement()).unwrap(),
                false,
            )
            .unwrap();
            for (a, b) in spec_a.eigenvalues.iter().zip(&spec_b.eigenvalues) {
                assert!((a - b).abs() <= 1e-10);
            }
        }
    }
    println!("criterion 9: PT involution and cut-side spectrum symmetry hold");

    // Composed channels multiply their scaling factors.
    for _ in 0..4 {
        let rho = testing::random_density_matrix(3, &mut rng);
        let (d1, d2) = (rng_f(&mut rng), rng_f(&mut rng));
        let q = QubitSubset::full(3);
        let twice = depolarize(&depolarize(&rho, &q, level(d1)).unwrap(), &q, level(d2)).unwrap();
        let once = depolarize(&rho, &q, level(1.0 - (1.0 - d1) * (1.0 - d2))).unwrap();
        assert!(twice.matrix().max_abs_diff(once.matrix()) <= 1e-12);
    }
    println!("criterion 9 (property suites): PASS");
}

fn rng_f(rng: &mut rand_chacha::ChaCha8Rng) -> f64 {
    use rand::Rng;
    rng.gen_range(0.0..1.0)
}

/// Spin-squeezing scan: deeper minima with more qubits.
#[test]
fn squeezed_minimum_improves_with_size() {
    let (_, best4) = twist_scan_min(4, 200).unwrap();
    let (_, best8) = twist_scan_min(8, 200).unwrap();
    assert!(best8.xi_squared < 1.0);
    assert!(
        best8.xi_squared < best4.xi_squared,
        "n = 8 minimum {} vs n = 4 minimum {}",
        best8.xi_squared,
        best4.xi_squared
    );
    println!(
        "squeezing scan: min xi^2(n=4) = {:.4}, min xi^2(n=8) = {:.4}",
        best4.xi_squared, best8.xi_squared
    );
}

/// The balanced-cut minimum PT eigenvalue of a depolarized GHZ state matches
/// its closed-form block value, and a pure state's amplitudes never matter
/// beyond the two extreme strings.
#[test]
fn depolarized_ghz_block_structure() {
    for n in [3usize, 4, 5, 6] {
        let s = 0.62;
        let rho = density_of(&ghz(n).unwrap());
        let noisy = depolarize(
            &rho,
            &QubitSubset::full(n),
            DepolarizationLevel::from_scaling(s).unwrap(),
        )
        .unwrap();
        let k = n / 2;
        let balanced = subset(n, &(1..=k).collect::<Vec<_>>());
        let min = min_pt_eigenvalue(&noisy, &balanced).unwrap();
        let lam = qrobust::robustness::ghz_lambda(n, k, s).unwrap();
        let expect = lam - s.powi(n as i32) / 2.0;
        assert!((min - expect).abs() <= 1e-10, "n = {n}: {min} vs {expect}");
    }
    println!("GHZ block structure: PASS");
}

/// Purity of every named state is 1 and the W state loses to GHZ at equal n.
#[test]
fn named_state_cross_checks() {
    for name in NamedState::ALL {
        let rho = density_of(&named_state(name));
        assert!((rho.purity() - 1.0).abs() <= 1e-12);
    }
    // The W states are strictly less robust than GHZ on the single-qubit cut.
    let d_w3 = dcrit_cut(&dicke(3, 1).unwrap(), &subset(3, &[1]), 1e-5).unwrap();
    let d_g3 = dcrit_cut(&ghz(3).unwrap(), &subset(3, &[1]), 1e-5).unwrap();
    assert!(d_w3 < d_g3);
    println!("named-state cross checks: PASS");
}

#[allow(dead_code)]
fn complex(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
