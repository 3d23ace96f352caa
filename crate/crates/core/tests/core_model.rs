//! Oracle and property tests for the hyperfine kernel.

use ensemble_nmr::constants::{HBAR, K_B};
use ensemble_nmr::model::*;
use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use proptest::prelude::*;

/// H/A in the product basis |M, m⟩ = (+½,+½), (+½,−½), (−½,+½), (−½,−½).
fn hamiltonian_over_a(s: &DonorSpecies, b: f64) -> Matrix4<f64> {
    let a = s.hyperfine_energy();
    let ze = s.gamma_e * HBAR * b / a;
    let zi = s.gamma_i * HBAR * b / a;
    let spins = [(0.5, 0.5), (0.5, -0.5), (-0.5, 0.5), (-0.5, -0.5)];
    let mut h = Matrix4::zeros();
    for (k, &(mm, m)) in spins.iter().enumerate() {
        h[(k, k)] = ze * mm - zi * m + mm * m;
    }
    h[(1, 2)] = 0.5;
    h[(2, 1)] = 0.5;
    h
}

fn sorted_levels_over_a(s: &DonorSpecies, b: f64) -> Vec<f64> {
    let a = s.hyperfine_energy();
    breit_rabi_levels(s, &Environment::new(b, 1.0))
        .iter()
        .map(|l| l.energy / a)
        .collect()
}

fn numeric_levels(h: Matrix4<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Closed-form levels against dense diagonalization. Errors are measured
    /// against the spectral radius, since E(1,−1) crosses zero near X = ½.
    #[test]
    fn breit_rabi_matches_diagonalization(log_b in -3.0f64..1.0) {
        let s = DonorSpecies::p31();
        let b = 10f64.powf(log_b);
        let h = hamiltonian_over_a(&s, b);
        let exact = sorted_levels_over_a(&s, b);
        let numeric = numeric_levels(h);
        let scale = exact.iter().fold(1.0f64, |m, e| m.max(e.abs()));
        for (e, n) in exact.iter().zip(&numeric) {
            prop_assert!((e - n).abs() / scale < 1e-10, "B = {b}: {e} vs {n}");
        }
    }

    #[test]
    fn level_sum_equals_trace(log_b in -3.0f64..1.0) {
        let s = DonorSpecies::p31();
        let b = 10f64.powf(log_b);
        let exact = sorted_levels_over_a(&s, b);
        let scale = exact.iter().fold(1.0f64, |m, e| m.max(e.abs()));
        let sum: f64 = exact.iter().sum();
        prop_assert!((sum - hamiltonian_over_a(&s, b).trace()).abs() / scale < 1e-12);
    }

    #[test]
    fn mixed_pair_is_orthonormal_eigenbasis(log_b in -3.0f64..1.0) {
        let s = DonorSpecies::p31();
        let b = 10f64.powf(log_b);
        let env = Environment::new(b, 1.0);
        let alpha = mixing_alpha(field_parameter(&s, &env));
        prop_assert_eq!((1.0 - alpha) + alpha, 1.0);
        // |1,0⟩ = √(1−α)|½,−½⟩ + √α|−½,½⟩, |0,0⟩ = √(1−α)|−½,½⟩ − √α|½,−½⟩.
        let v10 = [(1.0 - alpha).sqrt(), alpha.sqrt()];
        let v00 = [-alpha.sqrt(), (1.0 - alpha).sqrt()];
        prop_assert!((v10[0] * v00[0] + v10[1] * v00[1]).abs() < 1e-14);
        let h = hamiltonian_over_a(&s, b);
        let block = Matrix2::new(h[(1, 1)], h[(1, 2)], h[(2, 1)], h[(2, 2)]);
        let a = s.hyperfine_energy();
        let lv = breit_rabi_levels(&s, &env);
        let energy = |f, m| lv.iter().find(|l| l.f == f && l.m_f == m).unwrap().energy / a;
        for (v, e) in [(v10, energy(1, 0)), (v00, energy(0, 0))] {
            let hv = block * nalgebra::Vector2::new(v[0], v[1]);
            let scale = e.abs().max(1.0);
            prop_assert!((hv[0] - e * v[0]).abs() / scale < 1e-12);
            prop_assert!((hv[1] - e * v[1]).abs() / scale < 1e-12);
        }
    }

    #[test]
    fn epsilon_strictly_decreasing_from_two(ratio in 1e-4f64..0.99, l in 2u32..60) {
        let omega = ratio * K_B / HBAR;
        let e1 = epsilon_pseudo_pure(l, omega, 1.0).unwrap();
        let e2 = epsilon_pseudo_pure(l + 1, omega, 1.0).unwrap();
        prop_assert!(e2 < e1);
        prop_assert!(e1 > 0.0 && e1 <= 1.0);
    }

    #[test]
    fn epsilon_tends_to_one_when_cold(l in 1u32..10_000) {
        let omega = 2.0 * std::f64::consts::PI * 75e6;
        let e = epsilon_pseudo_pure(l, omega, 1e-6).unwrap();
        prop_assert!((e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gain_exact_and_approximate_agree_in_window(x in 10.0f64..160.0) {
        let s = DonorSpecies::p31();
        let b = x * s.hyperfine_a / (s.gamma_e + s.gamma_i);
        let env = Environment { rf_amp: 1.0, ..Environment::new(b, 1.0) };
        let exact = gain_ratio(&s, &env);
        let approx = gain_factor_approx(&s, &env);
        prop_assert!((exact / approx - 1.0).abs() < 0.05);
    }
}

#[test]
fn epsilon_equal_for_one_and_two_qubits() {
    let omega = 0.3 * K_B / HBAR;
    let e1 = epsilon_pseudo_pure(1, omega, 1.0).unwrap();
    let e2 = epsilon_pseudo_pure(2, omega, 1.0).unwrap();
    assert!((e1 - e2).abs() < 1e-15);
}

#[test]
fn ground_state_magnetization_matches_eigenvector() {
    let s = DonorSpecies::p31();
    let env = Environment::new(1.0, 1.0);
    let eig = SymmetricEigen::new(hamiltonian_over_a(&s, 1.0));
    let k = eig.eigenvalues.imin();
    let v = eig.eigenvectors.column(k);
    let iz = [0.5, -0.5, 0.5, -0.5];
    let expect: f64 = (0..4).map(|i| v[i] * v[i] * iz[i]).sum();
    let m = magnetization_elements(&s, &env);
    let from_oracle = expect * s.gamma_i * HBAR;
    assert!((m.mz_ground / from_oracle - 1.0).abs() < 1e-10);
}

#[test]
fn transition_gaps_match_diagonalization() {
    let s = DonorSpecies::p31();
    for b in [0.05, 1.0, 2.0] {
        let t = transition_frequencies(&s, &Environment::new(b, 1.0));
        let e = numeric_levels(hamiltonian_over_a(&s, b));
        let a = s.hyperfine_a;
        // Order at these fields: (0,0) < (1,−1) < (1,0) < (1,1).
        let rel = |w: f64, gap: f64| (w / a - gap).abs() / gap.abs();
        assert!(rel(t.omega_a_plus, e[1] - e[0]) < 1e-10);
        assert!(rel(t.omega_a_minus, e[3] - e[2]) < 1e-10);
        assert!(rel(t.omega_s, e[3] - e[1]) < 1e-10);
        assert!(rel(t.omega_b, e[3] - e[0]) < 1e-10);
        assert!(rel(t.omega_c, e[2] - e[1]) < 1e-10);
        assert!(rel(t.omega_d, e[2] - e[0]) < 1e-10);
    }
}

#[test]
fn library_hamiltonian_matches_oracle() {
    let s = DonorSpecies::p31();
    for b in [1e-3, 0.05, 1.0, 7.5] {
        let lib = hyperfine_hamiltonian(&s, &Environment::new(b, 1.0)) / s.hyperfine_energy();
        assert!((lib - hamiltonian_over_a(&s, b)).amax() < 1e-12, "B = {b}");
    }
}
