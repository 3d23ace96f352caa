use ensemble_nmr::decoherence::{decrement, NoiseChannel};
use ensemble_nmr::entangled::*;
use ensemble_nmr::ExecPolicy;
use nalgebra::Matrix4;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn max_abs(m: &Matrix4<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn phase_unitary_is_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let (a, b, c) = (rng.random_range(-50.0..50.0), rng.random_range(-50.0..50.0), rng.random_range(-50.0..50.0));
        let u = phase_unitary(a, b, c);
        assert!(max_abs(&(u.adjoint() * u - Matrix4::identity())) < 1e-14);
    }
}

proptest! {
    #[test]
    fn conjugation_ignores_interaction_phase(phi1 in -10.0f64..10.0, phi2 in -10.0f64..10.0, phi_int in -10.0f64..10.0) {
        for (state, sum) in [
            (TwoQubitDensity::epr_triplet(), false),
            (TwoQubitDensity::epr_singlet(), false),
            (TwoQubitDensity::bell(true), true),
            (TwoQubitDensity::bell(false), true),
        ] {
            let with = state.conjugate(phi1, phi2, phi_int);
            let without = state.conjugate(phi1, phi2, 0.0);
            prop_assert!(max_abs(&(with.0 - without.0)) < 1e-14);
            let (j, k, phase) = if sum { (0, 3, -(phi1 + phi2)) } else { (1, 2, phi2 - phi1) };
            let expected = state.0[(j, k)] * Complex64::cis(phase);
            prop_assert!((with.0[(j, k)] - expected).norm() < 1e-14);
            prop_assert!((with.0[(k, j)] - expected.conj()).norm() < 1e-14);
        }
    }
}

#[test]
fn uncorrelated_epr_adds_single_qubit_decrements() {
    let s2 = 0.6;
    let m = CorrelatedPhaseModel::constant(s2, s2, 0.0);
    let g = gamma_epr(&m.covariance(0.0).unwrap());
    let one_qubit = s2 / 2.0;
    assert!((g - 2.0 * one_qubit).abs() < 1e-15);
    let avg = averaged_epr(&m, 0.0).unwrap();
    assert!((avg.0[(1, 2)].re - 0.5 * (-s2).exp()).abs() < 1e-15);
}

#[test]
fn fully_correlated_epr_is_frozen() {
    let m = CorrelatedPhaseModel::constant(2.5, 2.5, 1.0);
    assert_eq!(averaged_epr(&m, 0.0).unwrap(), TwoQubitDensity::epr_triplet());
}

#[test]
fn one_noisy_qubit_gives_its_own_decrement() {
    let channel = NoiseChannel::custom(4.0, 0.5).unwrap();
    let model = CorrelatedPhaseModel {
        sigma1_sq: PhaseVariance::Channel(channel),
        sigma2_sq: PhaseVariance::Constant(0.0),
        rho12: 0.4,
        sigma_int_sq: PhaseVariance::Constant(0.0),
    };
    for t in [0.01, 0.3, 2.0] {
        let g = gamma_epr(&model.covariance(t).unwrap());
        assert!((g / decrement(&channel, t) - 1.0).abs() < 1e-14);
    }
}

#[test]
fn correlated_bell_decays_four_times_faster() {
    let s2 = 0.3;
    let g = gamma_bell(&CorrelatedPhaseModel::constant(s2, s2, 1.0).covariance(0.0).unwrap());
    assert!((g / (s2 / 2.0) - 4.0).abs() < 1e-14);
    let cov = CorrelatedPhaseModel::constant(0.7, 0.2, 0.0).covariance(0.0).unwrap();
    assert_eq!(gamma_bell(&cov), gamma_epr(&cov));
}

#[test]
fn general_average_matches_closed_forms() {
    let m = CorrelatedPhaseModel::constant(0.9, 0.4, 0.35).with_interaction(0.8);
    let epr = averaged_density(&TwoQubitDensity::epr_triplet(), &m, 0.0).unwrap();
    assert!(max_abs(&(epr.0 - averaged_epr(&m, 0.0).unwrap().0)) < 1e-15);
    for plus in [true, false] {
        let bell = averaged_density(&TwoQubitDensity::bell(plus), &m, 0.0).unwrap();
        assert!(max_abs(&(bell.0 - averaged_bell(&m, 0.0, plus).unwrap().0)) < 1e-15);
    }
}

#[test]
fn decrements_are_monotone_in_correlation() {
    let mut last = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..=100 {
        let cov = CorrelatedPhaseModel::constant(1.3, 1.3, k as f64 / 100.0).covariance(0.0).unwrap();
        let (e, b) = (gamma_epr(&cov), gamma_bell(&cov));
        assert!(e < last.0 && b > last.1);
        last = (e, b);
    }
}

#[test]
fn sample_statistics() {
    let m = CorrelatedPhaseModel::constant(1.0, 2.0, 0.6);
    let n = 1_000_000;
    let s = sample_correlated_phases(&m, 0.0, n, 11, ExecPolicy::Parallel).unwrap();
    let nf = n as f64;
    let m1 = s.iter().map(|p| p.phi1).sum::<f64>() / nf;
    let m2 = s.iter().map(|p| p.phi2).sum::<f64>() / nf;
    let c11 = s.iter().map(|p| (p.phi1 - m1).powi(2)).sum::<f64>() / nf;
    let c22 = s.iter().map(|p| (p.phi2 - m2).powi(2)).sum::<f64>() / nf;
    let c12 = s.iter().map(|p| (p.phi1 - m1) * (p.phi2 - m2)).sum::<f64>() / nf;
    assert!((c11 - 1.0).abs() < 5e-3);
    assert!((c22 - 2.0).abs() < 5e-3 * 2.0);
    assert!((c12 - 0.6 * 2f64.sqrt()).abs() < 5e-3 * 2.0);
    let mean: Complex64 = s.iter().map(|p| Complex64::cis(p.phi1 - p.phi2)).sum::<Complex64>() / nf;
    let expected = (-gamma_epr(&m.covariance(0.0).unwrap())).exp();
    assert!((mean - expected).norm() < 3.0 / nf.sqrt());
}

#[test]
fn degenerate_factor_copies_phase() {
    let s = sample_correlated_phases(&CorrelatedPhaseModel::constant(1.0, 1.0, 1.0), 0.0, 1000, 3, ExecPolicy::Parallel)
        .unwrap();
    assert!(s.iter().all(|p| p.phi1 == p.phi2));
}

#[test]
fn monte_carlo_frozen_triplet() {
    let n = 100_000;
    let rho0 = TwoQubitDensity::epr_triplet();
    let mc = monte_carlo_average(&rho0, &CorrelatedPhaseModel::constant(3.0, 3.0, 1.0), 0.0, n, 4, ExecPolicy::Parallel)
        .unwrap();
    assert!(max_abs(&(mc.mean.0 - rho0.0)) <= 3.0 / (n as f64).sqrt());
}

#[test]
fn monte_carlo_leaves_diagonal_states() {
    let rho0 = TwoQubitDensity(Matrix4::from_diagonal(&nalgebra::Vector4::new(0.1, 0.2, 0.3, 0.4).map(Complex64::from)));
    let mc = monte_carlo_average(&rho0, &CorrelatedPhaseModel::constant(2.0, 1.0, 0.2), 0.0, 5000, 9, ExecPolicy::Parallel)
        .unwrap();
    assert_eq!(mc.mean, rho0);
}

#[test]
fn monte_carlo_matches_analytic_average() {
    let m = CorrelatedPhaseModel::constant(0.7, 1.1, 0.45).with_interaction(0.3);
    for rho0 in [
        TwoQubitDensity::epr_triplet(),
        TwoQubitDensity::bell(true),
        TwoQubitDensity::partially_entangled(0.2).unwrap(),
        TwoQubitDensity::from_pure([0.5, 0.5, 0.5, 0.5].map(Complex64::from)).unwrap(),
    ] {
        let mc = monte_carlo_average(&rho0, &m, 0.0, 200_000, 77, ExecPolicy::Parallel).unwrap();
        let exact = averaged_density(&rho0, &m, 0.0).unwrap();
        for j in 0..4 {
            for k in 0..4 {
                let d = (mc.mean.0[(j, k)] - exact.0[(j, k)]).norm();
                assert!(d <= 3.0 * mc.std_error[(j, k)] + 1e-15, "({j},{k}): {d} vs {}", mc.std_error[(j, k)]);
            }
        }
        assert!(mc.mean.hermiticity_error() == 0.0);
        assert!((mc.mean.trace() - 1.0).abs() < 1e-14);
    }
}

#[test]
fn monte_carlo_is_policy_independent() {
    let m = CorrelatedPhaseModel::constant(0.7, 1.1, 0.45);
    let rho0 = TwoQubitDensity::epr_triplet();
    let a = monte_carlo_average(&rho0, &m, 0.0, 50_000, 1, ExecPolicy::Sequential).unwrap();
    let b = monte_carlo_average(&rho0, &m, 0.0, 50_000, 1, ExecPolicy::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn partially_entangled_purity() {
    for alpha in [0.0, 0.1, 0.3, 0.5, 0.8] {
        for (s1, s2, rho) in [(1.0, 1.0, 1.0), (1.0, 0.3, 1.0), (0.5, 0.9, 0.2)] {
            let m = CorrelatedPhaseModel::constant(s1, s2, rho);
            let g = gamma_epr(&m.covariance(0.0).unwrap());
            let rho0 = TwoQubitDensity::partially_entangled(alpha).unwrap();
            let out = averaged_density(&rho0, &m, 0.0).unwrap();
            let expected = 1.0 - 2.0 * alpha * (1.0 - alpha) * (1.0 - (-2.0 * g).exp());
            assert!((out.purity() - expected).abs() < 1e-12);
            if alpha > 0.0 && alpha < 1.0 {
                let ratio = out.0[(1, 2)].re / rho0.0[(1, 2)].re;
                assert!((ratio - (-g).exp()).abs() < 1e-14);
            }
        }
    }
    let mc = monte_carlo_average(
        &TwoQubitDensity::partially_entangled(0.3).unwrap(),
        &CorrelatedPhaseModel::constant(1.0, 0.3, 1.0),
        0.0,
        200_000,
        5,
        ExecPolicy::Parallel,
    )
    .unwrap();
    let g = gamma_epr(&CorrelatedPhaseModel::constant(1.0, 0.3, 1.0).covariance(0.0).unwrap());
    assert!((mc.mean.purity() - (1.0 - 0.42 * (1.0 - (-2.0 * g).exp()))).abs() < 5e-3);
}

#[test]
fn purity_bounds() {
    let rho0 = TwoQubitDensity::from_pure([0.5, 0.5, 0.5, 0.5].map(Complex64::from)).unwrap();
    let still = averaged_density(&rho0, &CorrelatedPhaseModel::constant(0.0, 0.0, 0.0), 0.0).unwrap();
    assert!((still.purity() - 1.0).abs() < 1e-15);
    for s in [0.1, 1.0, 10.0, 1e3] {
        let p = averaged_density(&rho0, &CorrelatedPhaseModel::constant(s, s, 0.3).with_interaction(s), 0.0)
            .unwrap()
            .purity();
        assert!((0.25 - 1e-15..1.0).contains(&p));
        assert!(averaged_density(&rho0, &CorrelatedPhaseModel::constant(s, s, 0.3), 0.0).unwrap().validate().is_ok());
    }
}
