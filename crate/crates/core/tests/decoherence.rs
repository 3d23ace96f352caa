use ensemble_nmr::constants::{HBAR, K_B};
use ensemble_nmr::decoherence::*;
use ensemble_nmr::model::{DonorSpecies, Environment};
use ensemble_nmr::quad::{integrate, integrate_with_breaks, QuadOptions};
use ensemble_nmr::ExecPolicy;
use nalgebra::Matrix2;
use num_complex::Complex64;
use proptest::prelude::*;

/// Γ(t) = ½∫₀ᵗ∫₀ᵗ⟨Δω(t₁)Δω(t₂)⟩dt₁dt₂ by nested quadrature.
fn double_integral(c: &NoiseChannel, t: f64) -> f64 {
    let opts = QuadOptions { rel_tol: 1e-12, abs_tol: 0.0, ..Default::default() };
    let kernel = |d: f64| c.variance * (-d.abs() / c.corr_time).exp();
    let inner = |t2: f64| integrate_with_breaks(|t1| kernel(t1 - t2), &[0.0, t2, t], opts).unwrap().value;
    0.5 * integrate(inner, 0.0, t, opts).unwrap().value
}

fn eigenvalues(m: &Matrix2<Complex64>) -> (f64, f64) {
    let e = m.symmetric_eigenvalues();
    (e[0].min(e[1]), e[0].max(e[1]))
}

#[test]
fn closed_form_matches_double_integral() {
    let c = NoiseChannel::custom(3.0, 2.5).unwrap();
    for k in 1..=40 {
        let t = k as f64 * 10.0 * c.corr_time / 40.0;
        let exact = decrement(&c, t);
        let oracle = double_integral(&c, t);
        assert!((exact / oracle - 1.0).abs() < 1e-8, "t = {t}: {exact} vs {oracle}");
    }
}

#[test]
fn decrement_shape() {
    let c = NoiseChannel::custom(2.0, 1.0).unwrap();
    let h = 1e-3;
    let mut prev = 0.0;
    for k in 1..2000 {
        let t = k as f64 * h;
        let g = decrement(&c, t);
        assert!(g >= prev);
        if t <= c.corr_time {
            let second = (decrement(&c, t + h) - 2.0 * g + decrement(&c, t - h)) / (h * h);
            assert!(second >= -1e-6);
        }
        prev = g;
    }
    let t = 50.0;
    let slope = (decrement(&c, t + h) - decrement(&c, t - h)) / (2.0 * h);
    assert!((slope / (c.variance * c.corr_time) - 1.0).abs() < 1e-6);
}

#[test]
fn long_memory_noise_is_quadratic() {
    let c = NoiseChannel::custom(1.0, 1e4).unwrap();
    assert_eq!(classify_regime(&c), DephasingRegime::Quadratic);
    let t = 1.0;
    assert!((decrement(&c, t) / decrement_short_time(&c, t) - 1.0).abs() < 0.01);
    let td = dephasing_time(&c);
    assert!((decrement_short_time(&c, td) - 0.5).abs() < 0.005);
    assert!((td * c.variance.sqrt() - 1.0).abs() < 0.01);
}

#[test]
fn short_memory_noise_is_linear() {
    let c = NoiseChannel::custom(1.0, 1e-3).unwrap();
    assert_eq!(classify_regime(&c), DephasingRegime::Linear);
    let td = dephasing_time(&c);
    assert!((decrement_long_time(&c, td) / decrement(&c, td) - 1.0).abs() < 0.01);
}

#[test]
fn sequential_dephasing_composes() {
    let p = BlochVector::new(0.3, -0.5, 0.4).unwrap();
    let once = dephase_density(&p, 0.7);
    let twice = dephase_density(&p.dephased(0.3), 0.4);
    assert!((once - twice).iter().all(|d| d.norm() < 1e-15));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn eigenvalues_match_closed_form(
        theta in 0.0f64..std::f64::consts::PI,
        phi in 0.0f64..std::f64::consts::TAU,
        gamma in 0.0f64..20.0,
    ) {
        let p = BlochVector::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()).unwrap();
        let rho = dephase_density(&p, gamma);
        let (lo, hi) = eigenvalues(&rho);
        let (elo, ehi) = dephased_eigenvalues(&p, gamma);
        prop_assert!((lo - elo).abs() < 1e-12 && (hi - ehi).abs() < 1e-12);
        prop_assert!(lo >= -1e-15 && hi <= 1.0 + 1e-15);
        prop_assert_eq!((rho[(0, 0)] + rho[(1, 1)]).re, 1.0);
        prop_assert_eq!(rho[(0, 1)], rho[(1, 0)].conj());
        prop_assert_eq!(rho[(0, 0)].im, 0.0);
    }
}

#[test]
fn exponential_form_is_twice_exact_at_large_argument() {
    let s = DonorSpecies::p31();
    for k in 0..200 {
        let y = 5.0 + 0.5 * k as f64;
        let ratio = y * K_B / (s.gamma_e * HBAR);
        let env = Environment::new(ratio, 1.0);
        let r = hyperfine_variance_approx(&s, &env) / hyperfine_variance(&s, &env);
        assert!((1.99..=2.03).contains(&r), "y = {y}: {r}");
    }
}

#[test]
fn field_over_temp_threshold() {
    let s = DonorSpecies::p31();
    let t = required_field_over_temp(&s, 1.0).unwrap();
    // sech(y/2) = 2·rate/A₀ solved directly.
    let y = 2.0 * (s.modulation_a0 / 2.0).acosh();
    let oracle = y * K_B / (s.gamma_e * HBAR);
    assert!((t.exact / oracle - 1.0).abs() < 1e-9);
    let residual = hyperfine_variance(&s, &Environment::new(t.exact, 1.0)) - 1.0;
    assert!(residual.abs() < 1e-6);
    let oracle_approx = (2.0 * s.modulation_a0 * s.modulation_a0).ln() * K_B / (s.gamma_e * HBAR);
    assert!((t.approx / oracle_approx - 1.0).abs() < 1e-9);
    let mut last = f64::INFINITY;
    for rate in [1e-2, 1.0, 1e2, 1e4, 1e6] {
        let v = required_field_over_temp(&s, rate).unwrap().exact;
        assert!(v < last);
        last = v;
    }
}

#[test]
fn frozen_electron_is_quiet() {
    let s = DonorSpecies::p31();
    let mut last = f64::INFINITY;
    for temp in [1.0, 0.3, 0.1, 0.03, 0.01] {
        let v = hyperfine_variance(&s, &Environment::new(2.0, temp));
        assert!(v < last);
        last = v;
    }
    assert!(last < 1e-30);
}

#[test]
fn impurity_bound_grows_as_bath_freezes() {
    let s = DonorSpecies::p31();
    let env = Environment::new(2.0, 0.1);
    let mut last = 0.0;
    for temp in [1e-2, 3e-3, 1e-3, 3e-4, 1e-4] {
        let c = allowed_concentration(&s, &ImpuritySpec::si29(0.0, temp), &env, 1.0).unwrap();
        assert!(c > last);
        last = c;
    }
    let natural = ImpuritySpec::si29(0.047, 0.8e-3);
    let allowed = allowed_concentration(&s, &natural, &env, 1.0).unwrap();
    assert!(natural.concentration / allowed > 50.0);
    let v = impurity_variance(&s, &natural, &env).unwrap();
    assert!((v / natural.concentration * allowed - 1.0).abs() < 1e-12);
}

#[test]
fn dipolar_coefficient_monte_carlo() {
    let outer = 10.0;
    let est = dipolar_coefficient_mc(2_000_000, outer, 2024, ExecPolicy::Parallel).unwrap();
    let shell = DIPOLAR_COEFFICIENT * (1.0 - outer.powi(-3));
    assert!((est.mean - shell).abs() <= 3.0 * est.std_error, "{est:?} vs {shell}");
    let ratio = est.mean / DIPOLAR_COEFFICIENT;
    assert!((0.5..=2.0).contains(&ratio));
}
