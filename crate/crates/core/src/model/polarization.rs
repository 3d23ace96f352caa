use super::levels::{field_parameter, transition_frequencies};
use super::{DonorSpecies, Environment};
use crate::constants::{HBAR, K_B};
use crate::error::{invalid, require_positive, Result};

/// ln(2cosh x) without overflow.
fn ln_two_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p()
}

/// Pseudo-pure preparation probability ε(L) = 2sinh(Lx)/(2cosh x)^L with
/// x = ℏω/2kT, evaluated in log space so that L up to 10⁶ and ℏω/kT ≫ 1 are
/// safe.
pub fn epsilon_pseudo_pure(l_qubits: u32, omega_a: f64, temp: f64) -> Result<f64> {
    if l_qubits == 0 {
        return Err(invalid("l_qubits", "must be at least 1"));
    }
    require_positive("omega_a", omega_a.abs())?;
    require_positive("temp", temp)?;
    let x = HBAR * omega_a.abs() / (2.0 * K_B * temp);
    let l = f64::from(l_qubits);
    // (e^{Lx} − e^{−Lx}) / (e^x + e^{−x})^L = (1 − e^{−2Lx}) · e^{−L·ln(1 + e^{−2x})}
    Ok(-(-2.0 * l * x).exp_m1() * (-l * (-2.0 * x).exp().ln_1p()).exp())
}

/// High-temperature form ε ≈ L·2⁻ᴸ·ℏω/kT.
pub fn epsilon_high_temperature(l_qubits: u32, omega_a: f64, temp: f64) -> f64 {
    let l = f64::from(l_qubits);
    l * (-l * std::f64::consts::LN_2).exp() * HBAR * omega_a.abs() / (K_B * temp)
}

/// Largest L with L·2⁻ᴸ > `threshold`, by exhaustive scan. Returns 0 when no
/// L qualifies.
pub fn max_qubits_dynamic(threshold: f64) -> Result<u32> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(invalid("threshold", format!("must lie in (0, 1), got {threshold}")));
    }
    // L·2⁻ᴸ ≤ 2⁻ᴸᐟ² for L ≥ 4, so nothing above this bound can qualify.
    let bound = (2.0 * (-threshold.log2()).ceil()).max(4.0) as u32 + 2;
    Ok((1..=bound)
        .filter(|&l| f64::from(l) * 0.5f64.powi(l as i32) > threshold)
        .max()
        .unwrap_or(0))
}

/// Filling probabilities of the all-ground and all-excited L-qubit states
/// (same electron projection), `(p_ground, p_excited)`.
pub fn filling_probabilities(l_qubits: u32, omega_a: f64, temp: f64) -> (f64, f64) {
    let x = HBAR * omega_a / (2.0 * K_B * temp);
    let l = f64::from(l_qubits);
    let norm = l * ln_two_cosh(x);
    ((l * x - norm).exp(), (-l * x - norm).exp())
}

/// Maximum equilibrium nuclear magnetization M_zm, J/T per cm³, including the
/// X/√(1+X²) weight of the mixed ground state. `volume_cm3` is the sample
/// volume in cm³.
pub fn max_magnetization(
    species: &DonorSpecies,
    env: &Environment,
    volume_cm3: f64,
    n_atoms: f64,
    l_qubits: u32,
) -> f64 {
    let x = field_parameter(species, env);
    let w = x / x.hypot(1.0);
    let omega = transition_frequencies(species, env).omega_a_plus;
    let (p0, p1) = filling_probabilities(l_qubits, omega, env.temp_nuclear);
    species.gamma_i * HBAR / 2.0 * (n_atoms / volume_cm3) * (w * p0 - p1)
}

/// High-temperature, large-X form γIℏ/2·(N/V)·2⁻ᴸL·ℏω_A⁺/kT.
pub fn max_magnetization_high_temperature(
    species: &DonorSpecies,
    env: &Environment,
    volume_cm3: f64,
    n_atoms: f64,
    l_qubits: u32,
) -> f64 {
    let omega = transition_frequencies(species, env).omega_a_plus;
    species.gamma_i * HBAR / 2.0
        * (n_atoms / volume_cm3)
        * epsilon_high_temperature(l_qubits, omega, env.temp_nuclear)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ω with ℏω/kT = r at temperature 1 K.
    fn omega_for_ratio(r: f64) -> f64 {
        r * K_B / HBAR
    }

    #[test]
    fn high_temperature_limit() {
        let w = omega_for_ratio(1e-5);
        let e = epsilon_pseudo_pure(2, w, 1.0).unwrap();
        let approx = 2.0 * 0.25 * 1e-5;
        assert!((e / approx - 1.0).abs() < 1e-3);
    }

    #[test]
    fn deep_cold_is_pure() {
        let w = omega_for_ratio(1e3);
        for l in [1, 2, 10, 1000, 1_000_000] {
            let e = epsilon_pseudo_pure(l, w, 1.0).unwrap();
            assert!((e - 1.0).abs() < 1e-10, "L = {l}: {e}");
        }
    }

    #[test]
    fn single_qubit_is_tanh() {
        for r in [1e-4, 0.3, 2.0, 40.0] {
            let e = epsilon_pseudo_pure(1, omega_for_ratio(r), 1.0).unwrap();
            assert!((e - (r / 2.0).tanh()).abs() < 1e-15);
        }
    }

    #[test]
    fn huge_register_does_not_overflow() {
        let e = epsilon_pseudo_pure(1_000_000, omega_for_ratio(0.5), 1.0).unwrap();
        assert!(e.is_finite() && e >= 0.0);
    }

    #[test]
    fn zero_qubits_rejected() {
        assert!(epsilon_pseudo_pure(0, 1e8, 1.0).is_err());
    }

    #[test]
    fn max_qubits_scan() {
        // 13·2⁻¹³ = 1.587e-3 > 1e-3 while 14·2⁻¹⁴ = 8.54e-4.
        assert_eq!(max_qubits_dynamic(1e-3).unwrap(), 13);
        assert_eq!(max_qubits_dynamic(0.5).unwrap(), 0);
        assert_eq!(max_qubits_dynamic(0.49).unwrap(), 2);
        assert!(max_qubits_dynamic(1.0).is_err());
    }

    #[test]
    fn max_qubits_matches_wide_scan() {
        for t in [1e-12, 1e-6, 1e-3, 0.01, 0.2, 0.37, 0.375, 0.4999] {
            let brute = (1..=200u32)
                .filter(|&l| f64::from(l) * 0.5f64.powi(l as i32) > t)
                .max()
                .unwrap_or(0);
            assert_eq!(max_qubits_dynamic(t).unwrap(), brute, "threshold {t}");
        }
    }

    #[test]
    fn magnetization_limits() {
        let s = DonorSpecies::p31();
        // Cold: ℏω_A⁺/kT ≈ 36 at 1 T, 0.1 mK.
        let mut env = Environment::new(1.0, 1.0);
        env.temp_nuclear = 1e-4;
        let full = s.gamma_i * HBAR / 2.0 * 1e10;
        let m = max_magnetization(&s, &env, 1.0, 1e10, 3);
        let x = field_parameter(&s, &env);
        assert!((m / full - x / x.hypot(1.0)).abs() < 1e-12);
        assert!((m / full - 1.0).abs() < 1e-5);
        // Hot, with ℏω/kT ≫ 1/X² so the mixing weight is negligible.
        env.temp_nuclear = 1.0;
        let exact = max_magnetization(&s, &env, 1.0, 1e10, 3);
        let approx = max_magnetization_high_temperature(&s, &env, 1.0, 1e10, 3);
        assert!((exact / approx - 1.0).abs() < 5e-3);
        assert_eq!(max_magnetization(&s, &env, 1.0, 0.0, 3), 0.0);
    }
}
