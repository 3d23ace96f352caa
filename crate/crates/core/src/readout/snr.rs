use super::geometry::{CoilCircuit, RegisterGeometry};
use crate::constants::{CM3, HBAR, K_B, MU0};
use crate::error::{require_positive, Result};
use crate::model::{epsilon_pseudo_pure, transition_frequencies, DonorSpecies, Environment};

/// Amplifier bandwidth assumed by the planar-ensemble estimate, Hz.
pub const DEFAULT_BANDWIDTH_HZ: f64 = 1.0;

/// Peak induced voltage |V_max| = (μ₀/4)·Q·KA·(N/V_s)·γIℏω·ε, V.
pub fn signal_eq5(coil: &CoilCircuit, species: &DonorSpecies, n_molecules: f64, epsilon: f64) -> f64 {
    MU0 / 4.0
        * coil.quality_q
        * coil.ka()
        * (n_molecules / (coil.solenoid_volume * CM3))
        * species.gamma_i.abs()
        * HBAR
        * coil.resonance_omega
        * epsilon
}

/// Johnson noise √(4kTRΔν), V.
fn noise_voltage(coil: &CoilCircuit, temp: f64) -> f64 {
    (4.0 * K_B * temp * coil.resistance * coil.bandwidth).sqrt()
}

/// Closed form (1/8)·√(μ₀Qω/(V_s·kT·Δν))·γIℏ·N·ε; R cancels.
#[allow(clippy::too_many_arguments)]
fn snr_closed_form(
    gamma_i: f64,
    q: f64,
    omega: f64,
    volume_m3: f64,
    temp: f64,
    bandwidth: f64,
    n: f64,
    epsilon: f64,
) -> f64 {
    (MU0 * q * omega / (volume_m3 * K_B * temp * bandwidth)).sqrt() * gamma_i.abs() * HBAR * n * epsilon
        / 8.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BulkSnr {
    pub snr: f64,
    /// |V_max|, V.
    pub signal: f64,
    /// V_N, V.
    pub noise: f64,
    pub epsilon: f64,
}

/// Liquid-state S/N at the coil resonance and lattice temperature.
pub fn snr_bulk(
    species: &DonorSpecies,
    env: &Environment,
    coil: &CoilCircuit,
    n_molecules: f64,
    l_qubits: u32,
) -> Result<BulkSnr> {
    coil.validate()?;
    require_positive("temp_lattice", env.temp_lattice)?;
    let epsilon = epsilon_pseudo_pure(l_qubits, coil.resonance_omega, env.temp_lattice)?;
    let snr = snr_closed_form(
        species.gamma_i,
        coil.quality_q,
        coil.resonance_omega,
        coil.solenoid_volume * CM3,
        env.temp_lattice,
        coil.bandwidth,
        n_molecules,
        epsilon,
    );
    Ok(BulkSnr {
        snr,
        signal: signal_eq5(coil, species, n_molecules, epsilon),
        noise: noise_voltage(coil, env.temp_lattice),
        epsilon,
    })
}

/// Rounded estimate 0.2·√((Q/V_s)(ℏω/kT))·N·ε·10⁻⁹ with V_s in cm³ and Δν = 1 Hz.
pub fn snr_bulk_estimate(q: f64, volume_cm3: f64, omega: f64, temp: f64, n: f64, epsilon: f64) -> f64 {
    0.2 * (q / volume_cm3 * HBAR * omega / (K_B * temp)).sqrt() * n * epsilon * 1e-9
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSnr {
    pub snr: f64,
    /// Smallest N with S/N ≥ 1 at the same per-molecule volume.
    pub n_min: f64,
    /// Readout frequency ω_A⁺, rad/s.
    pub omega: f64,
    /// ℏω/kT at the noise temperature.
    pub reduced_energy: f64,
}

/// Fully polarized (ε = 1) planar ensemble at ω_A⁺. The noise term is taken at
/// the nuclear spin temperature T_I with Δν = [`DEFAULT_BANDWIDTH_HZ`].
pub fn snr_ensemble(
    species: &DonorSpecies,
    env: &Environment,
    geom: &RegisterGeometry,
    quality_q: f64,
) -> Result<EnsembleSnr> {
    geom.validate()?;
    require_positive("quality_q", quality_q)?;
    require_positive("temp_nuclear", env.temp_nuclear)?;
    let omega = transition_frequencies(species, env).omega_a_plus;
    let n = geom.n_molecules();
    let per_molecule = geom.molecule_volume() * CM3;
    let snr_of = |count: f64| {
        snr_closed_form(
            species.gamma_i,
            quality_q,
            omega,
            per_molecule * count,
            env.temp_nuclear,
            DEFAULT_BANDWIDTH_HZ,
            count,
            1.0,
        )
    };
    // S/N ∝ √N at fixed per-molecule volume.
    let unit = snr_of(1.0);
    Ok(EnsembleSnr {
        snr: snr_of(n),
        n_min: 1.0 / (unit * unit),
        omega,
        reduced_energy: HBAR * omega / (K_B * env.temp_nuclear),
    })
}

/// Folded estimate √(QN/(δ·l_x·l_y·L))·10⁻¹⁰ with lengths in cm.
pub fn snr_ensemble_folded(geom: &RegisterGeometry, quality_q: f64) -> f64 {
    (quality_q * geom.n_molecules() / geom.molecule_volume()).sqrt() * 1e-10
}

#[cfg(test)]
mod tests {
    use super::*;

    fn liquid_coil(omega: f64) -> CoilCircuit {
        CoilCircuit::from_resistance(1e3, 20.0, 1.0, 2.0, 1.0, omega).unwrap()
    }

    /// ω with ℏω/kT = 2·10⁻⁵ at 300 K, so ε(2) ≈ 10⁻⁵.
    fn liquid_setup() -> (DonorSpecies, Environment, CoilCircuit) {
        let omega = 2e-5 * K_B * 300.0 / HBAR;
        (DonorSpecies::p31(), Environment::new(1.0, 300.0), liquid_coil(omega))
    }

    #[test]
    fn component_path_matches_closed_form() {
        let (s, e, c) = liquid_setup();
        let r = snr_bulk(&s, &e, &c, 1e16, 2).unwrap();
        assert!((r.signal / r.noise / r.snr - 1.0).abs() < 1e-6);
        assert!((r.epsilon / 1e-5 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn liquid_crossover_near_ten_to_sixteen() {
        let (s, e, c) = liquid_setup();
        let per = snr_bulk(&s, &e, &c, 1.0, 2).unwrap().snr;
        let n_cross = 1.0 / per;
        assert!(n_cross > 1e16 / 3.0 && n_cross < 3e16, "{n_cross:e}");
        let est = snr_bulk_estimate(1e3, 1.0, c.resonance_omega, 300.0, 1.0, 1e-5);
        assert!((est / per - 1.0).abs() < 0.35);
    }

    #[test]
    fn empty_sample_is_silent() {
        let (s, e, c) = liquid_setup();
        assert_eq!(snr_bulk(&s, &e, &c, 0.0, 2).unwrap().snr, 0.0);
    }

    #[test]
    fn only_ka_product_matters() {
        let (s, e, c) = liquid_setup();
        let scaled = CoilCircuit { turns_k: c.turns_k * 4.0, turn_area: c.turn_area / 4.0, ..c };
        let a = snr_bulk(&s, &e, &c, 1e16, 2).unwrap();
        let b = snr_bulk(&s, &e, &scaled, 1e16, 2).unwrap();
        assert!((a.snr / b.snr - 1.0).abs() < 1e-12);
        assert!((a.signal / b.signal - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ensemble_square_root_law() {
        let s = DonorSpecies::p31();
        let e = Environment::new(1.0, 3.6e-3);
        let g = RegisterGeometry::square_plate();
        let a = snr_ensemble(&s, &e, &g, 1e6).unwrap();
        let big = RegisterGeometry { blocks_p: g.blocks_p * 100, ..g };
        let b = snr_ensemble(&s, &e, &big, 1e6).unwrap();
        assert!((b.snr / a.snr - 10.0).abs() < 1e-9);
        assert!((a.n_min / b.n_min - 1.0).abs() < 1e-12);
        let f = snr_ensemble_folded(&big, 1e6) / snr_ensemble_folded(&g, 1e6);
        assert!((f - 10.0).abs() < 1e-9);
    }
}
