use super::channel::{ChannelKind, NoiseChannel};
use crate::constants::{HBAR, K_B, MU0};
use crate::error::{invalid, require_positive, Result};
use crate::exec::{chunk_ranges, chunk_rng, map_indexed, ExecPolicy, MC_CHUNK};
use crate::model::{DonorSpecies, Environment};
use rand::Rng;
use std::f64::consts::PI;

/// 1 − tanh²(z) = 4e^(−2|z|)/(1 + e^(−2|z|))², finite for any z.
fn sech2(z: f64) -> f64 {
    let w = (-2.0 * z.abs()).exp();
    4.0 * w / ((1.0 + w) * (1.0 + w))
}

/// ⟨Δω²⟩ = A₀²(1 − tanh²(γeℏB/2kT))/4 from thermally activated electron flips.
pub fn hyperfine_variance(species: &DonorSpecies, env: &Environment) -> f64 {
    let z = species.gamma_e * HBAR * env.b_field / (2.0 * K_B * env.temp_lattice);
    species.modulation_a0.powi(2) * sech2(z) / 4.0
}

/// Large-argument form 2A₀²exp(−γeℏB/kT).
pub fn hyperfine_variance_approx(species: &DonorSpecies, env: &Environment) -> f64 {
    let y = species.gamma_e * HBAR * env.b_field / (K_B * env.temp_lattice);
    2.0 * species.modulation_a0.powi(2) * (-y).exp()
}

impl NoiseChannel {
    pub fn hyperfine(species: &DonorSpecies, env: &Environment, tau1: f64) -> Result<Self> {
        Self::new(hyperfine_variance(species, env), tau1, ChannelKind::HyperfineElectron)
    }

    pub fn impurity(species: &DonorSpecies, imp: &ImpuritySpec, env: &Environment) -> Result<Self> {
        Self::new(impurity_variance(species, imp, env)?, imp.corr_time, ChannelKind::ImpurityDipole)
    }
}

/// B/T thresholds, T/K, below which 1/T_d exceeds the target rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldOverTemp {
    pub exact: f64,
    pub approx: f64,
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    // f(lo) > 0 ≥ f(hi), f decreasing.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Smallest B/T at which ⟨Δω²⟩ ≤ target_rate², for the exact and the
/// exponential forms.
pub fn required_field_over_temp(species: &DonorSpecies, target_rate: f64) -> Result<FieldOverTemp> {
    require_positive("target_rate", target_rate)?;
    let target = target_rate * target_rate;
    let env = |ratio: f64| Environment::new(ratio, 1.0);
    let solve = |variance: &dyn Fn(f64) -> f64| {
        if variance(0.0) <= target {
            return 0.0;
        }
        let mut hi = 1.0;
        while variance(hi) > target {
            hi *= 2.0;
        }
        bisect(|r| variance(r) - target, 0.0, hi)
    };
    Ok(FieldOverTemp {
        exact: solve(&|r| hyperfine_variance(species, &env(r))),
        approx: solve(&|r| hyperfine_variance_approx(species, &env(r))),
    })
}

/// Dilute spin-½ impurity nuclei on the host lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpuritySpec {
    /// Fraction of lattice sites occupied, in [0, 1].
    pub concentration: f64,
    /// Signed gyromagnetic ratio, rad/s/T.
    pub gamma_imp: f64,
    /// Lattice sites per cm³; the closest approach a satisfies a³ = 1/n.
    pub lattice_density: f64,
    /// Impurity spin temperature, K.
    pub temp_nuclear_imp: f64,
    /// Impurity flip correlation time T∥,imp, s.
    pub corr_time: f64,
}

impl ImpuritySpec {
    /// ²⁹Si in silicon.
    pub fn si29(concentration: f64, temp_nuclear_imp: f64) -> Self {
        Self {
            concentration,
            gamma_imp: -53e6,
            lattice_density: 5e22,
            temp_nuclear_imp,
            corr_time: 1e4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.concentration) {
            return Err(invalid("concentration", format!("{} outside [0, 1]", self.concentration)));
        }
        require_positive("lattice_density", self.lattice_density)?;
        require_positive("temp_nuclear_imp", self.temp_nuclear_imp)?;
        require_positive("corr_time", self.corr_time)
    }

    /// Lattice density in m⁻³.
    fn density_si(&self) -> f64 {
        self.lattice_density * 1e6
    }
}

/// 1/(60π): lattice second moment of the secular dipole coupling with the
/// impurity spin variance, per C·n·(μ₀γIγimpℏ)²(1 − tanh²)/a³.
pub const DIPOLAR_COEFFICIENT: f64 = 1.0 / (60.0 * PI);

/// Variance per unit concentration, (rad/s)².
fn variance_per_concentration(species: &DonorSpecies, imp: &ImpuritySpec, env: &Environment) -> f64 {
    let n = imp.density_si();
    let coupling = MU0 * species.gamma_i * imp.gamma_imp * HBAR;
    let z = imp.gamma_imp.abs() * HBAR * env.b_field / (2.0 * K_B * imp.temp_nuclear_imp);
    // a³ = 1/n, so n/a³ = n².
    DIPOLAR_COEFFICIENT * n * n * coupling * coupling * sech2(z)
}

/// ⟨Δω²⟩ from randomly flipping impurity nuclei.
pub fn impurity_variance(species: &DonorSpecies, imp: &ImpuritySpec, env: &Environment) -> Result<f64> {
    imp.validate()?;
    Ok(imp.concentration * variance_per_concentration(species, imp, env))
}

/// Largest impurity fraction keeping 1/T_d below `target_rate`. Infinite for
/// a fully polarized bath.
pub fn allowed_concentration(
    species: &DonorSpecies,
    imp: &ImpuritySpec,
    env: &Environment,
    target_rate: f64,
) -> Result<f64> {
    imp.validate()?;
    require_positive("target_rate", target_rate)?;
    Ok(target_rate * target_rate / variance_per_concentration(species, imp, env))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Monte-Carlo estimate of the coefficient K in
/// ⟨Δω²⟩ = K·C·n·(μ₀γIγimpℏ)²(1 − tanh²)/a³, scattering impurities uniformly
/// in the shell a < r < `outer`·a. The exact value is 1/(60π)·(1 − outer⁻³).
pub fn dipolar_coefficient_mc(samples: usize, outer: f64, seed: u64, policy: ExecPolicy) -> Result<McEstimate> {
    if samples < 2 {
        return Err(invalid("samples", "need at least two"));
    }
    if outer <= 1.0 {
        return Err(invalid("outer", "shell radius must exceed 1"));
    }
    let r3_max = outer.powi(3);
    let ranges = chunk_ranges(samples, MC_CHUNK);
    let partial = map_indexed(policy, ranges.len(), |k| {
        let mut rng = chunk_rng(seed, k);
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in ranges[k].clone() {
            let r3 = rng.random_range(1.0..r3_max);
            let c: f64 = rng.random_range(-1.0..1.0);
            let g = (1.0 - 3.0 * c * c).powi(2) / (r3 * r3);
            s += g;
            s2 += g * g;
        }
        (s, s2)
    });
    let (s, s2) = partial.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = samples as f64;
    let mean = s / n;
    let var = (s2 / n - mean * mean).max(0.0) * n / (n - 1.0);
    // Shell integral in units of a = 1, then the prefactor (1/4π)²·¼ of the
    // secular coupling squared and the spin variance.
    let volume = 4.0 * PI / 3.0 * (r3_max - 1.0);
    let scale = volume / (64.0 * PI * PI);
    Ok(McEstimate { mean: scale * mean, std_error: scale * (var / n).sqrt(), samples })
}
