use super::density::{TwoQubitDensity, BASIS};
use crate::decoherence::{decrement, NoiseChannel};
use crate::error::{invalid, Error, Result};
use crate::exec::{chunk_ranges, chunk_rng, map_indexed, ExecPolicy, MC_CHUNK};
use nalgebra::Matrix4;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Phase variance σ²(t), rad².
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseVariance {
    Constant(f64),
    /// σ² = 2Γ(t) of a single-qubit noise channel.
    Channel(NoiseChannel),
}

impl PhaseVariance {
    pub fn at(&self, t: f64) -> f64 {
        match self {
            Self::Constant(v) => *v,
            Self::Channel(c) => 2.0 * decrement(c, t),
        }
    }
}

/// Jointly Gaussian single-qubit phases plus an independent interaction phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatedPhaseModel {
    pub sigma1_sq: PhaseVariance,
    pub sigma2_sq: PhaseVariance,
    /// Correlation coefficient ρ₁₂ ∈ [0, 1].
    pub rho12: f64,
    pub sigma_int_sq: PhaseVariance,
}

impl CorrelatedPhaseModel {
    pub fn constant(sigma1_sq: f64, sigma2_sq: f64, rho12: f64) -> Self {
        Self {
            sigma1_sq: PhaseVariance::Constant(sigma1_sq),
            sigma2_sq: PhaseVariance::Constant(sigma2_sq),
            rho12,
            sigma_int_sq: PhaseVariance::Constant(0.0),
        }
    }

    pub fn with_interaction(self, sigma_int_sq: f64) -> Self {
        Self { sigma_int_sq: PhaseVariance::Constant(sigma_int_sq), ..self }
    }

    /// Standard deviations and correlation at `t`, checked for a valid
    /// covariance.
    pub fn covariance(&self, t: f64) -> Result<PhaseCovariance> {
        let (v1, v2, vi) = (self.sigma1_sq.at(t), self.sigma2_sq.at(t), self.sigma_int_sq.at(t));
        if !(v1 >= 0.0 && v2 >= 0.0 && vi >= 0.0) {
            return Err(Error::NonPsdCovariance(format!("variances ({v1}, {v2}, {vi})")));
        }
        if !(-1.0..=1.0).contains(&self.rho12) {
            return Err(Error::NonPsdCovariance(format!("correlation {}", self.rho12)));
        }
        if self.rho12 < 0.0 {
            return Err(invalid("rho12", format!("{} outside [0, 1]", self.rho12)));
        }
        Ok(PhaseCovariance { sigma1: v1.sqrt(), sigma2: v2.sqrt(), rho12: self.rho12, sigma_int: vi.sqrt() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseCovariance {
    pub sigma1: f64,
    pub sigma2: f64,
    pub rho12: f64,
    pub sigma_int: f64,
}

impl PhaseCovariance {
    /// Var(a·φ₁ + b·φ₂ + c·φ_I).
    fn variance_of(&self, a: f64, b: f64, c: f64) -> f64 {
        let (s1, s2) = (self.sigma1, self.sigma2);
        a * a * s1 * s1 + b * b * s2 * s2 + 2.0 * a * b * self.rho12 * s1 * s2 + c * c * self.sigma_int * self.sigma_int
    }
}

/// Decrement of the |↑↓⟩/|↓↑⟩ coherence, ½Var(φ₁ − φ₂).
pub fn gamma_epr(cov: &PhaseCovariance) -> f64 {
    0.5 * cov.variance_of(1.0, -1.0, 0.0)
}

/// Decrement of the |↑↑⟩/|↓↓⟩ coherence, ½Var(φ₁ + φ₂).
pub fn gamma_bell(cov: &PhaseCovariance) -> f64 {
    0.5 * cov.variance_of(1.0, 1.0, 0.0)
}

/// Coefficients (a, b, c) with θ_k − θ_j = aφ₁ + bφ₂ + cφ_I.
fn phase_difference(j: usize, k: usize) -> (f64, f64, f64) {
    let (j1, j2) = (BASIS[j].0 as f64, BASIS[j].1 as f64);
    let (k1, k2) = (BASIS[k].0 as f64, BASIS[k].1 as f64);
    (0.5 * (k1 - j1), 0.5 * (k2 - j2), k1 * k2 - j1 * j2)
}

/// Exact Gaussian average of U†ρU for any initial state.
pub fn averaged_density(rho0: &TwoQubitDensity, model: &CorrelatedPhaseModel, t: f64) -> Result<TwoQubitDensity> {
    let cov = model.covariance(t)?;
    Ok(rho0.scaled(|j, k| {
        let (a, b, c) = phase_difference(j, k);
        Complex64::from((-0.5 * cov.variance_of(a, b, c)).exp())
    }))
}

/// Averaged triplet state: off-diagonal block ½e^(−Γ).
pub fn averaged_epr(model: &CorrelatedPhaseModel, t: f64) -> Result<TwoQubitDensity> {
    let damp = (-gamma_epr(&model.covariance(t)?)).exp();
    Ok(TwoQubitDensity::epr_triplet().scaled(|j, k| Complex64::from(if j != k { damp } else { 1.0 })))
}

/// Averaged (|↑↑⟩ ± |↓↓⟩)/√2.
pub fn averaged_bell(model: &CorrelatedPhaseModel, t: f64, plus: bool) -> Result<TwoQubitDensity> {
    let damp = (-gamma_bell(&model.covariance(t)?)).exp();
    Ok(TwoQubitDensity::bell(plus).scaled(|j, k| Complex64::from(if j != k { damp } else { 1.0 })))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSample {
    pub phi1: f64,
    pub phi2: f64,
    pub phi_int: f64,
}

/// Draws chunk `k` of a seeded run through the Cholesky factor
/// [[σ₁, 0], [ρσ₂, σ₂√(1−ρ²)]].
fn chunk_samples(cov: &PhaseCovariance, seed: u64, k: usize, len: usize) -> impl Iterator<Item = PhaseSample> {
    let mut rng = chunk_rng(seed, k);
    let c = *cov;
    let tail = (1.0 - c.rho12 * c.rho12).max(0.0).sqrt();
    (0..len).map(move |_| {
        let z1: f64 = rng.sample(StandardNormal);
        let z2: f64 = rng.sample(StandardNormal);
        let z3: f64 = rng.sample(StandardNormal);
        PhaseSample {
            phi1: c.sigma1 * z1,
            phi2: c.sigma2 * (c.rho12 * z1 + tail * z2),
            phi_int: c.sigma_int * z3,
        }
    })
}

/// `count` phase triples; identical for a given seed under any policy.
pub fn sample_correlated_phases(
    model: &CorrelatedPhaseModel,
    t: f64,
    count: usize,
    seed: u64,
    policy: ExecPolicy,
) -> Result<Vec<PhaseSample>> {
    if count == 0 {
        return Err(invalid("count", "must be at least 1"));
    }
    let cov = model.covariance(t)?;
    let ranges = chunk_ranges(count, MC_CHUNK);
    let parts = map_indexed(policy, ranges.len(), |k| chunk_samples(&cov, seed, k, ranges[k].len()).collect::<Vec<_>>());
    Ok(parts.concat())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloDensity {
    pub mean: TwoQubitDensity,
    /// Standard error of each element's magnitude.
    pub std_error: Matrix4<f64>,
    pub count: usize,
}

/// Sample mean of U†ρ₀U. Since U is diagonal, element (j, k) is ρ₀_jk times
/// the mean of exp(i(θ_k − θ_j)); diagonal elements are returned unchanged.
pub fn monte_carlo_average(
    rho0: &TwoQubitDensity,
    model: &CorrelatedPhaseModel,
    t: f64,
    count: usize,
    seed: u64,
    policy: ExecPolicy,
) -> Result<MonteCarloDensity> {
    if count == 0 {
        return Err(invalid("count", "must be at least 1"));
    }
    let cov = model.covariance(t)?;
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|j| (j + 1..4).map(move |k| (j, k))).collect();
    let coeffs: Vec<(f64, f64, f64)> = pairs.iter().map(|&(j, k)| phase_difference(j, k)).collect();
    let ranges = chunk_ranges(count, MC_CHUNK);
    let partial = map_indexed(policy, ranges.len(), |k| {
        let mut sums = [Complex64::new(0.0, 0.0); 6];
        for s in chunk_samples(&cov, seed, k, ranges[k].len()) {
            for (sum, &(a, b, c)) in sums.iter_mut().zip(&coeffs) {
                *sum += Complex64::cis(a * s.phi1 + b * s.phi2 + c * s.phi_int);
            }
        }
        sums
    });
    let mut sums = [Complex64::new(0.0, 0.0); 6];
    for part in &partial {
        for (s, p) in sums.iter_mut().zip(part) {
            *s += p;
        }
    }
    let n = count as f64;
    let mut factor = Matrix4::from_element(Complex64::new(1.0, 0.0));
    let mut se = Matrix4::zeros();
    for (&(j, k), s) in pairs.iter().zip(&sums) {
        let m = s / n;
        factor[(j, k)] = m;
        factor[(k, j)] = m.conj();
        // |e^{iθ}|² = 1, so the sample variance is 1 − |m|².
        let err = if count > 1 { ((1.0 - m.norm_sqr()).max(0.0) / (n - 1.0)).sqrt() } else { f64::INFINITY };
        se[(j, k)] = err * rho0.0[(j, k)].norm();
        se[(k, j)] = err * rho0.0[(k, j)].norm();
    }
    Ok(MonteCarloDensity { mean: rho0.scaled(|j, k| factor[(j, k)]), std_error: se, count })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_difference_matches_basis_phases() {
        use super::super::density::basis_phase;
        let (p1, p2, pi) = (0.3, -1.1, 0.7);
        for j in 0..4 {
            for k in 0..4 {
                let (a, b, c) = phase_difference(j, k);
                let direct = basis_phase(k, p1, p2, pi) - basis_phase(j, p1, p2, pi);
                assert!((a * p1 + b * p2 + c * pi - direct).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn decrement_conventions() {
        let cov = CorrelatedPhaseModel::constant(0.8, 0.8, 0.0).covariance(0.0).unwrap();
        assert!((gamma_epr(&cov) - 0.8).abs() < 1e-15);
        assert_eq!(gamma_epr(&cov), gamma_bell(&cov));
        let cov = CorrelatedPhaseModel::constant(0.8, 0.8, 1.0).covariance(0.0).unwrap();
        assert!(gamma_epr(&cov).abs() < 1e-15);
        assert!((gamma_bell(&cov) / (0.8 / 2.0) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_covariance() {
        assert!(matches!(
            CorrelatedPhaseModel::constant(1.0, 1.0, 1.5).covariance(0.0),
            Err(Error::NonPsdCovariance(_))
        ));
        assert!(CorrelatedPhaseModel::constant(-1.0, 1.0, 0.5).covariance(0.0).is_err());
        assert!(CorrelatedPhaseModel::constant(1.0, 1.0, -0.5).covariance(0.0).is_err());
    }

    #[test]
    fn samples_identical_across_policies() {
        let m = CorrelatedPhaseModel::constant(1.0, 2.0, 0.3).with_interaction(0.5);
        let a = sample_correlated_phases(&m, 0.0, 20_000, 5, ExecPolicy::Sequential).unwrap();
        let b = sample_correlated_phases(&m, 0.0, 20_000, 5, ExecPolicy::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
