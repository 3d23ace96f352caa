use crate::error::{require_positive, Result};
use crate::model::DonorSpecies;
use nalgebra::{Matrix3, Vector3};

/// Effective nuclear relaxation times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationPair {
    /// T⊥I, s.
    pub t_perp: f64,
    /// T∥I, s.
    pub t_par: f64,
}

impl RelaxationPair {
    pub fn validate(&self) -> Result<()> {
        require_positive("t_perp", self.t_perp)?;
        require_positive("t_par", self.t_par)
    }

    /// T⊥ > T∥ is unphysical for a single spin but not rejected.
    pub fn is_suspicious(&self) -> bool {
        self.t_perp > self.t_par
    }
}

/// Drive amplitude b_eff = 1/(γI·√(T⊥T∥)) maximizing the transverse response, T.
pub fn optimal_drive(species: &DonorSpecies, relax: &RelaxationPair) -> f64 {
    1.0 / (species.gamma_i.abs() * (relax.t_perp * relax.t_par).sqrt())
}

/// Rotating-frame Bloch generator and source: dM/dt = A·M + s.
fn bloch_system(
    gamma: f64,
    relax: &RelaxationPair,
    m_zm: f64,
    drive_beff: f64,
    detuning: f64,
) -> (Matrix3<f64>, Vector3<f64>) {
    // Field in the rotating frame: drive along −y, residual detuning/γ along z.
    let b = Vector3::new(0.0, -drive_beff, detuning / gamma);
    // γ·(M × B) as a matrix acting on M.
    let cross = Matrix3::new(0.0, b.z, -b.y, -b.z, 0.0, b.x, b.y, -b.x, 0.0) * gamma;
    let decay = Matrix3::from_diagonal(&Vector3::new(
        1.0 / relax.t_perp,
        1.0 / relax.t_perp,
        1.0 / relax.t_par,
    ));
    (cross - decay, Vector3::new(0.0, 0.0, m_zm / relax.t_par))
}

/// Steady state `(mx, my, mz)` of the Bloch equations with two relaxation
/// times under a circularly polarized drive of amplitude `drive_beff`
/// (rotating-wave treatment of the linear 2b_eff·cos ωt field). `detuning` is
/// ω_A − ω in rad/s. The drive phase is chosen so that on resonance the
/// absorptive response appears as positive `mx`.
pub fn bloch_steady_state(
    species: &DonorSpecies,
    relax: &RelaxationPair,
    m_zm: f64,
    drive_beff: f64,
    detuning: f64,
) -> Result<(f64, f64, f64)> {
    relax.validate()?;
    let (a, s) = bloch_system(species.gamma_i.abs(), relax, m_zm, drive_beff, detuning);
    let m = a
        .lu()
        .solve(&(-s))
        .expect("Bloch generator is invertible for positive relaxation times");
    Ok((m.x, m.y, m.z))
}

/// Max-norm of dM/dt at `m`, relative to M_zm/T∥.
pub fn bloch_residual(
    species: &DonorSpecies,
    relax: &RelaxationPair,
    m_zm: f64,
    drive_beff: f64,
    detuning: f64,
    m: (f64, f64, f64),
) -> f64 {
    let (a, s) = bloch_system(species.gamma_i.abs(), relax, m_zm, drive_beff, detuning);
    let r = a * Vector3::new(m.0, m.1, m.2) + s;
    r.amax() / (m_zm.abs() / relax.t_par)
}
