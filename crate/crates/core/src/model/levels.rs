use super::{DonorSpecies, Environment};
use crate::constants::HBAR;
use nalgebra::Matrix4;

/// One eigenstate |F, m_F⟩ of the donor Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperfineLevel {
    pub f: u8,
    pub m_f: i8,
    /// Energy, J.
    pub energy: f64,
    /// Weight α of the minority product state. Zero for the stretched states
    /// |1,±1⟩, α(X) for the mixed pair |1,0⟩ and |0,0⟩.
    pub mixing_alpha: f64,
}

/// Transition angular frequencies (rad/s) between the four levels, each the
/// signed gap E(upper) − E(lower) divided by ℏ.
///
/// | field | upper | lower |
/// |---|---|---|
/// | `omega_a_plus` | \|1,−1⟩ | \|0,0⟩ |
/// | `omega_a_minus` | \|1,1⟩ | \|1,0⟩ |
/// | `omega_b` | \|1,1⟩ | \|0,0⟩ |
/// | `omega_c` | \|1,0⟩ | \|1,−1⟩ |
/// | `omega_d` | \|1,0⟩ | \|0,0⟩ |
/// | `omega_s` | \|1,1⟩ | \|1,−1⟩ |
///
/// `omega_a_minus` changes sign near γIℏB = A/2 (about 3.4 T for ³¹P); all
/// others are positive for every B > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionSet {
    pub omega_a_plus: f64,
    pub omega_a_minus: f64,
    pub omega_b: f64,
    pub omega_c: f64,
    pub omega_d: f64,
    pub omega_s: f64,
}

/// X = (γe + γI)ℏB/A.
pub fn field_parameter(species: &DonorSpecies, env: &Environment) -> f64 {
    (species.gamma_e + species.gamma_i) * env.b_field / species.hyperfine_a
}

/// α = ½(1 − X/√(1+X²)), evaluated without cancellation for large X.
pub fn mixing_alpha(x: f64) -> f64 {
    let r = x.hypot(1.0);
    if x > 0.0 {
        // 1 − X/r = 1/(r(r + X))
        0.5 / (r * (r + x))
    } else {
        0.5 * (1.0 - x / r)
    }
}

fn sign(v: f64) -> f64 {
    if v < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Breit-Rabi energy E(F, m_F), J.
fn breit_rabi(species: &DonorSpecies, env: &Environment, f: u8, m_f: i8) -> f64 {
    let a = species.hyperfine_energy();
    let x = field_parameter(species, env);
    let m = f64::from(m_f);
    let parity = if f.is_multiple_of(2) { 1.0 } else { -1.0 };
    -a / 4.0
        - species.gamma_i * HBAR * env.b_field * m
        - parity * sign(1.0 + m * x) * (a / 2.0) * (1.0 + 2.0 * m * x + x * x).max(0.0).sqrt()
}

/// The four levels ordered by ascending energy.
pub fn breit_rabi_levels(species: &DonorSpecies, env: &Environment) -> [HyperfineLevel; 4] {
    let alpha = mixing_alpha(field_parameter(species, env));
    let mut levels = [(1, 1, 0.0), (1, 0, alpha), (1, -1, 0.0), (0, 0, alpha)].map(|(f, m_f, a)| {
        HyperfineLevel {
            f,
            m_f,
            energy: breit_rabi(species, env, f, m_f),
            mixing_alpha: a,
        }
    });
    levels.sort_by(|p, q| p.energy.total_cmp(&q.energy));
    levels
}

pub fn transition_frequencies(species: &DonorSpecies, env: &Environment) -> TransitionSet {
    let e = |f, m| breit_rabi(species, env, f, m);
    let (e11, e10, e1m1, e00) = (e(1, 1), e(1, 0), e(1, -1), e(0, 0));
    TransitionSet {
        omega_a_plus: (e1m1 - e00) / HBAR,
        omega_a_minus: (e11 - e10) / HBAR,
        omega_b: (e11 - e00) / HBAR,
        omega_c: (e10 - e1m1) / HBAR,
        omega_d: (e10 - e00) / HBAR,
        omega_s: (e11 - e1m1) / HBAR,
    }
}

/// Spin Hamiltonian γeℏB·S_z − γIℏB·I_z + A·S·I in the product basis
/// |S_z, I_z⟩ = (+½,+½), (+½,−½), (−½,+½), (−½,−½), J.
pub fn hyperfine_hamiltonian(species: &DonorSpecies, env: &Environment) -> Matrix4<f64> {
    let a = species.hyperfine_energy();
    let ze = species.gamma_e * HBAR * env.b_field;
    let zi = species.gamma_i * HBAR * env.b_field;
    let spins = [(0.5, 0.5), (0.5, -0.5), (-0.5, 0.5), (-0.5, -0.5)];
    let mut h = Matrix4::zeros();
    for (k, &(s, i)) in spins.iter().enumerate() {
        h[(k, k)] = ze * s - zi * i + a * s * i;
    }
    h[(1, 2)] = a / 2.0;
    h[(2, 1)] = a / 2.0;
    h
}

/// Large-X expansion γIB + A/2ℏ + A/(4Xℏ) of ω_A⁺. Comparison only.
///
/// Expanding √(1+X²) ≈ X + 1/(2X) puts the correction term at +A/4X; the
/// opposite sign is off by 3·10⁻³ relative at 1 T for ³¹P.
pub fn omega_a_plus_large_x(species: &DonorSpecies, env: &Environment) -> f64 {
    let a = species.hyperfine_a;
    let x = field_parameter(species, env);
    species.gamma_i * env.b_field + a / 2.0 + a / (4.0 * x)
}

/// Large-X expansion −γIB + A/2ℏ − A/(4Xℏ) of ω_A⁻. Comparison only.
pub fn omega_a_minus_large_x(species: &DonorSpecies, env: &Environment) -> f64 {
    let a = species.hyperfine_a;
    let x = field_parameter(species, env);
    -species.gamma_i * env.b_field + a / 2.0 - a / (4.0 * x)
}

/// Diagonal nuclear magnetization ⟨M_z⟩ of the two lowest states, J/T per atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnetizationElements {
    /// ⟨0,0|M_z|0,0⟩ = (X/√(1+X²))·γIℏ/2.
    pub mz_ground: f64,
    /// ⟨1,−1|M_z|1,−1⟩ = −γIℏ/2.
    pub mz_excited: f64,
}

pub fn magnetization_elements(species: &DonorSpecies, env: &Environment) -> MagnetizationElements {
    let x = field_parameter(species, env);
    let half = species.gamma_i * HBAR / 2.0;
    MagnetizationElements {
        mz_ground: x / x.hypot(1.0) * half,
        mz_excited: -half,
    }
}
