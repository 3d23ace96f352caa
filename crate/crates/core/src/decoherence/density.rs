use crate::error::{invalid, Result};
use nalgebra::Matrix2;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl BlochVector {
    pub fn new(px: f64, py: f64, pz: f64) -> Result<Self> {
        let v = Self { px, py, pz };
        if v.length() > 1.0 + 1e-12 {
            return Err(invalid("bloch", format!("length {} exceeds 1", v.length())));
        }
        Ok(v)
    }

    pub fn length(&self) -> f64 {
        (self.px * self.px + self.py * self.py + self.pz * self.pz).sqrt()
    }

    /// Transverse components scaled by e^(−Γ).
    pub fn dephased(&self, gamma_t: f64) -> Self {
        let k = (-gamma_t).exp();
        Self { px: self.px * k, py: self.py * k, pz: self.pz }
    }

    /// ρ = ½(1 + P·σ).
    pub fn density(&self) -> Matrix2<Complex64> {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        Matrix2::new(
            c(0.5 * (1.0 + self.pz), 0.0),
            c(0.5 * self.px, -0.5 * self.py),
            c(0.5 * self.px, 0.5 * self.py),
            c(0.5 * (1.0 - self.pz), 0.0),
        )
    }
}

/// Phase-averaged density matrix: populations kept, coherences scaled by
/// e^(−Γ).
pub fn dephase_density(rho0: &BlochVector, gamma_t: f64) -> Matrix2<Complex64> {
    let mut rho = rho0.density();
    let k = (-gamma_t).exp();
    rho[(0, 1)] *= k;
    rho[(1, 0)] *= k;
    rho
}

/// ½(1 ± √(P² − (Px²+Py²)(1 − e^(−2Γ)))) in ascending order; P² = 1 for a
/// pure initial state.
pub fn dephased_eigenvalues(rho0: &BlochVector, gamma_t: f64) -> (f64, f64) {
    let transverse = rho0.px * rho0.px + rho0.py * rho0.py;
    let length2 = transverse + rho0.pz * rho0.pz;
    let r = (length2 - transverse * (-2.0 * gamma_t).exp_m1().abs()).max(0.0).sqrt();
    (0.5 * (1.0 - r), 0.5 * (1.0 + r))
}
