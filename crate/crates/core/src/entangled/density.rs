use crate::error::{invalid, Result};
use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

/// Spin signs (s₁, s₂) of the basis states in order.
pub const BASIS: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// Phase of basis state `k` under (φ₁, φ₂, φ_I).
pub(crate) fn basis_phase(k: usize, phi1: f64, phi2: f64, phi_int: f64) -> f64 {
    let (s1, s2) = (BASIS[k].0 as f64, BASIS[k].1 as f64);
    0.5 * (phi1 * s1 + phi2 * s2) + phi_int * s1 * s2
}

/// Diagonal unitary of the adiabatic phase evolution.
pub fn phase_unitary(phi1: f64, phi2: f64, phi_int: f64) -> Matrix4<Complex64> {
    Matrix4::from_diagonal(&Vector4::from_fn(|k, _| Complex64::cis(basis_phase(k, phi1, phi2, phi_int))))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitDensity(pub Matrix4<Complex64>);

impl TwoQubitDensity {
    pub fn from_pure(amplitudes: [Complex64; 4]) -> Result<Self> {
        let v = Vector4::from(amplitudes);
        let norm = v.norm();
        if norm == 0.0 {
            return Err(invalid("amplitudes", "zero vector"));
        }
        let v = v / Complex64::from(norm);
        Ok(Self(v * v.adjoint()))
    }

    /// a·aᵀ/|a|², exact for entries in {0, ±1}.
    fn real_pure(a: [f64; 4]) -> Self {
        let n2: f64 = a.iter().map(|x| x * x).sum();
        Self(Matrix4::from_fn(|j, k| Complex64::from(a[j] * a[k] / n2)))
    }

    /// (|↑↓⟩ + |↓↑⟩)/√2.
    pub fn epr_triplet() -> Self {
        Self::real_pure([0.0, 1.0, 1.0, 0.0])
    }

    /// (|↑↓⟩ − |↓↑⟩)/√2.
    pub fn epr_singlet() -> Self {
        Self::real_pure([0.0, 1.0, -1.0, 0.0])
    }

    /// (|↑↑⟩ ± |↓↓⟩)/√2.
    pub fn bell(plus: bool) -> Self {
        Self::real_pure([1.0, 0.0, 0.0, if plus { 1.0 } else { -1.0 }])
    }

    /// √(1−α)|↑↓⟩ + √α|↓↑⟩.
    pub fn partially_entangled(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(invalid("alpha", format!("{alpha} outside [0, 1]")));
        }
        let mut m = Matrix4::zeros();
        let c = ((1.0 - alpha) * alpha).sqrt();
        m[(1, 1)] = Complex64::from(1.0 - alpha);
        m[(2, 2)] = Complex64::from(alpha);
        m[(1, 2)] = Complex64::from(c);
        m[(2, 1)] = Complex64::from(c);
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    /// Largest |ρ − ρ†| entry.
    pub fn hermiticity_error(&self) -> f64 {
        (self.0 - self.0.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn eigenvalues(&self) -> Vector4<f64> {
        self.0.symmetric_eigenvalues()
    }

    pub fn validate(&self) -> Result<()> {
        if self.hermiticity_error() > 1e-14 {
            return Err(invalid("density", "not hermitian"));
        }
        if (self.trace() - 1.0).abs() > 1e-14 {
            return Err(invalid("density", format!("trace {}", self.trace())));
        }
        if self.eigenvalues().min() < -1e-12 {
            return Err(invalid("density", "negative eigenvalue"));
        }
        Ok(())
    }

    /// U†ρU for the phase triple.
    pub fn conjugate(&self, phi1: f64, phi2: f64, phi_int: f64) -> Self {
        let u = phase_unitary(phi1, phi2, phi_int);
        Self(u.adjoint() * self.0 * u)
    }

    /// Each element ρ_jk multiplied by `factor(j, k)`.
    pub(crate) fn scaled(&self, factor: impl Fn(usize, usize) -> Complex64) -> Self {
        Self(Matrix4::from_fn(|j, k| self.0[(j, k)] * factor(j, k)))
    }
}
