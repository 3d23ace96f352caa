use crate::constants::{HBAR, K_B};
use crate::error::{invalid, require_non_negative, require_positive, Result};
use crate::model::TransitionSet;
use nalgebra::{Matrix4, Vector4};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Populations {
    pub p11: f64,
    pub p10: f64,
    pub p1m1: f64,
    pub p00: f64,
}

impl Populations {
    pub fn from_vector(v: &Vector4<f64>) -> Self {
        Self { p11: v[0], p10: v[1], p1m1: v[2], p00: v[3] }
    }

    pub fn to_vector(self) -> Vector4<f64> {
        Vector4::new(self.p11, self.p10, self.p1m1, self.p00)
    }

    pub fn sum(&self) -> f64 {
        self.p11 + self.p10 + self.p1m1 + self.p00
    }

    /// Boltzmann populations at `temp` with level energies taken from the
    /// transition gaps relative to |0,0⟩.
    pub fn thermal(transitions: &TransitionSet, temp: f64) -> Self {
        let beta = HBAR / (K_B * temp);
        // Energies above |0,0⟩ in units of ℏ: ω_B, ω_D, ω_A⁺, 0.
        let e = [transitions.omega_b, transitions.omega_d, transitions.omega_a_plus, 0.0];
        let e_min = e.iter().copied().fold(f64::INFINITY, f64::min);
        let w = e.map(|x| (-(x - e_min) * beta).exp());
        let z: f64 = w.iter().sum();
        Self { p11: w[0] / z, p10: w[1] / z, p1m1: w[2] / z, p00: w[3] / z }
    }

    pub fn polarization(&self) -> PolarizationPair {
        PolarizationPair {
            p_s: self.p11 + self.p10 - self.p1m1 - self.p00,
            p_i: self.p11 + self.p00 - self.p10 - self.p1m1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("p11", self.p11), ("p10", self.p10), ("p1m1", self.p1m1), ("p00", self.p00)] {
            if !(-1e-12..=1.0 + 1e-12).contains(&p) {
                return Err(invalid(name, format!("population {p} outside [0, 1]")));
            }
        }
        if (self.sum() - 1.0).abs() > 1e-10 {
            return Err(invalid("populations", format!("sum is {}", self.sum())));
        }
        Ok(())
    }
}

/// Electron and nuclear polarizations P_S = 2⟨S_z⟩, P_I = 2⟨I_z⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationPair {
    pub p_s: f64,
    pub p_i: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationRates {
    /// τ∥B, s.
    pub tau_b: f64,
    /// τ∥C, s.
    pub tau_c: f64,
    /// τ∥D, s.
    pub tau_d: f64,
    /// τ∥S, s. Enters only the saturation conditions.
    pub tau_s: f64,
    /// T∥A, s.
    pub t_par_a: f64,
    /// Forbidden-transition pump rate W_e, 1/s.
    pub w_pump: f64,
    /// Bath temperature for the Boltzmann ratios, K.
    pub temp: f64,
}

impl RelaxationRates {
    pub fn validate(&self) -> Result<()> {
        require_positive("tau_b", self.tau_b)?;
        require_positive("tau_c", self.tau_c)?;
        require_positive("tau_d", self.tau_d)?;
        require_positive("tau_s", self.tau_s)?;
        require_positive("t_par_a", self.t_par_a)?;
        require_positive("temp", self.temp)?;
        require_non_negative("w_pump", self.w_pump)
    }

    fn ratio(&self, omega: f64) -> f64 {
        (-HBAR * omega / (K_B * self.temp)).exp()
    }
}

/// Full rate equations with thermal up/down ratios r = exp(−ℏω/kT) on the B,
/// C, D and A± channels and the pump W_e on the S transition.
pub fn full_rate_derivative(pops: &Populations, rates: &RelaxationRates, tr: &TransitionSet) -> Populations {
    let Populations { p11, p10, p1m1, p00 } = *pops;
    let RelaxationRates { tau_b, tau_c, tau_d, t_par_a: ta, w_pump: w, .. } = *rates;
    let r_b = rates.ratio(tr.omega_b);
    let r_c = rates.ratio(tr.omega_c);
    let r_d = rates.ratio(tr.omega_d);
    let r_ap = rates.ratio(tr.omega_a_plus);
    let r_am = rates.ratio(tr.omega_a_minus);
    Populations {
        p00: (p11 - p00 * r_b) / tau_b + (p10 - p00 * r_d) / tau_d + (p1m1 - p00 * r_ap) / ta,
        p1m1: (p10 - p1m1 * r_c) / tau_c + (p11 - p1m1) * w + (p00 * r_ap - p1m1) / ta,
        p10: (p1m1 * r_c - p10) / tau_c + (p00 * r_d - p10) / tau_d + (p11 - p10 * r_am) / ta,
        p11: (p00 * r_b - p11) / tau_b + (p1m1 - p11) * w + (p10 * r_am - p11) / ta,
    }
}

/// Reduced four-level system for cold electrons and hot nuclei, with one
/// electron time τ∥B for both electron-relaxing channels.
pub fn reduced_system_derivative(pops: &Populations, rates: &RelaxationRates) -> Populations {
    let Populations { p11, p10, p1m1, p00 } = *pops;
    let (tb, ta, w) = (rates.tau_b, rates.t_par_a, rates.w_pump);
    Populations {
        p00: p11 / tb + (p1m1 - p00) / ta,
        p1m1: p10 / tb + (p11 - p1m1) * w + (p00 - p1m1) / ta,
        p10: -p10 / tb + (p11 - p10) / ta,
        p11: -p11 / tb + (p1m1 - p11) * w + (p10 - p11) / ta,
    }
}

/// Two-variable form dP_S/dt = −(P_S+P_I)W − (P_S+1)/τ∥B,
/// dP_I/dt = −(P_S+P_I)W − P_I/T∥A.
pub fn reduced_rate_derivative(pol: &PolarizationPair, rates: &RelaxationRates) -> PolarizationPair {
    let drive = -(pol.p_s + pol.p_i) * rates.w_pump;
    PolarizationPair {
        p_s: drive - (pol.p_s + 1.0) / rates.tau_b,
        p_i: drive - pol.p_i / rates.t_par_a,
    }
}

fn generator_of(f: impl Fn(&Populations) -> Populations) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    for k in 0..4 {
        let mut e = Vector4::zeros();
        e[k] = 1.0;
        m.set_column(k, &f(&Populations::from_vector(&e)).to_vector());
    }
    m
}

/// Matrix M of the full system dp/dt = M·p.
pub fn full_generator(rates: &RelaxationRates, tr: &TransitionSet) -> Matrix4<f64> {
    generator_of(|p| full_rate_derivative(p, rates, tr))
}

/// Matrix M of the reduced system dp/dt = M·p.
pub fn reduced_generator(rates: &RelaxationRates) -> Matrix4<f64> {
    generator_of(|p| reduced_system_derivative(p, rates))
}

/// Normalized stationary vector of a generator, solving M·p = 0 with the
/// last equation replaced by Σp = 1.
pub fn steady_state(generator: &Matrix4<f64>) -> Result<Populations> {
    let mut a = *generator;
    a.set_row(3, &nalgebra::RowVector4::repeat(1.0));
    let rhs = Vector4::new(0.0, 0.0, 0.0, 1.0);
    a.lu()
        .solve(&rhs)
        .map(|v| Populations::from_vector(&v))
        .ok_or_else(|| invalid("generator", "stationary state is not unique"))
}
