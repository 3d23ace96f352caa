use crate::error::{require_non_negative, require_positive, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    HyperfineElectron,
    ImpurityDipole,
    Custom,
}

/// Stationary Gaussian frequency noise with ⟨Δω(t)Δω(0)⟩ = ⟨Δω²⟩e^(−t/τ₁).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseChannel {
    /// ⟨Δω²⟩, (rad/s)².
    pub variance: f64,
    /// τ₁, s.
    pub corr_time: f64,
    pub kind: ChannelKind,
}

impl NoiseChannel {
    pub fn new(variance: f64, corr_time: f64, kind: ChannelKind) -> Result<Self> {
        require_non_negative("variance", variance)?;
        require_positive("corr_time", corr_time)?;
        Ok(Self { variance, corr_time, kind })
    }

    pub fn custom(variance: f64, corr_time: f64) -> Result<Self> {
        Self::new(variance, corr_time, ChannelKind::Custom)
    }
}

/// x − 1 + e^(−x) without cancellation at small x.
fn ramp(x: f64) -> f64 {
    if x < 1e-3 {
        x * x * (0.5 - x * (1.0 / 6.0 - x * (1.0 / 24.0 - x / 120.0)))
    } else {
        x + (-x).exp_m1()
    }
}

/// Γ(t) = ⟨Δω²⟩τ₁²(t/τ₁ − 1 + e^(−t/τ₁)).
pub fn decrement(channel: &NoiseChannel, t: f64) -> f64 {
    let tau = channel.corr_time;
    channel.variance * tau * tau * ramp(t.max(0.0) / tau)
}

/// ⟨Δω²⟩t²/2, valid for t ≪ τ₁.
pub fn decrement_short_time(channel: &NoiseChannel, t: f64) -> f64 {
    0.5 * channel.variance * t * t
}

/// ⟨Δω²⟩τ₁t, valid for t ≫ τ₁.
pub fn decrement_long_time(channel: &NoiseChannel, t: f64) -> f64 {
    channel.variance * channel.corr_time * t
}

/// Time at which Γ reaches ½. Infinite for a silent channel.
pub fn dephasing_time(channel: &NoiseChannel) -> f64 {
    if channel.variance == 0.0 {
        return f64::INFINITY;
    }
    let mut hi = channel.variance.sqrt().recip();
    while decrement(channel, hi) < 0.5 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if decrement(channel, mid) < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DephasingRegime {
    /// ⟨Δω²⟩τ₁² ≫ 1: the phase is lost before the noise decorrelates.
    Quadratic,
    /// ⟨Δω²⟩τ₁² ≪ 1: motional narrowing, Γ grows linearly.
    Linear,
    Crossover,
}

/// Classification by ⟨Δω²⟩τ₁², with "≫" read as a factor of 100.
pub fn classify_regime(channel: &NoiseChannel) -> DephasingRegime {
    let s = channel.variance * channel.corr_time * channel.corr_time;
    if s >= 100.0 {
        DephasingRegime::Quadratic
    } else if s <= 0.01 {
        DephasingRegime::Linear
    } else {
        DephasingRegime::Crossover
    }
}

/// Adiabatic limit ω·τ₂ > 1 with τ₁/τ₂ > 10 standing in for τ₂ ≪ τ₁.
pub fn adiabaticity_check(channel: &NoiseChannel, omega_carrier: f64, tau2: f64) -> Result<bool> {
    require_positive("omega_carrier", omega_carrier)?;
    require_positive("tau2", tau2)?;
    Ok(omega_carrier * tau2 > 1.0 && channel.corr_time / tau2 > 10.0)
}
