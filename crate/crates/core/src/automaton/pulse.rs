use super::chain::{ChainState, Sublattice};
use crate::constants::hz_to_rad;
use crate::error::{invalid, Error, Result};
use std::f64::consts::PI;
use std::fmt;

/// Frequency class addressed by a pulse. Dopant and port-neighbour sites
/// resonate apart from the Table classes and are only reached by their own
/// targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PulseTarget {
    A,
    B,
    Dopant,
    PortNeighbor,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    pub target: PulseTarget,
    /// Doubled neighbour sum 2(m_< + m_>) ∈ {−2, …, 2}.
    pub neighbor_sum2: i8,
    /// Rotation angle, rad. Only π is simulated.
    pub angle: f64,
}

impl PulseSpec {
    pub fn pi(target: PulseTarget, neighbor_sum2: i8) -> Result<Self> {
        if !(-2..=2).contains(&neighbor_sum2) {
            return Err(invalid("neighbor_sum", format!("{} outside [-1, 1]", f64::from(neighbor_sum2) / 2.0)));
        }
        Ok(Self { target, neighbor_sum2, angle: PI })
    }
}

fn format_sum2(s: i8) -> &'static str {
    match s {
        -2 => "-1",
        -1 => "-1/2",
        0 => "0",
        1 => "1/2",
        2 => "1",
        _ => "?",
    }
}

impl fmt::Display for PulseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.target {
            PulseTarget::A => "A",
            PulseTarget::B => "B",
            PulseTarget::Dopant => "D",
            PulseTarget::PortNeighbor => "N",
        };
        write!(f, "{t} {} pi", format_sum2(self.neighbor_sum2))
    }
}

/// The ten neighbour-selective pulses on the two sublattices.
pub fn table_pulses() -> Vec<PulseSpec> {
    [PulseTarget::A, PulseTarget::B]
        .into_iter()
        .flat_map(|t| (-2..=2).map(move |s| PulseSpec { target: t, neighbor_sum2: s, angle: PI }))
        .collect()
}

/// One pulse per line, `A -1/2 pi`.
pub fn format_program(program: &[PulseSpec]) -> String {
    program.iter().map(|p| format!("{p}\n")).collect()
}

pub fn parse_program(text: &str) -> Result<Vec<PulseSpec>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [t, s, a] = parts[..] else {
            return Err(Error::Parse(format!("line {}: expected `target sum angle`", n + 1)));
        };
        let target = match t {
            "A" => PulseTarget::A,
            "B" => PulseTarget::B,
            "D" => PulseTarget::Dopant,
            "N" => PulseTarget::PortNeighbor,
            _ => return Err(Error::Parse(format!("line {}: unknown target {t:?}", n + 1))),
        };
        let sum2 = match s {
            "-1" => -2,
            "-1/2" => -1,
            "0" => 0,
            "1/2" => 1,
            "1" => 2,
            _ => return Err(Error::Parse(format!("line {}: bad neighbour sum {s:?}", n + 1))),
        };
        if a != "pi" {
            return Err(Error::Parse(format!("line {}: unsupported angle {a:?}, only pi", n + 1)));
        }
        out.push(PulseSpec::pi(target, sum2)?);
    }
    Ok(out)
}

/// Flips every site in the pulse's frequency class, judged on the pre-pulse
/// state so all flips are simultaneous.
pub fn apply_pulse(chain: &ChainState, pulse: &PulseSpec) -> Result<ChainState> {
    if pulse.angle != PI {
        return Err(invalid("angle", format!("{} rad; only pi pulses are simulated", pulse.angle)));
    }
    let mut out = chain.clone();
    for i in 0..chain.len() {
        let dopant = chain.site(i).marker == super::Marker::DopantPort;
        let neighbor = chain.is_port_neighbor(i);
        let class_match = match pulse.target {
            PulseTarget::Dopant => dopant,
            PulseTarget::PortNeighbor => neighbor,
            PulseTarget::A => !dopant && !neighbor && chain.site(i).sublattice == Sublattice::A,
            PulseTarget::B => !dopant && !neighbor && chain.site(i).sublattice == Sublattice::B,
        };
        if class_match && chain.neighbor_sum2(i) == pulse.neighbor_sum2 {
            out.set_spin(i, chain.spin(i).flipped());
        }
    }
    Ok(out)
}

/// Applies the pulses in order.
pub fn run_program(chain: &ChainState, program: &[PulseSpec]) -> Result<ChainState> {
    program.iter().try_fold(chain.clone(), |c, p| apply_pulse(&c, p))
}

/// Resolution assumed between neighbouring pulse frequencies, rad/s.
pub const DEFAULT_LINEWIDTH: f64 = 2.0 * PI * 0.05e6;

/// Nuclear couplings setting the pulse frequencies, all in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainCouplings {
    pub hyperfine_a: f64,
    /// γI·B.
    pub zeeman: f64,
    /// I_n/ℏ.
    pub spin_spin: f64,
}

impl ChainCouplings {
    /// ³¹P-like hyperfine coupling at 1 T with a 0.5 MHz neighbour coupling.
    pub fn defaults() -> Result<Self> {
        Self::new(hz_to_rad(116e6), 108e6, hz_to_rad(0.5e6))
    }

    /// Checks γI·B, A/2 ≫ I_n (ratio above 10) and that no A-site frequency
    /// lies within [`DEFAULT_LINEWIDTH`] of a B-site one.
    pub fn new(hyperfine_a: f64, zeeman: f64, spin_spin: f64) -> Result<Self> {
        let c = Self { hyperfine_a, zeeman, spin_spin };
        if !(zeeman.abs() > 10.0 * spin_spin.abs() && hyperfine_a.abs() / 2.0 > 10.0 * spin_spin.abs()) {
            return Err(invalid("spin_spin", "neighbour coupling is not small against γI·B and A/2"));
        }
        for sa in -2..=2 {
            for sb in -2..=2 {
                let fa = resonance_frequency(&c, Sublattice::A, sa);
                let fb = resonance_frequency(&c, Sublattice::B, sb);
                if (fa - fb).abs() < DEFAULT_LINEWIDTH {
                    return Err(invalid("couplings", format!("A({sa}/2) and B({sb}/2) collide")));
                }
            }
        }
        Ok(c)
    }
}

/// |γI·B ± A/2 − I_n(m_< + m_>)|, + on A sites.
pub fn resonance_frequency(c: &ChainCouplings, sublattice: Sublattice, neighbor_sum2: i8) -> f64 {
    let sign = match sublattice {
        Sublattice::A => 1.0,
        Sublattice::B => -1.0,
    };
    (c.zeeman + sign * c.hyperfine_a / 2.0 - c.spin_spin * f64::from(neighbor_sum2) / 2.0).abs()
}
