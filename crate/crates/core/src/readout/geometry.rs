use crate::constants::{CM, CM2, CM3, MU0, NM};
use crate::error::{invalid, require_positive, Result};

/// Tuned pickup circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoilCircuit {
    pub quality_q: f64,
    pub turns_k: f64,
    /// Area of one turn, cm².
    pub turn_area: f64,
    /// Solenoid volume V_s, cm³.
    pub solenoid_volume: f64,
    /// Resistance R, Ω.
    pub resistance: f64,
    /// Amplifier bandwidth Δν, Hz.
    pub bandwidth: f64,
    /// Resonance ω_A, rad/s.
    pub resonance_omega: f64,
}

impl CoilCircuit {
    /// Builds the coil from its electrical parameters, fixing the turn area
    /// through KA = √(R·V_s/(μ₀Qω)).
    pub fn from_resistance(
        quality_q: f64,
        turns_k: f64,
        solenoid_volume: f64,
        resistance: f64,
        bandwidth: f64,
        resonance_omega: f64,
    ) -> Result<Self> {
        require_positive("quality_q", quality_q)?;
        require_positive("solenoid_volume", solenoid_volume)?;
        require_positive("resistance", resistance)?;
        require_positive("bandwidth", bandwidth)?;
        require_positive("resonance_omega", resonance_omega)?;
        if turns_k.is_nan() || turns_k < 1.0 {
            return Err(invalid("turns_k", "at least one turn required"));
        }
        let ka = (resistance * solenoid_volume * CM3 / (MU0 * quality_q * resonance_omega)).sqrt();
        Ok(Self {
            quality_q,
            turns_k,
            turn_area: ka / turns_k / CM2,
            solenoid_volume,
            resistance,
            bandwidth,
            resonance_omega,
        })
    }

    /// Product K·A, m².
    pub fn ka(&self) -> f64 {
        self.turns_k * self.turn_area * CM2
    }

    /// KA implied by R, V_s, Q and ω, m².
    pub fn ka_from_resistance(&self) -> f64 {
        (self.resistance * self.solenoid_volume * CM3 / (MU0 * self.quality_q * self.resonance_omega))
            .sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("quality_q", self.quality_q)?;
        require_positive("turn_area", self.turn_area)?;
        require_positive("solenoid_volume", self.solenoid_volume)?;
        require_positive("resistance", self.resistance)?;
        require_positive("bandwidth", self.bandwidth)?;
        require_positive("resonance_omega", self.resonance_omega)?;
        if self.turns_k.is_nan() || self.turns_k < 1.0 {
            return Err(invalid("turns_k", "at least one turn required"));
        }
        let rel = (self.ka() / self.ka_from_resistance() - 1.0).abs();
        if rel > 1e-6 {
            return Err(invalid(
                "turn_area",
                format!("K·A differs from √(R·V_s/(μ₀Qω)) by {rel:.2e} relative"),
            ));
        }
        Ok(())
    }
}

/// Planar ensemble of n·p blocks, each with N₀ parallel L-qubit molecules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegisterGeometry {
    /// Qubit pitch along a molecule, nm.
    pub pitch_x: f64,
    /// Molecule pitch across the strip, nm.
    pub pitch_y: f64,
    /// Donor depth below the surface, nm.
    pub depth: f64,
    /// Plate thickness δ, cm.
    pub plate_thickness: f64,
    pub qubits_per_molecule: u32,
    pub molecules_per_block: u32,
    pub blocks_n: u32,
    pub blocks_p: u32,
}

impl RegisterGeometry {
    /// The square-plate register: 20 nm × 50 nm pitches, 10³-qubit molecules,
    /// a 0.1 cm plate, N₀ = 100 and n × p = 16 × 63 blocks.
    pub fn square_plate() -> Self {
        Self {
            pitch_x: 20.0,
            pitch_y: 50.0,
            depth: 20.0,
            plate_thickness: 0.1,
            qubits_per_molecule: 1000,
            molecules_per_block: 100,
            blocks_n: 16,
            blocks_p: 63,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("pitch_x", self.pitch_x)?;
        require_positive("pitch_y", self.pitch_y)?;
        require_positive("depth", self.depth)?;
        require_positive("plate_thickness", self.plate_thickness)?;
        for (name, v) in [
            ("qubits_per_molecule", self.qubits_per_molecule),
            ("molecules_per_block", self.molecules_per_block),
        ] {
            if v == 0 {
                return Err(invalid(name, "must be at least 1"));
            }
        }
        Ok(())
    }

    /// N = n·p·N₀.
    pub fn n_molecules(&self) -> f64 {
        f64::from(self.blocks_n) * f64::from(self.blocks_p) * f64::from(self.molecules_per_block)
    }

    /// Volume δ·l_x·l_y·L of one molecule, cm³.
    pub fn molecule_volume(&self) -> f64 {
        self.plate_thickness
            * (self.pitch_x * NM / CM)
            * (self.pitch_y * NM / CM)
            * f64::from(self.qubits_per_molecule)
    }

    /// Effective sample volume V_s = δ·l_x·l_y·L·N, cm³.
    pub fn effective_volume(&self) -> f64 {
        self.molecule_volume() * self.n_molecules()
    }

    /// Molecule length L·l_x, m.
    pub fn molecule_length(&self) -> f64 {
        f64::from(self.qubits_per_molecule) * self.pitch_x * NM
    }

    /// Register length X = n·L·l_x along the solenoid axis, cm.
    pub fn register_length(&self) -> f64 {
        f64::from(self.blocks_n) * self.molecule_length() / CM
    }

    /// Register width D = p·N₀·l_y, cm.
    pub fn register_width(&self) -> f64 {
        f64::from(self.blocks_p) * f64::from(self.molecules_per_block) * self.pitch_y * NM / CM
    }
}

/// Block counts of a square plate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockCounts {
    pub n_exact: f64,
    pub p_exact: f64,
    pub n: u32,
    pub p: u32,
    /// Side of the square, cm.
    pub side: f64,
}

/// Solves n·L·l_x = p·N₀·l_y (square plate) together with n·p·N₀ = N.
pub fn square_plate_blocks(geom: &RegisterGeometry, n_molecules: f64) -> Result<BlockCounts> {
    geom.validate()?;
    require_positive("n_molecules", n_molecules)?;
    let n0 = f64::from(geom.molecules_per_block);
    let lx_l = geom.molecule_length();
    let ly = geom.pitch_y * NM;
    let n_exact = (ly * n_molecules / lx_l).sqrt();
    let p_exact = n_molecules / (n_exact * n0);
    Ok(BlockCounts {
        n_exact,
        p_exact,
        n: n_exact.round().max(1.0) as u32,
        p: p_exact.round().max(1.0) as u32,
        side: n_exact * lx_l / CM,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coil_consistency_enforced() {
        let c = CoilCircuit::from_resistance(1e3, 10.0, 1.0, 1.0, 1.0, 4.7e8).unwrap();
        c.validate().unwrap();
        let bad = CoilCircuit { turn_area: c.turn_area * 1.01, ..c };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn square_plate_numbers() {
        let g = RegisterGeometry::square_plate();
        assert!((g.molecule_volume() / 1e-9 - 1.0).abs() < 1e-12);
        let b = square_plate_blocks(&g, 1e5).unwrap();
        assert_eq!((b.n, b.p), (16, 63));
        assert!((b.side / 0.0316 - 1.0).abs() < 0.01);
        assert!((g.register_length() / (16.0 * 20e-4) - 1.0).abs() < 1e-12);
    }
}
