//! Readout signal of a discrete planar spin lattice inside a solenoid, and its
//! continuum approximation.
//!
//! The solenoid axis is x. Its cross-section is the rectangle
//! y ∈ [−D/2, D/2], z ∈ [−δ/2, δ/2] and it spans x ∈ [−X/2, X/2]. Spins sit in
//! the plane z = 0 on a cell-centred grid: n columns at pitch L·l_x along x and
//! p·N₀ rows at pitch l_y along y.

use super::geometry::{CoilCircuit, RegisterGeometry};
use crate::constants::{CM, HBAR, MU0};
use crate::error::{require_positive, Error, Result};
use crate::exec::{map_indexed, ExecPolicy};
use crate::model::DonorSpecies;
use crate::quad::{adapt, QuadOptions};
use std::f64::consts::{E, PI};

/// Quadrature controls for [`discrete_signal`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalResolution {
    /// Target relative error of the x integral.
    pub rel_tol: f64,
    pub max_intervals: usize,
    /// Sites per parallel work item.
    pub chunk: usize,
}

impl Default for SignalResolution {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            max_intervals: 20_000,
            chunk: 256,
        }
    }
}

/// Largest accepted quadrature error estimate, relative to the result.
const MAX_REL_ERROR: f64 = 0.01;

/// Transverse moment per resonant spin, γIℏ/4 (half the spin moment, halved
/// again by the optimal-drive saturation factor).
pub fn spin_moment(species: &DonorSpecies) -> f64 {
    species.gamma_i.abs() * HBAR / 4.0
}

/// −∂Ω/∂u for the solid angle Ω subtended by the rectangle
/// [y1, y2] × [z1, z2] in the plane at distance u. The flux of an x-directed
/// point dipole m through that rectangle is (μ₀m/4π) times this value, m⁻¹.
pub fn rectangle_flux(u: f64, y1: f64, y2: f64, z1: f64, z2: f64) -> f64 {
    let corner = |y: f64, z: f64| {
        let r2 = u * u + y * y + z * z;
        let r = r2.sqrt();
        y * z * (r2 + u * u) / (r * (u * u * r2 + y * y * z * z))
    };
    corner(y2, z2) - corner(y1, z2) - corner(y2, z1) + corner(y1, z1)
}

fn cell_centres(count: u64, pitch: f64) -> Vec<f64> {
    let half = count as f64 / 2.0;
    (0..count).map(|i| (i as f64 + 0.5 - half) * pitch).collect()
}

/// |V_max| of the discrete lattice: Qω(K/X)·∫|Φ(x)|dx over the solenoid,
/// with Φ(x) the exact flux of all spin dipoles through the cross-section at
/// x. `solenoid_length` and `plate_width` are X and D in cm.
pub fn discrete_signal(
    geom: &RegisterGeometry,
    species: &DonorSpecies,
    coil: &CoilCircuit,
    solenoid_length: f64,
    plate_width: f64,
    resolution: SignalResolution,
    policy: ExecPolicy,
) -> Result<f64> {
    geom.validate()?;
    require_positive("solenoid_length", solenoid_length)?;
    require_positive("plate_width", plate_width)?;
    let columns = u64::from(geom.blocks_n);
    let rows = u64::from(geom.blocks_p) * u64::from(geom.molecules_per_block);
    if columns == 0 || rows == 0 {
        return Ok(0.0);
    }
    let xs = cell_centres(columns, geom.molecule_length());
    let ys = cell_centres(rows, geom.pitch_y * 1e-9);
    let half_x = solenoid_length * CM / 2.0;
    let half_d = plate_width * CM / 2.0;
    let half_t = geom.plate_thickness * CM / 2.0;

    let chunk = resolution.chunk.max(1);
    let n_chunks = ys.len().div_ceil(chunk);
    let flux = |x: f64| -> f64 {
        let parts = map_indexed(policy, n_chunks, |c| {
            let rows = &ys[c * chunk..((c + 1) * chunk).min(ys.len())];
            let mut s = 0.0;
            for &xi in &xs {
                let u = x - xi;
                for &yj in rows {
                    s += rectangle_flux(u, -half_d - yj, half_d - yj, -half_t, half_t);
                }
            }
            s
        });
        parts.iter().sum::<f64>().abs()
    };

    let mut breaks: Vec<f64> = std::iter::once(-half_x)
        .chain(xs.iter().copied().filter(|x| x.abs() < half_x))
        .chain(std::iter::once(half_x))
        .collect();
    breaks.dedup();
    let opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: resolution.rel_tol,
        max_intervals: resolution.max_intervals.max(breaks.len()),
    };
    let r = adapt(flux, &breaks, opts);
    if r.error > MAX_REL_ERROR * r.value.abs() {
        return Err(Error::Quadrature {
            estimate: r.error,
            allowed: MAX_REL_ERROR * r.value.abs(),
        });
    }
    let x_len = solenoid_length * CM;
    Ok(coil.quality_q * coil.resonance_omega * coil.turns_k / x_len * MU0 * spin_moment(species)
        / (4.0 * PI)
        * r.value)
}

/// The "non-essential factor" (X/πD)·log(X/(δ√e)). Lengths in any common
/// unit. Zero at X = δ√e; a domain error below it.
pub fn continuum_factor(solenoid_length: f64, plate_width: f64, thickness: f64) -> Result<f64> {
    let arg = solenoid_length / (thickness * E.sqrt());
    if arg < 1.0 {
        return Err(Error::Domain(format!(
            "X = {solenoid_length:.4e} is below δ√e = {:.4e}; the continuum log is negative",
            thickness * E.sqrt()
        )));
    }
    Ok(solenoid_length / (PI * plate_width) * arg.ln())
}

/// Bulk signal (μ₀/4)·Q·K·A·ω·(N/V_s)·γIℏ of a fully polarized sample with
/// A = D·δ and V_s = A·X, V.
pub fn planar_bulk_signal(
    geom: &RegisterGeometry,
    species: &DonorSpecies,
    coil: &CoilCircuit,
    solenoid_length: f64,
    plate_width: f64,
) -> f64 {
    let area = plate_width * CM * geom.plate_thickness * CM;
    let volume = area * solenoid_length * CM;
    MU0 / 4.0
        * coil.quality_q
        * coil.turns_k
        * area
        * coil.resonance_omega
        * (geom.n_molecules() / volume)
        * species.gamma_i.abs()
        * HBAR
}

/// Continuum (Poisson-summed, ν = 0) signal: the bulk signal times
/// (X/πD)·log(X/(δ√e)). Requires X > 10δ.
pub fn continuum_signal(
    geom: &RegisterGeometry,
    species: &DonorSpecies,
    coil: &CoilCircuit,
    solenoid_length: f64,
    plate_width: f64,
) -> Result<f64> {
    geom.validate()?;
    require_positive("solenoid_length", solenoid_length)?;
    require_positive("plate_width", plate_width)?;
    let delta = geom.plate_thickness;
    if solenoid_length <= 10.0 * delta {
        return Err(Error::Domain(format!(
            "continuum form needs X > 10δ, got X = {solenoid_length:.4e} cm, δ = {delta:.4e} cm"
        )));
    }
    let factor = continuum_factor(solenoid_length, plate_width, delta)?;
    Ok(planar_bulk_signal(geom, species, coil, solenoid_length, plate_width) * factor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coil() -> CoilCircuit {
        CoilCircuit::from_resistance(1e3, 100.0, 1e-6, 1.0, 1.0, 4.73e8).unwrap()
    }

    fn single(thickness_cm: f64) -> RegisterGeometry {
        RegisterGeometry {
            pitch_x: 20.0,
            pitch_y: 50.0,
            depth: 20.0,
            plate_thickness: thickness_cm,
            qubits_per_molecule: 1,
            molecules_per_block: 1,
            blocks_n: 1,
            blocks_p: 1,
        }
    }

    /// Ω of the rectangle centred on the axis at distance u.
    fn solid_angle(u: f64, hy: f64, hz: f64) -> f64 {
        let f = |y: f64, z: f64| (y * z / (u * (u * u + y * y + z * z).sqrt())).atan();
        f(hy, hz) - f(-hy, hz) - f(hy, -hz) + f(-hy, -hz)
    }

    #[test]
    fn flux_is_derivative_of_solid_angle() {
        let (hy, hz) = (3e-6, 1e-6);
        for u in [1e-7, 2e-6, 5e-5] {
            let h = u * 1e-5;
            let fd = -(solid_angle(u + h, hy, hz) - solid_angle(u - h, hy, hz)) / (2.0 * h);
            let k = rectangle_flux(u, -hy, hy, -hz, hz);
            assert!((fd / k - 1.0).abs() < 1e-6, "u = {u}: {fd} vs {k}");
        }
    }

    #[test]
    fn single_spin_matches_endpoint_solid_angle() {
        // ∫|Φ|dx over [−X/2, X/2] = (μ₀m/2π)(2π − Ω(X/2)).
        let s = DonorSpecies::p31();
        let c = coil();
        let (x_cm, d_cm, t_cm) = (4e-4, 2e-4, 1e-4);
        let g = single(t_cm);
        let v = discrete_signal(&g, &s, &c, x_cm, d_cm, SignalResolution::default(), ExecPolicy::Sequential)
            .unwrap();
        let omega = solid_angle(x_cm * CM / 2.0, d_cm * CM / 2.0, t_cm * CM / 2.0);
        let integral = MU0 * spin_moment(&s) / (2.0 * PI) * (2.0 * PI - omega);
        let expected = c.quality_q * c.resonance_omega * c.turns_k / (x_cm * CM) * integral;
        assert!((v / expected - 1.0).abs() < 1e-6, "{v} vs {expected}");
    }

    #[test]
    fn empty_lattice_is_silent() {
        let g = RegisterGeometry { blocks_n: 0, ..single(1e-4) };
        let v = discrete_signal(&g, &DonorSpecies::p31(), &coil(), 1e-3, 1e-3, Default::default(), ExecPolicy::Sequential);
        assert_eq!(v.unwrap(), 0.0);
    }

    #[test]
    fn continuum_factor_boundary_and_domain() {
        let t = 1e-4;
        assert_eq!(continuum_factor(t * E.sqrt(), 1.0, t).unwrap(), 0.0);
        assert!(continuum_factor(t, 1.0, t).is_err());
    }

    #[test]
    fn continuum_over_bulk_is_the_factor() {
        let g = RegisterGeometry { plate_thickness: 2e-6, ..RegisterGeometry::square_plate() };
        let s = DonorSpecies::p31();
        let (x, d) = (g.register_length(), g.register_width());
        let ratio = continuum_signal(&g, &s, &coil(), x, d).unwrap() / planar_bulk_signal(&g, &s, &coil(), x, d);
        assert!((ratio / continuum_factor(x, d, 2e-6).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn policies_bit_identical() {
        let g = RegisterGeometry {
            qubits_per_molecule: 16,
            molecules_per_block: 8,
            blocks_n: 4,
            blocks_p: 8,
            plate_thickness: 2e-6,
            ..RegisterGeometry::square_plate()
        };
        let s = DonorSpecies::p31();
        let res = SignalResolution { chunk: 7, ..Default::default() };
        let (x, d) = (g.register_length(), g.register_width());
        let a = discrete_signal(&g, &s, &coil(), x, d, res, ExecPolicy::Sequential).unwrap();
        let b = discrete_signal(&g, &s, &coil(), x, d, res, ExecPolicy::Parallel).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
