use super::rates::{reduced_generator, Populations, RelaxationRates};
use crate::error::{invalid, require_positive, Error, Result};
use nalgebra::{Matrix4, Vector4};
use std::io::{self, Write};

/// Diagonal coefficient of the two-stage L-stable SDIRK method.
const GAMMA: f64 = 1.0 - std::f64::consts::FRAC_1_SQRT_2;
const MAX_STEPS: usize = 1_000_000;
/// Components below this are treated as a failed step rather than clipped.
const NEGATIVE_FLOOR: f64 = -1e-12;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct IntegratorStats {
    pub accepted: usize,
    pub rejected: usize,
    pub min_step: f64,
    pub max_step: f64,
    /// Largest |Σp − 1| seen on any accepted step.
    pub max_sum_error: f64,
    /// Smallest population seen on any accepted step.
    pub min_population: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Populations>,
    pub stats: IntegratorStats,
}

impl Trajectory {
    pub fn terminal(&self) -> Populations {
        *self.states.last().expect("trajectory holds the initial state")
    }
}

fn sdirk_step(m: &Matrix4<f64>, y: &Vector4<f64>, h: f64) -> Option<Vector4<f64>> {
    let lu = (Matrix4::identity() - m * (h * GAMMA)).lu();
    let y1 = lu.solve(y)?;
    // Stiffly accurate: the second stage is the new state.
    lu.solve(&(y + m * y1 * (h * (1.0 - GAMMA))))
}

/// Integrates dp/dt = M·p over [0, duration] with step doubling on an
/// L-stable second-order SDIRK scheme. Every accepted step is recorded.
pub fn integrate_linear(
    generator: &Matrix4<f64>,
    initial: Populations,
    duration: f64,
    tol: f64,
) -> Result<Trajectory> {
    require_positive("duration", duration)?;
    if !(1e-12..1e-3).contains(&tol) {
        return Err(invalid("tol", format!("{tol} outside (1e-12, 1e-3)")));
    }
    initial.validate()?;

    let scale = generator.amax();
    let mut h = if scale > 0.0 { (0.01 * tol.cbrt() / scale).min(duration) } else { duration };
    let mut t = 0.0;
    let mut y = initial.to_vector();
    let mut times = vec![0.0];
    let mut states = vec![initial];
    let mut stats = IntegratorStats {
        min_step: f64::INFINITY,
        max_sum_error: (y.sum() - 1.0).abs(),
        min_population: y.min(),
        ..Default::default()
    };

    while t < duration {
        if stats.accepted + stats.rejected >= MAX_STEPS {
            return Err(Error::StepFailure { t, h, reason: "step budget exhausted".into() });
        }
        let last = duration - t <= h * (1.0 + 1e-12);
        if last {
            h = duration - t;
        }
        let full = sdirk_step(generator, &y, h);
        let half = sdirk_step(generator, &y, 0.5 * h).and_then(|mid| sdirk_step(generator, &mid, 0.5 * h));
        let (full, half) = match (full, half) {
            (Some(f), Some(s)) => (f, s),
            _ => return Err(Error::StepFailure { t, h, reason: "singular stage matrix".into() }),
        };
        let err = (half - full).amax() / 3.0 / tol;
        if err <= 1.0 && half.min() >= NEGATIVE_FLOOR {
            t = if last { duration } else { t + h };
            y = half;
            stats.accepted += 1;
            stats.min_step = stats.min_step.min(h);
            stats.max_step = stats.max_step.max(h);
            stats.max_sum_error = stats.max_sum_error.max((y.sum() - 1.0).abs());
            stats.min_population = stats.min_population.min(y.min());
            times.push(t);
            states.push(Populations::from_vector(&y));
        } else {
            stats.rejected += 1;
        }
        let factor = if err > 0.0 { 0.9 * err.powf(-1.0 / 3.0) } else { 5.0 };
        let factor = if half.min() < NEGATIVE_FLOOR { factor.min(0.5) } else { factor };
        h *= factor.clamp(0.2, 5.0);
        if h <= f64::EPSILON * t.max(duration * 1e-6) {
            return Err(Error::StepFailure { t, h, reason: "step size underflow".into() });
        }
    }
    Ok(Trajectory { times, states, stats })
}

/// Integrates the reduced four-level pumping system.
pub fn integrate_dnp(initial: Populations, rates: &RelaxationRates, duration: f64, tol: f64) -> Result<Trajectory> {
    rates.validate()?;
    integrate_linear(&reduced_generator(rates), initial, duration, tol)
}

/// Writes `t,p11,p10,p1m1,p00,P_S,P_I` rows with twelve significant digits.
pub fn write_trajectory_csv<W: Write>(traj: &Trajectory, mut out: W) -> io::Result<()> {
    writeln!(out, "t,p11,p10,p1m1,p00,P_S,P_I")?;
    for (t, p) in traj.times.iter().zip(&traj.states) {
        let pol = p.polarization();
        writeln!(
            out,
            "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}",
            t, p.p11, p.p10, p.p1m1, p.p00, pol.p_s, pol.p_i
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dnp::steady_state;

    fn rates(w: f64) -> RelaxationRates {
        RelaxationRates { tau_b: 1.0, tau_c: 1.0, tau_d: 1e6, tau_s: 1e6, t_par_a: 1e4, w_pump: w, temp: 0.1 }
    }

    fn cold_start() -> Populations {
        Populations { p11: 0.0, p10: 0.0, p1m1: 0.5, p00: 0.5 }
    }

    #[test]
    fn decays_like_exponential() {
        let m = Matrix4::new(
            -2.0, 0.0, 0.0, 0.0, //
            2.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0,
        );
        let start = Populations { p11: 1.0, p10: 0.0, p1m1: 0.0, p00: 0.0 };
        let traj = integrate_linear(&m, start, 3.0, 1e-9).unwrap();
        for (t, p) in traj.times.iter().zip(&traj.states) {
            // Local error per step is held at tol; the global error sums them.
            assert!((p.p11 - (-2.0 * t).exp()).abs() < 1e-6, "t = {t}");
        }
        assert_eq!(*traj.times.last().unwrap(), 3.0);
    }

    #[test]
    fn unpumped_equilibrium_is_constant() {
        let r = rates(0.0);
        let eq = steady_state(&reduced_generator(&r)).unwrap();
        let traj = integrate_dnp(eq, &r, 100.0, 1e-9).unwrap();
        for p in &traj.states {
            assert!((p.to_vector() - eq.to_vector()).amax() < 1e-12);
        }
    }

    #[test]
    fn saturation_drives_nuclei_polarized() {
        let r = rates(0.1);
        let traj = integrate_dnp(cold_start(), &r, 10.0 * r.t_par_a, 1e-9).unwrap();
        assert!(traj.terminal().polarization().p_i >= 0.99);
        assert!(traj.stats.max_sum_error < 1e-10);
        assert!(traj.stats.min_population >= -1e-12);
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(integrate_dnp(cold_start(), &rates(1.0), 1.0, 1e-2).is_err());
        assert!(integrate_dnp(cold_start(), &rates(1.0), 0.0, 1e-6).is_err());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let traj = integrate_dnp(cold_start(), &rates(1.0), 1.0, 1e-6).unwrap();
        let mut buf = Vec::new();
        write_trajectory_csv(&traj, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,p11,p10,p1m1,p00,P_S,P_I\n"));
        assert_eq!(text.lines().count(), traj.times.len() + 1);
    }
}
