//! Static scenario registry. Each scenario declares its parameters and the
//! files it writes; the runner rejects any run whose directory differs from
//! the declaration.

use crate::config::{Dimension as D, ParamSpec, Params};
use crate::error::{CliError, CliResult};
use crate::output::{num, write_csv};
use crate::verify;
use ensemble_nmr::automaton::{encode_logical, ChainState};
use ensemble_nmr::constants::{HBAR, K_B};
use ensemble_nmr::decoherence::{
    allowed_concentration, classify_regime, decrement, decrement_long_time, decrement_short_time,
    dephasing_time, dipolar_coefficient_mc, hyperfine_variance, impurity_variance, required_field_over_temp,
    ImpuritySpec, NoiseChannel, DIPOLAR_COEFFICIENT,
};
use ensemble_nmr::dnp::{
    integrate_dnp, pump_rate_estimate, reduced_generator, saturation_power, steady_state, write_trajectory_csv,
    Populations, RelaxationRates,
};
use ensemble_nmr::entangled::{
    averaged_density, gamma_bell, gamma_epr, monte_carlo_average, CorrelatedPhaseModel, TwoQubitDensity,
};
use ensemble_nmr::model::{breit_rabi_levels, transition_frequencies, DonorSpecies, Environment};
use ensemble_nmr::readout::{
    continuum_factor, continuum_signal, discrete_signal, planar_bulk_signal, snr_bulk, snr_bulk_estimate,
    snr_ensemble, snr_ensemble_folded, square_plate_blocks, CoilCircuit, RegisterGeometry, SignalResolution,
};
use ensemble_nmr::{Error, ExecPolicy};
use std::path::Path;

type RunFn = fn(&Params, u64, &Path) -> CliResult<()>;

/// A registered scenario.
pub struct ScenarioDef {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
    /// Files written into the scenario directory, sorted.
    pub outputs: &'static [&'static str],
    run: RunFn,
}

impl ScenarioDef {
    /// Runs the scenario into `dir`, which must exist and be empty.
    pub fn run(&self, params: &Params, seed: u64, dir: &Path) -> CliResult<()> {
        (self.run)(params, seed, dir)
    }
}

const fn p(key: &'static str, dim: D, default: f64, help: &'static str) -> ParamSpec {
    ParamSpec { key, dim, default, help }
}

/// The registry in listing order.
pub static REGISTRY: &[ScenarioDef] = &[
    ScenarioDef {
        name: "breit-rabi-sweep",
        summary: "level energies and the six transition frequencies over a log-spaced field grid",
        params: &[
            p("b_min", D::Field, 0.01, "lowest field"),
            p("b_max", D::Field, 10.0, "highest field"),
            p("points", D::Count, 200.0, "grid points"),
        ],
        outputs: &["levels.csv"],
        run: breit_rabi_sweep,
    },
    ScenarioDef {
        name: "snr-ensemble",
        summary: "fully polarized planar register: minimum N for S/N = 1 and square-plate block counts",
        params: &[
            p("b_field", D::Field, 1.0, "static field"),
            p("quality_q", D::Ratio, 1e6, "coil quality factor"),
            p("n_molecules", D::Ratio, 1e5, "target number of molecules"),
            p("reduced_energy", D::Ratio, 1.0, "hbar*omega_A+/kT_I fixing the noise temperature"),
            p("pitch_x", D::Length, 20e-9, "qubit pitch along a molecule"),
            p("pitch_y", D::Length, 50e-9, "molecule pitch"),
            p("plate_thickness", D::Length, 1e-3, "plate thickness"),
            p("qubits_per_molecule", D::Count, 1000.0, "L"),
            p("molecules_per_block", D::Count, 100.0, "N0"),
        ],
        outputs: &["ensemble.csv"],
        run: snr_ensemble_scenario,
    },
    ScenarioDef {
        name: "snr-bulk",
        summary: "liquid-state S/N against molecule count and the S/N = 1 crossover",
        params: &[
            p("quality_q", D::Ratio, 1e3, "coil quality factor"),
            p("volume", D::Volume, 1e-6, "sample volume"),
            p("temperature", D::Temperature, 300.0, "sample and coil temperature"),
            p("reduced_energy", D::Ratio, 2e-5, "hbar*omega/kT fixing the resonance"),
            p("qubits", D::Count, 2.0, "qubits per molecule"),
            p("turns", D::Count, 20.0, "coil turns"),
            p("resistance", D::Resistance, 2.0, "coil resistance"),
            p("bandwidth", D::Cyclic, 1.0, "amplifier bandwidth"),
            p("n_min", D::Ratio, 1e12, "smallest molecule count"),
            p("n_max", D::Ratio, 1e20, "largest molecule count"),
            p("points", D::Count, 81.0, "grid points"),
        ],
        outputs: &["crossover.csv", "snr.csv"],
        run: snr_bulk_scenario,
    },
    ScenarioDef {
        name: "dnp-trajectory",
        summary: "reduced rate equations from thermal start and the algebraic fixed point",
        params: &[
            p("b_field", D::Field, 3.0, "static field"),
            p("temperature", D::Temperature, 0.3, "bath temperature"),
            p("tau_b", D::Time, 1.0, "electron relaxation time"),
            p("tau_c", D::Time, 1.0, "electron relaxation time of the C channel"),
            p("tau_d", D::Time, 1e12, "relaxation time of the D channel"),
            p("tau_s", D::Time, 1e12, "relaxation time of the S channel"),
            p("t_par_a", D::Time, 1e4, "nuclear relaxation time"),
            p("w_pump", D::Rate, 0.1, "forbidden-transition pump rate"),
            p("duration", D::Time, 2e5, "integration time"),
            p("tol", D::Ratio, 1e-10, "local error tolerance per step"),
        ],
        outputs: &["summary.csv", "trajectory.csv"],
        run: dnp_trajectory,
    },
    ScenarioDef {
        name: "microwave-power",
        summary: "incident microwave power bound for a target pump rate",
        params: &[
            p("b_field", D::Field, 3.5, "static field"),
            p("temperature", D::Temperature, 1.0, "lattice temperature"),
            p("omega_s", D::Angular, 1e11, "pumped transition frequency"),
            p("cavity_volume", D::Volume, 1e-6, "cavity volume"),
            p("cavity_q", D::Ratio, 1e3, "cavity quality factor"),
            p("linewidth", D::Angular, 1e8, "inhomogeneous linewidth"),
            p("pump_rate", D::Rate, 1e3, "target pump rate"),
            p("mw_amp", D::Field, 0.0, "applied microwave field for the saturation check"),
        ],
        outputs: &["power.csv"],
        run: microwave_power,
    },
    ScenarioDef {
        name: "decoherence-thresholds",
        summary: "field-over-temperature threshold, a decrement curve and its regime",
        params: &[
            p("target_rate", D::Rate, 1.0, "admissible dephasing rate"),
            p("b_field", D::Field, 2.0, "operating field"),
            p("temperature", D::Temperature, 0.06, "operating temperature"),
            p("variance", D::RateSquared, 1.0, "noise variance of the decrement curve"),
            p("corr_time", D::Time, 1.0, "noise correlation time of the decrement curve"),
            p("t_max", D::Ratio, 10.0, "curve length in correlation times"),
            p("points", D::Count, 101.0, "curve points"),
        ],
        outputs: &["channel.csv", "decrement.csv", "threshold.csv"],
        run: decoherence_thresholds,
    },
    ScenarioDef {
        name: "impurity-bound",
        summary: "allowed 29Si fraction and a Monte-Carlo check of the dipolar coefficient",
        params: &[
            p("b_field", D::Field, 2.0, "static field"),
            p("temperature", D::Temperature, 0.1, "lattice temperature"),
            p("temp_imp", D::Temperature, 0.8e-3, "impurity nuclear spin temperature"),
            p("target_rate", D::Rate, 1.0, "admissible dephasing rate"),
            p("concentration", D::Ratio, 0.047, "impurity fraction to compare"),
            p("samples", D::Count, 1e6, "Monte-Carlo impurity draws"),
            p("outer", D::Ratio, 10.0, "outer shell radius in lattice spacings"),
        ],
        outputs: &["bound.csv", "coefficient.csv"],
        run: impurity_bound,
    },
    ScenarioDef {
        name: "epr-mc",
        summary: "dephased EPR triplet: analytic average against Monte Carlo",
        params: ENTANGLED_PARAMS,
        outputs: &["decrements.csv", "density.csv"],
        run: epr_mc,
    },
    ScenarioDef {
        name: "bell-mc",
        summary: "dephased Bell state: analytic average against Monte Carlo",
        params: ENTANGLED_PARAMS,
        outputs: &["decrements.csv", "density.csv"],
        run: bell_mc,
    },
    ScenarioDef {
        name: "chain-demo",
        summary: "shortest Table-pulse program writing a logical bit into a ground chain",
        params: &[
            p("length", D::Count, 8.0, "chain length"),
            p("position", D::Count, 0.0, "first site of the window"),
            p("bit", D::Count, 0.0, "logical value"),
        ],
        outputs: &["program.csv"],
        run: chain_demo,
    },
    ScenarioDef {
        name: "discrete-signal",
        summary: "discrete lattice readout signal against the continuum and bulk forms",
        params: &[
            p("b_field", D::Field, 1.0, "static field"),
            p("quality_q", D::Ratio, 1e6, "coil quality factor"),
            p("blocks_n", D::Count, 8.0, "blocks along the solenoid axis"),
            p("blocks_p", D::Count, 8.0, "blocks across"),
            p("molecules_per_block", D::Count, 8.0, "N0"),
            p("qubits_per_molecule", D::Count, 16.0, "L"),
            p("pitch_x", D::Length, 20e-9, "qubit pitch along a molecule"),
            p("pitch_y", D::Length, 50e-9, "molecule pitch"),
            p("plate_thickness", D::Length, 20e-9, "plate thickness"),
            p("rel_tol", D::Ratio, 1e-6, "quadrature tolerance"),
        ],
        outputs: &["signal.csv"],
        run: discrete_signal_scenario,
    },
    ScenarioDef {
        name: "paper-numbers",
        summary: "headline values of the acceptance suite with pass/fail against tolerances",
        params: &[],
        outputs: &["table.csv"],
        run: paper_numbers,
    },
];

const ENTANGLED_PARAMS: &[ParamSpec] = &[
    p("sigma1_sq", D::Ratio, 0.8, "phase variance of qubit 1, rad^2"),
    p("sigma2_sq", D::Ratio, 0.8, "phase variance of qubit 2, rad^2"),
    p("rho12", D::Ratio, 0.5, "phase correlation"),
    p("sigma_int_sq", D::Ratio, 0.0, "interaction phase variance, rad^2"),
    p("samples", D::Count, 1e5, "Monte-Carlo samples"),
];

pub fn find(name: &str) -> Option<&'static ScenarioDef> {
    REGISTRY.iter().find(|s| s.name == name)
}

fn p31() -> DonorSpecies {
    DonorSpecies::p31()
}

fn fail(scenario: &str) -> impl Fn(Error) -> CliError + '_ {
    move |source| CliError::Scenario {
        scenario: scenario.to_string(),
        source,
    }
}

fn bad(scenario: &str, name: &'static str, reason: &str) -> CliError {
    fail(scenario)(Error::InvalidParameter {
        name,
        reason: reason.to_string(),
    })
}

fn u32_param(scenario: &str, params: &Params, key: &'static str) -> CliResult<u32> {
    u32::try_from(params.count(key)).map_err(|_| bad(scenario, key, "exceeds 32 bits"))
}

/// `points` values spaced logarithmically over [lo, hi].
fn log_grid(scenario: &str, lo: f64, hi: f64, points: u64) -> CliResult<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo) {
        return Err(bad(scenario, "range", "need 0 < min <= max"));
    }
    if points == 0 {
        return Err(bad(scenario, "points", "need at least one point"));
    }
    if points == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..points)
        .map(|k| (a + (b - a) * k as f64 / (points - 1) as f64).exp())
        .collect())
}

fn breit_rabi_sweep(params: &Params, _: u64, dir: &Path) -> CliResult<()> {
    let name = "breit-rabi-sweep";
    let s = p31();
    let grid = log_grid(name, params.get("b_min"), params.get("b_max"), params.count("points"))?;
    let rows = grid
        .iter()
        .map(|&b| {
            let env = Environment::new(b, 1.0);
            let levels = breit_rabi_levels(&s, &env);
            let energy = |f: u8, m: i8| {
                levels.iter().find(|l| l.f == f && l.m_f == m).map_or(f64::NAN, |l| l.energy / HBAR)
            };
            let t = transition_frequencies(&s, &env);
            [
                b,
                energy(1, 1),
                energy(1, 0),
                energy(1, -1),
                energy(0, 0),
                t.omega_a_plus,
                t.omega_a_minus,
                t.omega_b,
                t.omega_c,
                t.omega_d,
                t.omega_s,
            ]
            .map(num)
            .to_vec()
        })
        .collect::<Vec<_>>();
    write_csv(
        dir,
        "levels.csv",
        &[
            "b_field_t",
            "e_1_1_rad_s",
            "e_1_0_rad_s",
            "e_1_m1_rad_s",
            "e_0_0_rad_s",
            "omega_a_plus",
            "omega_a_minus",
            "omega_b",
            "omega_c",
            "omega_d",
            "omega_s",
        ],
        &rows,
    )
}

fn snr_ensemble_scenario(params: &Params, _: u64, dir: &Path) -> CliResult<()> {
    let name = "snr-ensemble";
    let s = p31();
    let b = params.get("b_field");
    let x = params.get("reduced_energy");
    if x.is_nan() || x <= 0.0 {
        return Err(bad(name, "reduced_energy", "must be positive"));
    }
    let omega = transition_frequencies(&s, &Environment::new(b, 1.0)).omega_a_plus;
    let temp_nuclear = HBAR * omega / (K_B * x);
    let env = Environment::new(b, temp_nuclear);
    let base = RegisterGeometry {
        pitch_x: params.get("pitch_x") / 1e-9,
        pitch_y: params.get("pitch_y") / 1e-9,
        depth: 20.0,
        plate_thickness: params.get("plate_thickness") / 1e-2,
        qubits_per_molecule: u32_param(name, params, "qubits_per_molecule")?,
        molecules_per_block: u32_param(name, params, "molecules_per_block")?,
        blocks_n: 1,
        blocks_p: 1,
    };
    let q = params.get("quality_q");
    let blocks = square_plate_blocks(&base, params.get("n_molecules")).map_err(fail(name))?;
    let g = RegisterGeometry { blocks_n: blocks.n, blocks_p: blocks.p, ..base };
    let r = snr_ensemble(&s, &env, &g, q).map_err(fail(name))?;
    let row = vec![
        num(omega),
        num(temp_nuclear),
        num(r.n_min),
        num(blocks.n_exact),
        num(blocks.p_exact),
        blocks.n.to_string(),
        blocks.p.to_string(),
        num(blocks.side),
        num(r.snr),
        num(snr_ensemble_folded(&g, q)),
    ];
    write_csv(
        dir,
        "ensemble.csv",
        &[
            "omega_a_plus",
            "temp_nuclear_k",
            "n_min",
            "n_exact",
            "p_exact",
            "blocks_n",
            "blocks_p",
            "side_cm",
            "snr",
            "snr_folded",
        ],
        &[row],
    )
}

fn snr_bulk_scenario(params: &Params, _: u64, dir: &Path) -> CliResult<()> {
    let name = "snr-bulk";
    let s = p31();
    let temp = params.get("temperature");
    let omega = params.get("reduced_energy") * K_B * temp / HBAR;
    let q = params.get("quality_q");
    let volume_cm3 = params.get("volume") / 1e-6;
    let coil = CoilCircuit::from_resistance(
        q,
        params.get("turns"),
        volume_cm3,
        params.get("resistance"),
        params.get("bandwidth"),
        omega,
    )
    .map_err(fail(name))?;
    let env = Environment::new(1.0, temp);
    let l = u32_param(name, params, "qubits")?;
    let grid = log_grid(name, params.get("n_min"), params.get("n_max"), params.count("points"))?;
    let rows = grid
        .iter()
        .map(|&n| {
            snr_bulk(&s, &env, &coil, n, l)
                .map(|r| vec![num(n), num(r.snr), num(r.signal), num(r.noise)])
                .map_err(fail(name))
        })
        .collect::<CliResult<Vec<_>>>()?;
    write_csv(dir, "snr.csv", &["n_molecules", "snr", "signal_v", "noise_v"], &rows)?;
    let unit = snr_bulk(&s, &env, &coil, 1.0, l).map_err(fail(name))?;
    let estimate = snr_bulk_estimate(q, volume_cm3, omega, temp, 1.0, unit.epsilon);
    write_csv(
        dir,
        "crossover.csv",
        &["omega_rad_s", "epsilon", "n_crossover", "n_crossover_estimate"],
        &[vec![num(omega), num(unit.epsilon), num(1.0 / unit.snr), num(1.0 / estimate)]],
    )
}

fn dnp_trajectory(params: &Params, _: u64, dir: &Path) -> CliResult<()> {
    let name = "dnp-trajectory";
    let rates = RelaxationRates {
        tau_b: params.get("tau_b"),
        tau_c: params.get("tau_c"),
        tau_d: params.get("tau_d"),
        tau_s: params.get("tau_s"),
        t_par_a: params.get("t_par_a"),
        w_pump: params.get("w_pump"),
        temp: params.get("temperature"),
    };
    let tr = transition_frequencies(&p31(), &Environment::new(params.get("b_field"), rates.temp));
    let start = Populations::thermal(&tr, rates.temp);
    let traj = integrate_dnp(start, &rates, params.get("duration"), params.get("tol")).map_err(fail(name))?;
    let path = dir.join("trajectory.csv");
    let file = std::fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
    write_trajectory_csv(&traj, std::io::BufWriter::new(file)).map_err(|e| CliError::io(&path, e))?;
    let end = traj.terminal();
    let fixed = steady_state(&reduced_generator(&rates)).map_err(fail(name))?;
    let (pe, pf) = (end.polarization(), fixed.polarization());
    let row = vec![
        num(pe.p_s),
        num(pe.p_i),
        num(pf.p_s),
        num(pf.p_i),
        num((end.to_vector() - fixed.to_vector()).amax()),
        num(traj.stats.max_sum_error),
        traj.stats.accepted.to_string(),
        traj.stats.rejected.to_string(),
    ];
    write_csv(
        dir,
        "summary.csv",
        &[
            "p_s_end",
            "p_i_end",
            "p_s_fixed",
            "p_i_fixed",
            "distance_to_fixed",
            "max_sum_error",
            "accepted_steps",
            "rejected_steps",
        ],
        &[row],
    )
}

fn microwave_power(params: &Params, _: u64, dir: &Path) -> CliResult<()> {
    let name = "microwave-power";
    let s = p31();
    let env = Environment {
        mw_amp: params.get("mw_amp"),
        ..Environment::new(params.get("b_field"), params.get("temperature"))
    };
    let mut tr = transition_frequencies(&s, &env);
    tr.omega_s = params.get("omega_s");
    let linewidth = params.get("linewidth");
    let r = saturation_power(
        &s,
        &env,
        &tr,
        params.get("cavity_volume") / 1e-6,
        params.get("cavity_q"),
        linewidth,
        params.get("pump_rate"),
    )
    .map_err(fail(name))?;
    write_csv(
        dir,
        "power.csv",
        &["power_w", "b_mw_t", "w_s_at_b_mw", "saturation_at_bound", "saturation_at_env", "saturated"],
        &[vec![
            num(r.power),
            num(r.b_mw),
            num(pump_rate_estimate(&s, r.b_mw, linewidth)),
            num(r.saturation_at_bound),
            num(r.saturation_at_env),
            u8::from(r.saturated).to_string(),
        ]],
    )
}

fn decoherence_thresholds(params: &Params, _: u64, dir: &Path) -> CliResult<()> {
    let name = "decoherence-thresholds";
    let s = p31();
    let rate = params.get("target_rate");
    let t = required_field_over_temp(&s, rate).map_err(fail(name))?;
    let (b, temp) = (params.get("b_field"), params.get("temperature"));
    let variance = hyperfine_variance(&s, &Environment::new(b, temp));
    write_csv(
        dir,
        "threshold.csv",
        &["target_rate", "b_over_t_exact", "b_over_t_approx", "b_over_t", "variance", "satisfied"],
        &[vec![
            num(rate),
            num(t.exact),
            num(t.approx),
            num(b / temp),
            num(variance),
            u8::from(variance <= rate * rate).to_string(),
        ]],
    )?;

    let c = NoiseChannel::custom(params.get("variance"), params.get("corr_time")).map_err(fail(name))?;
    let points = params.count("points");
    if points < 2 {
        return Err(bad(name, "points", "need at least two points"));
    }
    let t_max = params.get("t_max") * c.corr_time;
    let rows = (0..points)
        .map(|k| {
            let t = t_max * k as f64 / (points - 1) as f64;
            let g = decrement(&c, t);
            vec![num(t), num(g), num(decrement_short_time(&c, t)), num(decrement_long_time(&c, t)), num((-g).exp())]
        })
        .collect::<Vec<_>>();
    write_csv(dir, "decrement.csv", &["t_s", "gamma", "gamma_short", "gamma_long", "coherence"], &rows)?;
    write_csv(
        dir,
        "channel.csv",
        &["variance", "corr_time_s", "regime", "dephasing_time_s"],
        &[vec![
            num(c.variance),
            num(c.corr_time),
            format!("{:?}", classify_regime(&c)),
            num(dephasing_time(&c)),
        ]],
    )
}

fn impurity_bound(params: &Params, seed: u64, dir: &Path) -> CliResult<()> {
    let name = "impurity-bound";
    let s = p31();
    let env = Environment::new(params.get("b_field"), params.get("temperature"));
    let temp_imp = params.get("temp_imp");
    let rate = params.get("target_rate");
    let allowed = allowed_concentration(&s, &ImpuritySpec::si29(0.0, temp_imp), &env, rate).map_err(fail(name))?;
    let given = ImpuritySpec::si29(params.get("concentration"), temp_imp);
    let variance = impurity_variance(&s, &given, &env).map_err(fail(name))?;
    write_csv(
        dir,
        "bound.csv",
        &["temp_imp_k", "allowed_fraction", "concentration", "variance", "excess"],
        &[vec![
            num(temp_imp),
            num(allowed),
            num(given.concentration),
            num(variance),
            num(given.concentration / allowed),
        ]],
    )?;
    let samples = usize::try_from(params.count("samples")).map_err(|_| bad(name, "samples", "too large"))?;
    let outer = params.get("outer");
    let est = dipolar_coefficient_mc(samples, outer, seed, ExecPolicy::Parallel).map_err(fail(name))?;
    write_csv(
        dir,
        "coefficient.csv",
        &["analytic", "shell", "mc_mean", "mc_std_error", "samples"],
        &[vec![
            num(DIPOLAR_COEFFICIENT),
            num(DIPOLAR_COEFFICIENT * (1.0 - outer.powi(-3))),
            num(est.mean),
            num(est.std_error),
            est.samples.to_string(),
        ]],
    )
}

fn entangled(name: &str, rho0: TwoQubitDensity, params: &Params, seed: u64, dir: &Path) -> CliResult<()> {
    let model = CorrelatedPhaseModel::constant(params.get("sigma1_sq"), params.get("sigma2_sq"), params.get("rho12"))
        .with_interaction(params.get("sigma_int_sq"));
    let cov = model.covariance(0.0).map_err(fail(name))?;
    write_csv(
        dir,
        "decrements.csv",
        &["gamma_single_1", "gamma_single_2", "gamma_epr", "gamma_bell"],
        &[vec![
            num(model.sigma1_sq.at(0.0) / 2.0),
            num(model.sigma2_sq.at(0.0) / 2.0),
            num(gamma_epr(&cov)),
            num(gamma_bell(&cov)),
        ]],
    )?;
    let count = usize::try_from(params.count("samples")).map_err(|_| bad(name, "samples", "too large"))?;
    let exact = averaged_density(&rho0, &model, 0.0).map_err(fail(name))?;
    let mc = monte_carlo_average(&rho0, &model, 0.0, count, seed, ExecPolicy::Parallel).map_err(fail(name))?;
    let rows = (0..4)
        .flat_map(|j| (0..4).map(move |k| (j, k)))
        .map(|(j, k)| {
            let (e, m) = (exact.0[(j, k)], mc.mean.0[(j, k)]);
            vec![
                j.to_string(),
                k.to_string(),
                num(e.re),
                num(e.im),
                num(m.re),
                num(m.im),
                num(mc.std_error[(j, k)]),
            ]
        })
        .collect::<Vec<_>>();
    write_csv(dir, "density.csv", &["row", "col", "re_exact", "im_exact", "re_mc", "im_mc", "std_error"], &rows)
}

fn epr_mc(params: &Params, seed: u64, dir: &Path) -> CliResult<()> {
    entangled("epr-mc", TwoQubitDensity::epr_triplet(), params, seed, dir)
}

fn bell_mc(params: &Params, seed: u64, dir: &Path) -> CliResult<()> {
    entangled("bell-mc", TwoQubitDensity::bell(true), params, seed, dir)
}

fn chain_demo(params: &Params, _: u64, dir: &Path) -> CliResult<()> {
    let name = "chain-demo";
    let len = usize::try_from(params.count("length")).map_err(|_| bad(name, "length", "too large"))?;
    let position = usize::try_from(params.count("position")).map_err(|_| bad(name, "position", "too large"))?;
    let bit = u8::try_from(params.count("bit")).map_err(|_| bad(name, "bit", "must be 0 or 1"))?;
    let ground = ChainState::ground(len).map_err(fail(name))?;
    let enc = encode_logical(&ground, position, bit).map_err(fail(name))?;
    let mut rows = vec![vec!["0".to_string(), String::new(), ground.to_arrows()]];
    let mut state = ground;
    for (k, pulse) in enc.program.iter().enumerate() {
        state = ensemble_nmr::automaton::apply_pulse(&state, pulse).map_err(fail(name))?;
        rows.push(vec![(k + 1).to_string(), pulse.to_string(), state.to_arrows()]);
    }
    debug_assert_eq!(state, enc.state);
    write_csv(dir, "program.csv", &["step", "pulse", "state"], &rows)
}

fn discrete_signal_scenario(params: &Params, _: u64, dir: &Path) -> CliResult<()> {
    let name = "discrete-signal";
    let s = p31();
    let g = RegisterGeometry {
        pitch_x: params.get("pitch_x") / 1e-9,
        pitch_y: params.get("pitch_y") / 1e-9,
        depth: 20.0,
        plate_thickness: params.get("plate_thickness") / 1e-2,
        qubits_per_molecule: u32_param(name, params, "qubits_per_molecule")?,
        molecules_per_block: u32_param(name, params, "molecules_per_block")?,
        blocks_n: u32_param(name, params, "blocks_n")?,
        blocks_p: u32_param(name, params, "blocks_p")?,
    };
    let (x, d) = (g.register_length(), g.register_width());
    let omega = transition_frequencies(&s, &Environment::new(params.get("b_field"), 1.0)).omega_a_plus;
    let coil = CoilCircuit::from_resistance(params.get("quality_q"), 100.0, x * d * g.plate_thickness, 1.0, 1.0, omega)
        .map_err(fail(name))?;
    let res = SignalResolution { rel_tol: params.get("rel_tol"), ..Default::default() };
    let discrete = discrete_signal(&g, &s, &coil, x, d, res, ExecPolicy::Parallel).map_err(fail(name))?;
    let continuum = continuum_signal(&g, &s, &coil, x, d).map_err(fail(name))?;
    let bulk = planar_bulk_signal(&g, &s, &coil, x, d);
    let factor = continuum_factor(x, d, g.plate_thickness).map_err(fail(name))?;
    write_csv(
        dir,
        "signal.csv",
        &[
            "x_cm",
            "d_cm",
            "thickness_cm",
            "discrete_v",
            "continuum_v",
            "bulk_v",
            "continuum_factor",
            "discrete_over_continuum",
            "discrete_over_bulk",
        ],
        &[[x, d, g.plate_thickness, discrete, continuum, bulk, factor, discrete / continuum, discrete / bulk]
            .map(num)
            .to_vec()],
    )
}

fn paper_numbers(_: &Params, seed: u64, dir: &Path) -> CliResult<()> {
    let rows = verify::evaluate_all(seed)
        .iter()
        .flat_map(|o| {
            o.checks.iter().map(move |c| {
                vec![
                    o.id.to_string(),
                    o.title.to_string(),
                    c.name.clone(),
                    c.value.map_or("error".to_string(), num),
                    c.target.clone(),
                    if c.passed { "PASS" } else { "FAIL" }.to_string(),
                    c.note.clone(),
                ]
            })
        })
        .collect::<Vec<_>>();
    write_csv(dir, "table.csv", &["criterion", "title", "check", "value", "target", "status", "note"], &rows)
}
