//! Config execution: one output directory per scenario, a deterministic
//! `manifest.json` and a separate `timings.txt`.

use crate::config::{self, Params};
use crate::error::{CliError, CliResult};
use crate::scenarios::{self, ScenarioDef};
use crate::{derive_seed, DEFAULT_SEED};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

pub const MANIFEST_FILE: &str = "manifest.json";
pub const TIMINGS_FILE: &str = "timings.txt";

/// A validated scenario ready to run.
pub struct Planned {
    pub def: &'static ScenarioDef,
    pub params: Params,
}

/// Validated configuration: everything is checked before any computation.
pub struct Plan {
    pub seed: u64,
    pub scenarios: Vec<Planned>,
}

/// Parses and validates a config. `seed_override` takes precedence over the
/// file's `seed`, which takes precedence over [`DEFAULT_SEED`].
pub fn plan(text: &str, seed_override: Option<u64>) -> CliResult<Plan> {
    let file = config::parse(text)?;
    let scenarios = file
        .sections
        .iter()
        .map(|section| {
            let def = scenarios::find(&section.name).ok_or_else(|| CliError::UnknownScenario {
                name: section.name.clone(),
                line: section.line,
            })?;
            Ok(Planned {
                def,
                params: config::resolve(section, def.params)?,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Plan {
        seed: seed_override.or(file.seed).unwrap_or(DEFAULT_SEED),
        scenarios,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManifestEntry {
    pub name: String,
    pub seed: u64,
    pub inputs: BTreeMap<String, String>,
    pub outputs: Vec<String>,
}

/// Reproducibility record. Wall times live in `timings.txt` so that this file
/// is byte-identical across runs with the same seed, version and config.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub seed_derivation: String,
    pub scenarios: Vec<ManifestEntry>,
}

/// Per-scenario wall time, s, in plan order.
pub type Timings = Vec<(String, f64)>;

fn sorted_files(dir: &Path) -> CliResult<Vec<String>> {
    let mut names = std::fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .map(|entry| {
            entry
                .map(|e| e.file_name().to_string_lossy().into_owned())
                .map_err(|e| CliError::io(dir, e))
        })
        .collect::<CliResult<Vec<_>>>()?;
    names.sort();
    Ok(names)
}

fn run_one(p: &Planned, seed: u64, out: &Path) -> CliResult<f64> {
    let dir = out.join(p.def.name);
    if dir.exists() {
        std::fs::remove_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    }
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let start = Instant::now();
    p.def.run(&p.params, seed, &dir)?;
    let elapsed = start.elapsed().as_secs_f64();
    let found = sorted_files(&dir)?;
    if found != p.def.outputs {
        return Err(CliError::OutputMismatch {
            scenario: p.def.name.to_string(),
            declared: p.def.outputs.iter().map(|s| s.to_string()).collect(),
            found,
        });
    }
    Ok(elapsed)
}

/// Runs every planned scenario into `out/<name>/` on up to `jobs` threads.
/// Workers take scenarios round-robin; results are reported in plan order, so
/// the outputs do not depend on `jobs`.
pub fn execute(plan: &Plan, out: &Path, jobs: usize) -> CliResult<(RunManifest, Timings)> {
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let seeds: Vec<u64> = plan.scenarios.iter().map(|p| derive_seed(plan.seed, p.def.name)).collect();
    let n = plan.scenarios.len();
    let jobs = jobs.clamp(1, n.max(1));
    let mut results: Vec<Option<CliResult<f64>>> = (0..n).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let seeds = &seeds;
                scope.spawn(move || {
                    (w..n)
                        .step_by(jobs)
                        .map(|i| (i, run_one(&plan.scenarios[i], seeds[i], out)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("scenario worker panicked") {
                results[i] = Some(r);
            }
        }
    });

    let mut entries = Vec::with_capacity(n);
    let mut timings = Vec::with_capacity(n);
    for ((p, seed), r) in plan.scenarios.iter().zip(&seeds).zip(results) {
        let elapsed = r.expect("every scenario is assigned to a worker")?;
        timings.push((p.def.name.to_string(), elapsed));
        entries.push(ManifestEntry {
            name: p.def.name.to_string(),
            seed: *seed,
            inputs: p.params.to_strings(),
            outputs: p.def.outputs.iter().map(|f| format!("{}/{f}", p.def.name)).collect(),
        });
    }
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: plan.seed,
        seed_derivation: "fnv1a64(le_bytes(seed) ++ utf8(scenario name))".to_string(),
        scenarios: entries,
    };
    write_text(&out.join(MANIFEST_FILE), &(serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n"))?;
    let timing_text: String = timings.iter().map(|(name, t)| format!("{name}\t{t:.6}\n")).collect();
    write_text(&out.join(TIMINGS_FILE), &timing_text)?;
    Ok((manifest, timings))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Reads `config` and runs it.
pub fn run_file(config: &Path, out: &Path, seed: Option<u64>, jobs: usize) -> CliResult<(RunManifest, Timings)> {
    let text = std::fs::read_to_string(config).map_err(|e| CliError::io(config, e))?;
    let plan = plan(&text, seed)?;
    execute(&plan, out, jobs)
}

