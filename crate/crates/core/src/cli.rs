//! Implementation of the `run`, `sweep` and `oracle-check` subcommands.

use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use crate::checks::{run_oracle_checks, OracleReport};
use crate::config::load_config;
use crate::sample::KernelBandwidth;
use crate::sim::{monte_carlo, monte_carlo_with_threads, MonteCarloReport, ScenarioConfig};

pub const WSNR_CSV: &str = "wsnr_mean.csv";
pub const REPORT_JSON: &str = "report.json";
pub const MANIFEST_JSON: &str = "manifest.json";
pub const SWEEP_SUMMARY_CSV: &str = "sweep_summary.csv";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub tool_version: String,
    pub command: String,
    pub seed: u64,
    pub config: ScenarioConfig,
    /// Kernel sizes of a sweep, empty for a single run.
    pub sigmas: Vec<f64>,
    /// Data files written, relative to the output directory.
    pub outputs: Vec<String>,
    pub wall_clock_seconds: f64,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    /// Worker threads; `None` uses up to one per trial.
    pub parallel: Option<usize>,
}

fn load_scenario(config_path: &Path, opts: &RunOptions) -> Result<ScenarioConfig> {
    let mut cfg = load_config(config_path)?;
    if let Some(seed) = opts.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn simulate(cfg: &ScenarioConfig, opts: &RunOptions) -> Result<MonteCarloReport> {
    let threads = opts.parallel.unwrap_or_else(|| {
        let available = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
        cfg.trials.min(available)
    });
    if threads == 0 {
        bail!("--parallel must be at least 1");
    }
    Ok(if threads == rayon::current_num_threads() {
        monte_carlo(cfg)?
    } else {
        monte_carlo_with_threads(cfg, threads)?
    })
}

/// Fixed-width scientific notation with 17 significant digits.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create output directory {}", dir.display()))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

fn write_wsnr_csv(path: &Path, report: &MonteCarloReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["iteration", "wsnr_mccc_db", "wsnr_rls_db"])?;
    let mccc = &report.mccc().mean_series;
    let rls = &report.rls().mean_series;
    for (i, (m, r)) in mccc.iter().zip(rls).enumerate() {
        w.write_record([(i + 1).to_string(), format_value(*m), format_value(*r)])?;
    }
    write_file(path, &w.into_inner()?)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_file(path, text.as_bytes())
}

fn write_run_outputs(dir: &Path, report: &MonteCarloReport) -> Result<()> {
    write_wsnr_csv(&dir.join(WSNR_CSV), report)?;
    write_json(&dir.join(REPORT_JSON), report)
}

fn manifest(command: &str, cfg: ScenarioConfig, sigmas: Vec<f64>, outputs: Vec<String>, started: Instant) -> RunManifest {
    RunManifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        seed: cfg.seed,
        config: cfg,
        sigmas,
        outputs,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    }
}

/// Runs the Monte Carlo comparison and writes `wsnr_mean.csv`,
/// `report.json` and `manifest.json` into `out_dir`.
pub fn cmd_run(config_path: &Path, out_dir: &Path, opts: &RunOptions) -> Result<RunManifest> {
    let started = Instant::now();
    let cfg = load_scenario(config_path, opts)?;
    let report = simulate(&cfg, opts)?;
    create_dir(out_dir)?;
    write_run_outputs(out_dir, &report)?;
    let m = manifest("run", cfg, vec![], vec![WSNR_CSV.into(), REPORT_JSON.into()], started);
    write_json(&out_dir.join(MANIFEST_JSON), &m)?;
    Ok(m)
}

/// Subdirectory holding the outputs of sweep entry `index`.
pub fn sweep_entry_dir(index: usize, sigma: f64) -> String {
    format!("sigma_{index:02}_{sigma}")
}

/// Runs the scenario once per kernel size. Each run gets its own
/// subdirectory; `sweep_summary.csv` lists steady-state WSNR against sigma.
pub fn cmd_sweep(config_path: &Path, sigmas: &[f64], out_dir: &Path, opts: &RunOptions) -> Result<RunManifest> {
    let started = Instant::now();
    if sigmas.is_empty() {
        bail!("--sigmas must list at least one kernel size");
    }
    let bandwidths = sigmas
        .iter()
        .map(|&s| KernelBandwidth::new(s).with_context(|| format!("invalid entry in --sigmas: {s}")))
        .collect::<Result<Vec<_>>>()?;
    let base = load_scenario(config_path, opts)?;
    create_dir(out_dir)?;

    let mut outputs = Vec::new();
    let mut summary = csv::Writer::from_writer(Vec::new());
    summary.write_record(["sigma", "steady_mccc_db", "steady_rls_db", "gap_db"])?;
    for (i, bw) in bandwidths.into_iter().enumerate() {
        let cfg = ScenarioConfig { kernel_sigma: bw, ..base.clone() };
        let report = simulate(&cfg, opts)?;
        let sub = sweep_entry_dir(i, bw.sigma());
        let dir = out_dir.join(&sub);
        create_dir(&dir)?;
        write_run_outputs(&dir, &report)?;
        outputs.push(format!("{sub}/{WSNR_CSV}"));
        outputs.push(format!("{sub}/{REPORT_JSON}"));
        let (m, r) = (report.mccc().steady_state_db, report.rls().steady_state_db);
        summary.write_record([format_value(bw.sigma()), format_value(m), format_value(r), format_value(m - r)])?;
    }
    write_file(&out_dir.join(SWEEP_SUMMARY_CSV), &summary.into_inner()?)?;
    outputs.push(SWEEP_SUMMARY_CSV.into());

    let m = manifest("sweep", base, sigmas.to_vec(), outputs, started);
    write_json(&out_dir.join(MANIFEST_JSON), &m)?;
    Ok(m)
}

pub fn cmd_oracle_check(seed: u64, tolerance: f64) -> Result<OracleReport> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        bail!("--tol must be positive, got {tolerance}");
    }
    Ok(run_oracle_checks(seed, tolerance))
}

/// Reads `sweep_summary.csv` back as `(sigma, mccc_db, rls_db, gap_db)` rows.
pub fn read_sweep_summary(path: &Path) -> Result<Vec<[f64; 4]>> {
    let mut reader = csv::Reader::from_path(path).with_context(|| format!("cannot read {}", path.display()))?;
    reader
        .records()
        .map(|rec| {
            let rec = rec?;
            let mut row = [0.0; 4];
            for (slot, field) in row.iter_mut().zip(rec.iter()) {
                *slot = field.parse()?;
            }
            Ok(row)
        })
        .collect()
}
