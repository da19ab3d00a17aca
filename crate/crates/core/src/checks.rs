//! Self-checks comparing the estimators and solvers against independent
//! oracles. Driven by the `oracle-check` subcommand.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};

use crate::baselines::least_squares_weight;
use crate::correntropy::{complex_correntropy, gaussian_kernel};
use crate::quadrature::{correntropy_integral_oracle, trapezoid, QuadratureSpec};
use crate::sample::{ComplexSampleSet, ComplexScalar, KernelBandwidth};
use crate::sim::{generate_trial_data, ScenarioConfig};
use crate::solver::{batch_fixed_point, recursive_init, FilterWeight, FixedPointConfig, PairedDataset, RecursiveInitConfig};

pub const DEFAULT_QUADRATURE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub checks: Vec<CheckResult>,
}

impl OracleReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        writeln!(f, "{passed}/{} checks passed", self.checks.len())
    }
}

fn bw(sigma: f64) -> KernelBandwidth {
    KernelBandwidth::new(sigma).expect("positive constant")
}

/// Runs every check. `quadrature_tolerance` bounds the relative error
/// between the closed form and the integral oracle.
pub fn run_oracle_checks(seed: u64, quadrature_tolerance: f64) -> OracleReport {
    OracleReport {
        checks: vec![
            quadrature_equivalence(seed, quadrature_tolerance),
            kernel_normalization(),
            noiseless_fixed_point(seed),
            large_bandwidth_least_squares(seed),
        ],
    }
}

fn random_set(rng: &mut ChaCha20Rng, n: usize) -> ComplexSampleSet {
    ComplexSampleSet::new(
        (0..n)
            .map(|_| ComplexScalar::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
            .collect(),
    )
    .expect("finite samples")
}

pub fn quadrature_equivalence(seed: u64, tolerance: f64) -> CheckResult {
    let name = "quadrature-equivalence";
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for i in 0..20 {
        let n = rng.random_range(1..=20);
        let a = random_set(&mut rng, n);
        let b = random_set(&mut rng, n);
        let k = bw([0.5, 1.0, 2.0][i % 3]);
        let closed = complex_correntropy(&a, &b, k).expect("equal lengths");
        let integral = match correntropy_integral_oracle(&a, &b, k, QuadratureSpec::covering(&a, &b, k)) {
            Ok(v) => v,
            Err(e) => {
                return CheckResult { name, passed: false, detail: format!("dataset {i}: {e}") };
            }
        };
        worst = worst.max(((closed - integral) / closed).abs());
    }
    CheckResult {
        name,
        passed: worst < tolerance,
        detail: format!("20 datasets, max relative error {worst:.3e} (tolerance {tolerance:.1e})"),
    }
}

pub fn kernel_normalization() -> CheckResult {
    let worst = [0.5, 1.0, 2.0]
        .iter()
        .map(|&s| {
            let total = trapezoid(|u| gaussian_kernel(u, bw(s)), -20.0 * s, 20.0 * s, 4000);
            (total - 1.0).abs()
        })
        .fold(0.0, f64::max);
    CheckResult {
        name: "kernel-normalization",
        passed: worst < 1e-8,
        detail: format!("max |integral - 1| = {worst:.3e} over sigma in {{0.5, 1, 2}} (tolerance 1.0e-8)"),
    }
}

pub fn noiseless_fixed_point(seed: u64) -> CheckResult {
    let name = "noiseless-fixed-point";
    let truth = ComplexScalar::new(2.0, 3.0);
    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x5eed);
    let unit = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).expect("valid");
    let xs: Vec<ComplexScalar> = (0..50).map(|_| ComplexScalar::new(unit.sample(&mut rng), unit.sample(&mut rng))).collect();
    let ds: Vec<ComplexScalar> = xs.iter().map(|x| truth * x).collect();
    let data = PairedDataset::from_vecs(xs, ds).expect("nonzero inputs");
    let start = FilterWeight::new(unit.sample(&mut rng), unit.sample(&mut rng)).expect("finite");
    let k = bw(0.5);

    let batch = match batch_fixed_point(&data, k, &FixedPointConfig { initial_weight: start, ..Default::default() }) {
        Ok(out) => out,
        Err(e) => return CheckResult { name, passed: false, detail: e.to_string() },
    };
    let batch_gap = (batch.weight.value() - truth).norm();

    let mut state = recursive_init(&RecursiveInitConfig {
        initial_weight: FilterWeight::from_complex(truth).expect("finite"),
        epsilon: 1e-3,
    })
    .expect("positive epsilon");
    let mut drift = 0.0_f64;
    for (x, d) in data.pairs() {
        state.update(x, d, k);
        drift = drift.max((state.weight().value() - truth).norm());
    }
    CheckResult {
        name,
        passed: batch_gap < 1e-10 && batch.iterations <= 20 && drift < 1e-12,
        detail: format!(
            "batch |w - w_true| = {batch_gap:.3e} after {} iterations, recursive max drift {drift:.3e}",
            batch.iterations
        ),
    }
}

pub fn large_bandwidth_least_squares(seed: u64) -> CheckResult {
    let name = "large-sigma-least-squares";
    let cfg = ScenarioConfig { iterations: 200, seed, ..Default::default() };
    let data = match generate_trial_data(&cfg, 0) {
        Ok(t) => t.data,
        Err(e) => return CheckResult { name, passed: false, detail: e.to_string() },
    };
    let ls = least_squares_weight(&data).expect("nonzero inputs");
    match batch_fixed_point(&data, bw(100.0), &FixedPointConfig::default()) {
        Ok(out) => {
            let gap = (out.weight.value() - ls.value()).norm();
            CheckResult {
                name,
                passed: gap < 1e-3,
                detail: format!("sigma = 100, N = 200: |w_mccc - w_ls| = {gap:.3e} (tolerance 1.0e-3)"),
            }
        }
        Err(e) => CheckResult { name, passed: false, detail: e.to_string() },
    }
}
