//! System-identification experiment under impulsive Gaussian-mixture noise.
//!
//! Each trial draws a random initial weight, a circular complex Gaussian
//! input stream `x_n` and desired samples `d_n = w_true x_n + eta_n`, then
//! runs the recursive MCCC solver and complex RLS over the same stream,
//! recording the weight SNR after every sample.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::weighted::WeightedIndex;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{RlsState, DEFAULT_RLS_LAMBDA, DEFAULT_RLS_P0};
use crate::error::{Error, Result};
use crate::sample::{ComplexScalar, KernelBandwidth};
use crate::solver::{recursive_init, FilterWeight, PairedDataset, RecursiveInitConfig};

pub const GENERATOR: &str = "ChaCha20Rng (rand_chacha 0.9), stream = trial index";
pub const INPUT_DISTRIBUTION: &str = "circular complex Gaussian, per-part std = input_std / sqrt(2)";
pub const STEADY_STATE_WINDOW: usize = 50;
pub const MCCC_LABEL: &str = "mccc";
pub const RLS_LABEL: &str = "rls";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureComponent {
    pub probability: f64,
    pub mean: f64,
    /// Standard deviation; zero gives a point mass at `mean`.
    pub std: f64,
}

/// Gaussian mixture applied independently to the real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<MixtureComponent>", into = "Vec<MixtureComponent>")]
pub struct NoiseModel {
    components: Vec<MixtureComponent>,
}

impl NoiseModel {
    pub fn new(components: Vec<MixtureComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::param("noise", "at least one mixture component is required"));
        }
        for (i, c) in components.iter().enumerate() {
            if !(0.0..=1.0).contains(&c.probability) {
                return Err(Error::param("noise.probability", format!("component {i}: {} outside [0, 1]", c.probability)));
            }
            if !c.mean.is_finite() {
                return Err(Error::param("noise.mean", format!("component {i}: not finite")));
            }
            if !(c.std >= 0.0 && c.std.is_finite()) {
                return Err(Error::param("noise.std", format!("component {i}: {} is not a valid deviation", c.std)));
            }
        }
        let total: f64 = components.iter().map(|c| c.probability).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::param("noise.probability", format!("probabilities sum to {total}, expected 1")));
        }
        Ok(Self { components })
    }

    /// `0.95 N(0, 0.05^2) + 0.05 N(0, 5^2)`.
    pub fn impulsive() -> Self {
        Self::new(vec![
            MixtureComponent { probability: 0.95, mean: 0.0, std: 0.05 },
            MixtureComponent { probability: 0.05, mean: 0.0, std: 5.0 },
        ])
        .expect("valid mixture")
    }

    pub fn noiseless() -> Self {
        Self::new(vec![MixtureComponent { probability: 1.0, mean: 0.0, std: 0.0 }]).expect("valid mixture")
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }

    /// Per-part variance of the mixture.
    pub fn variance(&self) -> f64 {
        let mean: f64 = self.components.iter().map(|c| c.probability * c.mean).sum();
        self.components
            .iter()
            .map(|c| c.probability * (c.std * c.std + c.mean * c.mean))
            .sum::<f64>()
            - mean * mean
    }

    pub fn sampler(&self) -> NoiseSampler {
        NoiseSampler {
            selector: WeightedIndex::new(self.components.iter().map(|c| c.probability)).expect("validated probabilities"),
            normals: self
                .components
                .iter()
                .map(|c| Normal::new(c.mean, c.std).expect("validated deviation"))
                .collect(),
        }
    }
}

impl TryFrom<Vec<MixtureComponent>> for NoiseModel {
    type Error = Error;

    fn try_from(components: Vec<MixtureComponent>) -> Result<Self> {
        Self::new(components)
    }
}

impl From<NoiseModel> for Vec<MixtureComponent> {
    fn from(model: NoiseModel) -> Self {
        model.components
    }
}

pub struct NoiseSampler {
    selector: WeightedIndex<f64>,
    normals: Vec<Normal<f64>>,
}

impl NoiseSampler {
    pub fn sample_part<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let k = self.selector.sample(rng);
        self.normals[k].sample(rng)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ComplexScalar {
        let re = self.sample_part(rng);
        let im = self.sample_part(rng);
        ComplexScalar::new(re, im)
    }
}

/// Draws one complex noise sample; real and imaginary parts are independent.
pub fn sample_noise<R: Rng + ?Sized>(model: &NoiseModel, rng: &mut R) -> ComplexScalar {
    model.sampler().sample(rng)
}

/// Weight signal-to-noise ratio in dB, clamped to `cap_db`.
pub fn wsnr_db(true_w: FilterWeight, est_w: FilterWeight, cap_db: f64) -> Result<f64> {
    let signal = true_w.value().norm_sqr();
    if signal == 0.0 {
        return Err(Error::param("true_weight", "WSNR is undefined for a zero true weight"));
    }
    let error = (true_w.value() - est_w.value()).norm_sqr();
    if error == 0.0 {
        return Ok(cap_db);
    }
    Ok((10.0 * (signal / error).log10()).min(cap_db))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub true_weight: FilterWeight,
    pub iterations: usize,
    pub trials: usize,
    pub kernel_sigma: KernelBandwidth,
    /// Initial `R[0]` of the recursive solver.
    pub recursive_epsilon: f64,
    pub rls_lambda: f64,
    pub rls_p0: f64,
    pub input_std: f64,
    pub seed: u64,
    pub wsnr_cap_db: f64,
    pub noise: NoiseModel,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            true_weight: FilterWeight::new(0.8, -0.4).expect("finite"),
            iterations: 300,
            trials: 50,
            kernel_sigma: KernelBandwidth::new(0.5).expect("positive"),
            recursive_epsilon: 1e-3,
            rls_lambda: DEFAULT_RLS_LAMBDA,
            rls_p0: DEFAULT_RLS_P0,
            input_std: 1.0,
            seed: 0,
            wsnr_cap_db: 300.0,
            noise: NoiseModel::impulsive(),
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::param("iterations", "must be at least 1"));
        }
        if self.trials == 0 {
            return Err(Error::param("trials", "must be at least 1"));
        }
        if self.true_weight.value().norm_sqr() == 0.0 {
            return Err(Error::param("true_weight", "must be nonzero"));
        }
        if !(self.input_std > 0.0 && self.input_std.is_finite()) {
            return Err(Error::param("input_std", format!("must be positive, got {}", self.input_std)));
        }
        if !self.wsnr_cap_db.is_finite() {
            return Err(Error::param("wsnr_cap_db", "must be finite"));
        }
        if !(self.recursive_epsilon > 0.0 && self.recursive_epsilon.is_finite()) {
            return Err(Error::param("epsilon", format!("must be positive, got {}", self.recursive_epsilon)));
        }
        RlsState::new(FilterWeight::zero(), self.rls_p0, self.rls_lambda)?;
        Ok(())
    }
}

/// Samples shared by both algorithms in one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialData {
    pub initial_weight: FilterWeight,
    pub data: PairedDataset,
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Generates the initial weight and the `(x_n, d_n)` stream of one trial.
pub fn generate_trial_data(cfg: &ScenarioConfig, trial: u64) -> Result<TrialData> {
    cfg.validate()?;
    let mut rng = trial_rng(cfg.seed, trial);
    let circular = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).expect("valid");
    let initial_weight = FilterWeight::new(circular.sample(&mut rng), circular.sample(&mut rng))?;

    let input = Normal::new(0.0, cfg.input_std * std::f64::consts::FRAC_1_SQRT_2).expect("validated");
    let noise = cfg.noise.sampler();
    let truth = cfg.true_weight.value();
    let mut xs = Vec::with_capacity(cfg.iterations);
    let mut ds = Vec::with_capacity(cfg.iterations);
    for _ in 0..cfg.iterations {
        let x = ComplexScalar::new(input.sample(&mut rng), input.sample(&mut rng));
        let eta = noise.sample(&mut rng);
        xs.push(x);
        ds.push(truth * x + eta);
    }
    Ok(TrialData {
        initial_weight,
        data: PairedDataset::from_vecs(xs, ds)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSeries {
    pub mccc: Vec<f64>,
    pub rls: Vec<f64>,
    pub final_mccc_weight: FilterWeight,
    pub final_rls_weight: FilterWeight,
}

/// Runs both algorithms over one trial's stream, recording WSNR after each
/// sample.
pub fn run_trial(cfg: &ScenarioConfig, trial: u64) -> Result<TrialSeries> {
    let TrialData { initial_weight, data } = generate_trial_data(cfg, trial)?;
    let bw = cfg.kernel_sigma;
    let mut mccc = recursive_init(&RecursiveInitConfig {
        initial_weight,
        epsilon: cfg.recursive_epsilon,
    })?;
    let mut rls = RlsState::new(initial_weight, cfg.rls_p0, cfg.rls_lambda)?;

    let mut mccc_series = Vec::with_capacity(cfg.iterations);
    let mut rls_series = Vec::with_capacity(cfg.iterations);
    for (x, d) in data.pairs() {
        mccc.update(x, d, bw);
        rls.update(x, d);
        mccc_series.push(wsnr_db(cfg.true_weight, mccc.weight(), cfg.wsnr_cap_db)?);
        rls_series.push(wsnr_db(cfg.true_weight, rls.weight(), cfg.wsnr_cap_db)?);
    }
    Ok(TrialSeries {
        mccc: mccc_series,
        rls: rls_series,
        final_mccc_weight: mccc.weight(),
        final_rls_weight: rls.weight(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub mean_series: Vec<f64>,
    /// Mean of the last `steady_state_window` entries of `mean_series`.
    pub steady_state_db: f64,
    pub trial_series: Vec<Vec<f64>>,
}

impl AlgorithmSummary {
    fn from_trials(trial_series: Vec<Vec<f64>>, window: usize) -> Self {
        let len = trial_series[0].len();
        let count = trial_series.len() as f64;
        let mean_series: Vec<f64> = (0..len)
            .map(|i| trial_series.iter().map(|s| s[i]).sum::<f64>() / count)
            .collect();
        let tail = &mean_series[len - window..];
        let steady_state_db = tail.iter().sum::<f64>() / tail.len() as f64;
        Self {
            mean_series,
            steady_state_db,
            trial_series,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub generator: String,
    pub input_distribution: String,
    pub seed: u64,
    pub config: ScenarioConfig,
    pub steady_state_window: usize,
    pub algorithms: BTreeMap<String, AlgorithmSummary>,
    /// MCCC steady-state WSNR minus RLS steady-state WSNR, in dB.
    pub steady_state_margin_db: f64,
}

impl MonteCarloReport {
    pub fn mccc(&self) -> &AlgorithmSummary {
        &self.algorithms[MCCC_LABEL]
    }

    pub fn rls(&self) -> &AlgorithmSummary {
        &self.algorithms[RLS_LABEL]
    }
}

/// Runs `cfg.trials` trials on the global rayon pool.
pub fn monte_carlo(cfg: &ScenarioConfig) -> Result<MonteCarloReport> {
    cfg.validate()?;
    let trials: Vec<TrialSeries> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(cfg, t))
        .collect::<Result<_>>()?;
    Ok(aggregate(cfg, trials))
}

/// Like [`monte_carlo`] but on a dedicated pool of `threads` workers.
pub fn monte_carlo_with_threads(cfg: &ScenarioConfig, threads: usize) -> Result<MonteCarloReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::param("parallel", e.to_string()))?;
    pool.install(|| monte_carlo(cfg))
}

// Trials arrive in index order regardless of which worker ran them.
fn aggregate(cfg: &ScenarioConfig, trials: Vec<TrialSeries>) -> MonteCarloReport {
    let window = STEADY_STATE_WINDOW.min(cfg.iterations);
    let (mccc, rls): (Vec<_>, Vec<_>) = trials.into_iter().map(|t| (t.mccc, t.rls)).unzip();
    let mccc = AlgorithmSummary::from_trials(mccc, window);
    let rls = AlgorithmSummary::from_trials(rls, window);
    let margin = mccc.steady_state_db - rls.steady_state_db;
    let mut algorithms = BTreeMap::new();
    algorithms.insert(MCCC_LABEL.to_string(), mccc);
    algorithms.insert(RLS_LABEL.to_string(), rls);
    MonteCarloReport {
        generator: GENERATOR.to_string(),
        input_distribution: INPUT_DISTRIBUTION.to_string(),
        seed: cfg.seed,
        config: cfg.clone(),
        steady_state_window: window,
        algorithms,
        steady_state_margin_db: margin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn variance(samples: &[f64]) -> f64 {
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n
    }

    #[test]
    fn noise_model_validation() {
        assert!(NoiseModel::new(vec![]).is_err());
        let c = |p, s| MixtureComponent { probability: p, mean: 0.0, std: s };
        assert!(NoiseModel::new(vec![c(0.5, 1.0), c(0.4, 1.0)]).is_err());
        assert!(NoiseModel::new(vec![c(1.5, 1.0), c(-0.5, 1.0)]).is_err());
        assert!(NoiseModel::new(vec![c(1.0, -1.0)]).is_err());
        assert!((NoiseModel::impulsive().variance() - 1.252_375).abs() < 1e-12);
    }

    #[test]
    fn unit_gaussian_noise_variance() {
        let model = NoiseModel::new(vec![MixtureComponent { probability: 1.0, mean: 0.0, std: 1.0 }]).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let sampler = model.sampler();
        let draws: Vec<f64> = (0..100_000).map(|_| sampler.sample_part(&mut rng)).collect();
        assert!((variance(&draws) - 1.0).abs() < 0.03);
    }

    #[test]
    fn impulsive_noise_variance() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let sampler = NoiseModel::impulsive().sampler();
        let (re, im): (Vec<f64>, Vec<f64>) = (0..1_000_000)
            .map(|_| {
                let z = sampler.sample(&mut rng);
                (z.re, z.im)
            })
            .unzip();
        for part in [re, im] {
            let v = variance(&part);
            assert!((v / 1.252_375 - 1.0).abs() < 0.03, "{v}");
        }
    }

    #[test]
    fn zero_probability_component_is_never_drawn() {
        let model = NoiseModel::new(vec![
            MixtureComponent { probability: 1.0, mean: 0.0, std: 1.0 },
            MixtureComponent { probability: 0.0, mean: 1e6, std: 1.0 },
        ])
        .unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..100_000 {
            let z = sample_noise(&model, &mut rng);
            assert!(z.re.abs() < 1e3 && z.im.abs() < 1e3);
        }
    }

    #[test]
    fn wsnr_examples() {
        let one = FilterWeight::new(1.0, 0.0).unwrap();
        let truth = FilterWeight::new(0.8, -0.4).unwrap();
        assert!(wsnr_db(truth, FilterWeight::zero(), 300.0).unwrap().abs() < 1e-12);
        assert_eq!(wsnr_db(truth, truth, 300.0).unwrap(), 300.0);
        let v = wsnr_db(one, FilterWeight::new(0.9, 0.0).unwrap(), 300.0).unwrap();
        assert!((v - 20.0).abs() < 1e-9);
        assert!(wsnr_db(FilterWeight::zero(), one, 300.0).is_err());
        // Near-exact estimates are clamped to the cap.
        let close = FilterWeight::new(1.0 + 1e-200, 0.0).unwrap();
        assert!(wsnr_db(one, close, 300.0).unwrap() <= 300.0);
    }

    #[test]
    fn config_validation() {
        let ok = ScenarioConfig::default();
        assert!(ok.validate().is_ok());
        assert!(ScenarioConfig { iterations: 0, ..ok.clone() }.validate().is_err());
        assert!(ScenarioConfig { trials: 0, ..ok.clone() }.validate().is_err());
        assert!(ScenarioConfig { rls_lambda: 1.5, ..ok.clone() }.validate().is_err());
        assert!(ScenarioConfig { true_weight: FilterWeight::zero(), ..ok }.validate().is_err());
    }

    #[test]
    fn noiseless_trial_recovers_weight() {
        let cfg = ScenarioConfig {
            noise: NoiseModel::noiseless(),
            trials: 1,
            // Prior bias decays as epsilon / R[n] and lambda^n / (p0 R_rls[n]);
            // the default priors cap noiseless WSNR well below 100 dB.
            recursive_epsilon: 1e-6,
            rls_p0: 1e8,
            ..Default::default()
        };
        let series = run_trial(&cfg, 0).unwrap();
        assert_eq!(series.mccc.len(), 300);
        assert!(series.mccc[299] > 100.0, "{}", series.mccc[299]);
        assert!(series.rls[299] > 100.0, "{}", series.rls[299]);
    }

    #[test]
    fn trials_are_deterministic_and_distinct() {
        let cfg = ScenarioConfig { iterations: 40, ..Default::default() };
        let a = run_trial(&cfg, 3).unwrap();
        let b = run_trial(&cfg, 3).unwrap();
        assert_eq!(a, b);
        assert_ne!(run_trial(&cfg, 4).unwrap().mccc, a.mccc);
        let d1 = generate_trial_data(&cfg, 3).unwrap();
        assert_eq!(d1, generate_trial_data(&cfg, 3).unwrap());
    }

    #[test]
    fn single_trial_report_is_that_trial() {
        let cfg = ScenarioConfig { trials: 1, iterations: 20, ..Default::default() };
        let report = monte_carlo(&cfg).unwrap();
        let trial = run_trial(&cfg, 0).unwrap();
        assert_eq!(report.mccc().mean_series, trial.mccc);
        assert_eq!(report.rls().mean_series, trial.rls);
        assert_eq!(report.steady_state_window, 20);
    }

    #[test]
    fn mean_series_is_elementwise_average() {
        let cfg = ScenarioConfig { trials: 7, iterations: 60, ..Default::default() };
        let report = monte_carlo(&cfg).unwrap();
        for summary in report.algorithms.values() {
            assert_eq!(summary.trial_series.len(), 7);
            for i in 0..60 {
                let avg = summary.trial_series.iter().map(|s| s[i]).sum::<f64>() / 7.0;
                assert!((summary.mean_series[i] - avg).abs() <= 1e-12);
                assert!(summary.mean_series[i] <= cfg.wsnr_cap_db);
            }
        }
    }

    #[test]
    fn report_independent_of_thread_count() {
        let cfg = ScenarioConfig { trials: 9, iterations: 50, ..Default::default() };
        let one = monte_carlo_with_threads(&cfg, 1).unwrap();
        let four = monte_carlo_with_threads(&cfg, 4).unwrap();
        assert_eq!(one, four);
    }
}
