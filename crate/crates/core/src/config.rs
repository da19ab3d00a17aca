//! Scenario configuration file.
//!
//! ```toml
//! [scenario]
//! true_weight = [0.8, -0.4]
//! iterations = 300
//! trials = 50
//! input_std = 1.0
//! seed = 0
//! wsnr_cap_db = 300.0
//!
//! [mccc]
//! kernel_sigma = 0.5
//! epsilon = 1e-3
//!
//! [rls]
//! lambda = 0.99
//! p0 = 1.0
//!
//! [[noise]]
//! probability = 0.95
//! mean = 0.0
//! std = 0.05
//!
//! [[noise]]
//! probability = 0.05
//! mean = 0.0
//! std = 5.0
//! ```
//!
//! Every key is optional and falls back to the default scenario. Unknown
//! keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::sample::KernelBandwidth;
use crate::sim::{MixtureComponent, NoiseModel, ScenarioConfig};
use crate::solver::FilterWeight;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error(transparent)]
    Invalid(#[from] Error),
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct ConfigFile {
    scenario: ScenarioSection,
    mccc: McccSection,
    rls: RlsSection,
    noise: Option<Vec<MixtureComponent>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct ScenarioSection {
    true_weight: [f64; 2],
    iterations: usize,
    trials: usize,
    input_std: f64,
    seed: u64,
    wsnr_cap_db: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct McccSection {
    kernel_sigma: f64,
    epsilon: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RlsSection {
    lambda: f64,
    p0: f64,
}

impl Default for ScenarioSection {
    fn default() -> Self {
        let d = ScenarioConfig::default();
        Self {
            true_weight: d.true_weight.into(),
            iterations: d.iterations,
            trials: d.trials,
            input_std: d.input_std,
            seed: d.seed,
            wsnr_cap_db: d.wsnr_cap_db,
        }
    }
}

impl Default for McccSection {
    fn default() -> Self {
        let d = ScenarioConfig::default();
        Self {
            kernel_sigma: d.kernel_sigma.sigma(),
            epsilon: d.recursive_epsilon,
        }
    }
}

impl Default for RlsSection {
    fn default() -> Self {
        let d = ScenarioConfig::default();
        Self {
            lambda: d.rls_lambda,
            p0: d.rls_p0,
        }
    }
}

/// Parses and validates a scenario from TOML text.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let file: ConfigFile = toml::from_str(text)?;
    let [re, im] = file.scenario.true_weight;
    let cfg = ScenarioConfig {
        true_weight: FilterWeight::new(re, im).map_err(|_| Error::param("scenario.true_weight", "must be finite"))?,
        iterations: file.scenario.iterations,
        trials: file.scenario.trials,
        kernel_sigma: KernelBandwidth::new(file.mccc.kernel_sigma)
            .map_err(|_| Error::param("mccc.kernel_sigma", format!("must be positive, got {}", file.mccc.kernel_sigma)))?,
        recursive_epsilon: file.mccc.epsilon,
        rls_lambda: file.rls.lambda,
        rls_p0: file.rls.p0,
        input_std: file.scenario.input_std,
        seed: file.scenario.seed,
        wsnr_cap_db: file.scenario.wsnr_cap_db,
        noise: match file.noise {
            Some(components) => NoiseModel::new(components)?,
            None => NoiseModel::impulsive(),
        },
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

/// Renders a scenario back into the config file format.
pub fn render_config(cfg: &ScenarioConfig) -> String {
    let file = ConfigFile {
        scenario: ScenarioSection {
            true_weight: cfg.true_weight.into(),
            iterations: cfg.iterations,
            trials: cfg.trials,
            input_std: cfg.input_std,
            seed: cfg.seed,
            wsnr_cap_db: cfg.wsnr_cap_db,
        },
        mccc: McccSection {
            kernel_sigma: cfg.kernel_sigma.sigma(),
            epsilon: cfg.recursive_epsilon,
        },
        rls: RlsSection {
            lambda: cfg.rls_lambda,
            p0: cfg.rls_p0,
        },
        noise: Some(cfg.noise.components().to_vec()),
    };
    toml::to_string(&file).expect("config serializes")
}
