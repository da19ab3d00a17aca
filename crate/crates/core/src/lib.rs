//! Complex correntropy and the maximum complex correntropy criterion (MCCC).
//!
//! * [`correntropy`]: Gaussian kernel, Parzen density, real and complex
//!   correntropy estimators.
//! * [`quadrature`]: integral-form oracle for complex correntropy.
//! * [`solver`]: MCCC cost, batch fixed-point and recursive solvers for a
//!   single complex tap.
//! * [`baselines`]: complex RLS and closed-form least squares.
//! * [`sim`]: impulsive-noise system identification Monte Carlo harness.
//! * [`config`], [`checks`], [`cli`]: the command-line front end.

pub mod baselines;
pub mod checks;
pub mod cli;
pub mod config;
pub mod correntropy;
pub mod error;
pub mod quadrature;
pub mod sample;
pub mod sim;
pub mod solver;

pub use baselines::{least_squares_weight, rls_update, RlsState};
pub use correntropy::{
    complex_correntropy, complex_peak, gaussian_kernel, parzen_density, real_correntropy, sample_mean_squared_gap,
};
pub use error::{Error, Result};
pub use quadrature::{correntropy_integral_oracle, QuadratureSpec};
pub use sample::{ComplexSampleSet, ComplexScalar, KernelBandwidth, RealSampleSet};
pub use sim::{monte_carlo, run_trial, sample_noise, wsnr_db, MonteCarloReport, NoiseModel, ScenarioConfig};
pub use solver::{
    batch_fixed_point, fixed_point_map, mccc_cost, recursive_init, recursive_update, weighting_factors, FilterWeight,
    FixedPointConfig, FixedPointOutcome, PairedDataset, RecursiveInitConfig, RecursiveState,
};
