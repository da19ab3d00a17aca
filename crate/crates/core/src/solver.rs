//! Maximum complex correntropy criterion (MCCC) for the single complex tap
//! model `y = w x`.
//!
//! Setting the gradient of the MCCC cost to zero and isolating the weight
//! gives a weighted least-squares ratio whose weights `g1 g2` depend on the
//! weight itself:
//!
//! ```text
//! w = sum g1 g2 d_n conj(x_n) / sum g1 g2 |x_n|^2
//! ```
//!
//! The batch solver iterates this map to a fixed point. The recursive
//! solver accumulates the numerator (`P + jQ`) and denominator (`R`) one
//! sample at a time.

use serde::{Deserialize, Serialize};

use crate::correntropy::{gaussian_kernel, mean_complex_similarity};
use crate::error::{Error, Result};
use crate::sample::{ensure_same_len, ComplexSampleSet, ComplexScalar, KernelBandwidth};

/// Complex filter weight with finite components.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct FilterWeight(ComplexScalar);

impl FilterWeight {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        Self::from_complex(ComplexScalar::new(re, im))
    }

    pub fn from_complex(w: ComplexScalar) -> Result<Self> {
        if w.is_finite() {
            Ok(Self(w))
        } else {
            Err(Error::param("weight", format!("non-finite value {w}")))
        }
    }

    pub const fn zero() -> Self {
        Self(ComplexScalar::new(0.0, 0.0))
    }

    #[inline]
    pub fn value(self) -> ComplexScalar {
        self.0
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.0.re
    }

    #[inline]
    pub fn im(self) -> f64 {
        self.0.im
    }
}

impl TryFrom<[f64; 2]> for FilterWeight {
    type Error = Error;

    fn try_from([re, im]: [f64; 2]) -> Result<Self> {
        Self::new(re, im)
    }
}

impl From<FilterWeight> for [f64; 2] {
    fn from(w: FilterWeight) -> Self {
        [w.re(), w.im()]
    }
}

/// Aligned input samples `x_n` and desired samples `d_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedDataset {
    inputs: ComplexSampleSet,
    desired: ComplexSampleSet,
}

impl PairedDataset {
    /// Rejects unequal lengths and all-zero inputs.
    pub fn new(inputs: ComplexSampleSet, desired: ComplexSampleSet) -> Result<Self> {
        ensure_same_len(inputs.len(), desired.len())?;
        if inputs.values().iter().all(|x| x.norm_sqr() == 0.0) {
            return Err(Error::Unidentifiable);
        }
        Ok(Self { inputs, desired })
    }

    pub fn from_vecs(inputs: Vec<ComplexScalar>, desired: Vec<ComplexScalar>) -> Result<Self> {
        Self::new(ComplexSampleSet::new(inputs)?, ComplexSampleSet::new(desired)?)
    }

    pub fn inputs(&self) -> &ComplexSampleSet {
        &self.inputs
    }

    pub fn desired(&self) -> &ComplexSampleSet {
        &self.desired
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn pairs(&self) -> impl Iterator<Item = (ComplexScalar, ComplexScalar)> + '_ {
        self.inputs
            .values()
            .iter()
            .copied()
            .zip(self.desired.values().iter().copied())
    }
}

/// MCCC cost: complex correntropy between the desired samples and the
/// filter output `w x_n`.
pub fn mccc_cost(w: FilterWeight, data: &PairedDataset, bw: KernelBandwidth) -> f64 {
    mean_complex_similarity(data.pairs().map(|(x, d)| d - w.value() * x), bw)
}

/// Kernel weights `(g1, g2)` of the real and imaginary output errors,
/// each `G_{sigma sqrt 2}` of the corresponding error component.
#[inline]
pub fn weighting_factors(w: FilterWeight, x: ComplexScalar, d: ComplexScalar, bw: KernelBandwidth) -> (f64, f64) {
    let wide = bw.widened();
    let e = d - w.value() * x;
    (gaussian_kernel(e.re, wide), gaussian_kernel(e.im, wide))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPointConfig {
    pub max_iterations: usize,
    /// Stop once `|w_k - w_{k-1}|` drops below this.
    pub tolerance: f64,
    pub initial_weight: FilterWeight,
}

impl Default for FixedPointConfig {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            tolerance: 1e-12,
            initial_weight: FilterWeight::zero(),
        }
    }
}

impl FixedPointConfig {
    fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::param("max_iterations", "must be at least 1"));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::param("tolerance", format!("must be positive, got {}", self.tolerance)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointOutcome {
    pub weight: FilterWeight,
    pub iterations: usize,
    pub converged: bool,
}

/// One application of the fixed-point map: the `g1 g2`-weighted
/// least-squares ratio with the weights evaluated at `w`.
pub fn fixed_point_map(w: FilterWeight, data: &PairedDataset, bw: KernelBandwidth) -> Result<FilterWeight> {
    let mut numerator = ComplexScalar::new(0.0, 0.0);
    let mut denominator = 0.0;
    for (x, d) in data.pairs() {
        let (g1, g2) = weighting_factors(w, x, d, bw);
        let g = g1 * g2;
        numerator += g * d * x.conj();
        denominator += g * x.norm_sqr();
    }
    if !denominator.is_finite() || denominator <= 0.0 {
        return Err(Error::KernelCollapse { sigma: bw.sigma() });
    }
    FilterWeight::from_complex(numerator / denominator)
}

/// Batch MCCC weight by fixed-point iteration.
///
/// Non-convergence within `max_iterations` is reported through
/// `converged = false`, not as an error.
pub fn batch_fixed_point(data: &PairedDataset, bw: KernelBandwidth, cfg: &FixedPointConfig) -> Result<FixedPointOutcome> {
    cfg.validate()?;
    let mut w = cfg.initial_weight;
    for iteration in 1..=cfg.max_iterations {
        let next = fixed_point_map(w, data, bw)?;
        let step = (next.value() - w.value()).norm();
        w = next;
        if step < cfg.tolerance {
            return Ok(FixedPointOutcome {
                weight: w,
                iterations: iteration,
                converged: true,
            });
        }
    }
    Ok(FixedPointOutcome {
        weight: w,
        iterations: cfg.max_iterations,
        converged: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecursiveInitConfig {
    pub initial_weight: FilterWeight,
    /// Prior mass given to the initial weight; `R[0]`.
    pub epsilon: f64,
}

impl Default for RecursiveInitConfig {
    fn default() -> Self {
        Self {
            initial_weight: FilterWeight::zero(),
            epsilon: 1e-3,
        }
    }
}

/// Running numerator and denominator sums of the recursive solver.
///
/// `weight().re() == p() / r()` and `weight().im() == q() / r()` after
/// every update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecursiveState {
    p: f64,
    q: f64,
    r: f64,
    weight: FilterWeight,
    samples_seen: u64,
}

/// `P[0] = eps w0.re`, `Q[0] = eps w0.im`, `R[0] = eps`.
pub fn recursive_init(cfg: &RecursiveInitConfig) -> Result<RecursiveState> {
    let eps = cfg.epsilon;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::param("epsilon", format!("must be positive, got {eps}")));
    }
    let w = cfg.initial_weight;
    Ok(RecursiveState {
        p: eps * w.re(),
        q: eps * w.im(),
        r: eps,
        weight: w,
        samples_seen: 0,
    })
}

impl RecursiveState {
    /// Folds in one sample. The kernel weights are evaluated at the current
    /// (pre-update) weight.
    pub fn update(&mut self, x: ComplexScalar, d: ComplexScalar, bw: KernelBandwidth) {
        self.samples_seen += 1;
        let (g1, g2) = weighting_factors(self.weight, x, d, bw);
        let g = g1 * g2;
        let power = g * x.norm_sqr();
        if power == 0.0 {
            // Nothing to accumulate; keep the weight bit-for-bit.
            return;
        }
        let cross = d * x.conj();
        self.p += g * cross.re;
        self.q += g * cross.im;
        self.r += power;
        self.weight = FilterWeight(ComplexScalar::new(self.p / self.r, self.q / self.r));
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn weight(&self) -> FilterWeight {
        self.weight
    }

    pub fn samples_seen(&self) -> u64 {
        self.samples_seen
    }
}

pub fn recursive_update(state: RecursiveState, x: ComplexScalar, d: ComplexScalar, bw: KernelBandwidth) -> RecursiveState {
    let mut next = state;
    next.update(x, d, bw);
    next
}
