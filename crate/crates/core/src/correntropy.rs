//! Gaussian kernel, Parzen density estimation and the real and complex
//! correntropy estimators.
//!
//! The complex estimator is the mean over samples of the product of two
//! Gaussian kernels of width `sigma * sqrt(2)`, one applied to the real-part
//! residual and one to the imaginary-part residual. Since
//! `G_{s}(a) G_{s}(b) = exp(-(a^2 + b^2) / (2 s^2)) / (2 pi s^2)`, this is
//! evaluated as `1 / (4 pi sigma^2)` times the mean of
//! `exp(-|c1 - c2|^2 / (4 sigma^2))`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::sample::{ensure_same_len, ComplexSampleSet, ComplexScalar, KernelBandwidth, RealSampleSet};

/// One-dimensional normalized Gaussian kernel `G_sigma(u)`.
#[inline]
pub fn gaussian_kernel(u: f64, bw: KernelBandwidth) -> f64 {
    let sigma = bw.sigma();
    (-(u * u) / (2.0 * sigma * sigma)).exp() / ((2.0 * PI).sqrt() * sigma)
}

/// Peak value of the complex correntropy estimator, `1 / (4 pi sigma^2)`.
#[inline]
pub fn complex_peak(bw: KernelBandwidth) -> f64 {
    let sigma = bw.sigma();
    1.0 / (4.0 * PI * sigma * sigma)
}

/// Correntropy between two real sample sets: the mean kernel value of the
/// pairwise differences.
pub fn real_correntropy(xs: &RealSampleSet, ys: &RealSampleSet, bw: KernelBandwidth) -> Result<f64> {
    ensure_same_len(xs.len(), ys.len())?;
    let sum: f64 = xs
        .values()
        .iter()
        .zip(ys.values())
        .map(|(x, y)| gaussian_kernel(x - y, bw))
        .sum();
    Ok(sum / xs.len() as f64)
}

/// Complex correntropy between two complex sample sets.
pub fn complex_correntropy(c1: &ComplexSampleSet, c2: &ComplexSampleSet, bw: KernelBandwidth) -> Result<f64> {
    ensure_same_len(c1.len(), c2.len())?;
    Ok(mean_complex_similarity(
        c1.values().iter().zip(c2.values()).map(|(a, b)| a - b),
        bw,
    ))
}

/// Complex correntropy of a stream of residuals `c1_n - c2_n`.
///
/// Summation runs over values in `(0, 1]` before scaling by the peak, so the
/// result never exceeds `complex_peak(bw)` even after rounding.
pub(crate) fn mean_complex_similarity<I>(residuals: I, bw: KernelBandwidth) -> f64
where
    I: Iterator<Item = ComplexScalar>,
{
    let sigma = bw.sigma();
    let scale = 4.0 * sigma * sigma;
    let (sum, n) = residuals.fold((0.0_f64, 0usize), |(acc, n), e| {
        (acc + (-e.norm_sqr() / scale).exp(), n + 1)
    });
    complex_peak(bw) * (sum / n as f64)
}

/// L-dimensional Parzen estimate with a product Gaussian kernel, evaluated at
/// `query`.
pub fn parzen_density<P: AsRef<[f64]>>(samples: &[P], query: &[f64], bw: KernelBandwidth) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let dim = query.len();
    if dim == 0 {
        return Err(Error::param("query", "dimension must be at least 1"));
    }
    let mut sum = 0.0;
    for (index, point) in samples.iter().enumerate() {
        let point = point.as_ref();
        if point.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: point.len(),
                index,
            });
        }
        sum += point
            .iter()
            .zip(query)
            .map(|(x, q)| gaussian_kernel(q - x, bw))
            .product::<f64>();
    }
    Ok(sum / samples.len() as f64)
}

/// Mean squared modulus of the pairwise gap, `(1/N) sum |c1_n - c2_n|^2`.
pub fn sample_mean_squared_gap(c1: &ComplexSampleSet, c2: &ComplexSampleSet) -> Result<f64> {
    ensure_same_len(c1.len(), c2.len())?;
    let sum: f64 = c1
        .values()
        .iter()
        .zip(c2.values())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum();
    Ok(sum / c1.len() as f64)
}
