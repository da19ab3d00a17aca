//! Validated sample containers and the kernel bandwidth newtype.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single complex sample `re + j im`.
pub type ComplexScalar = Complex64;

/// Gaussian kernel size `sigma`, strictly positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct KernelBandwidth(f64);

impl KernelBandwidth {
    pub fn new(sigma: f64) -> Result<Self> {
        if sigma > 0.0 && sigma.is_finite() {
            Ok(Self(sigma))
        } else {
            Err(Error::InvalidBandwidth(sigma))
        }
    }

    #[inline]
    pub fn sigma(self) -> f64 {
        self.0
    }

    /// The bandwidth scaled by `sqrt(2)`, used by the complex estimator.
    pub fn widened(self) -> Self {
        Self(self.0 * std::f64::consts::SQRT_2)
    }
}

impl TryFrom<f64> for KernelBandwidth {
    type Error = Error;

    fn try_from(sigma: f64) -> Result<Self> {
        Self::new(sigma)
    }
}

impl From<KernelBandwidth> for f64 {
    fn from(bw: KernelBandwidth) -> f64 {
        bw.0
    }
}

/// Nonempty sequence of finite real samples.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSampleSet(Vec<f64>);

impl RealSampleSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySampleSet);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Nonempty sequence of complex samples with finite components.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSampleSet(Vec<ComplexScalar>);

impl ComplexSampleSet {
    pub fn new(values: Vec<ComplexScalar>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySampleSet);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self(values))
    }

    /// Builds a set from separate real and imaginary parts.
    pub fn from_parts(re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::LengthMismatch {
                left: re.len(),
                right: im.len(),
            });
        }
        Self::new(
            re.iter()
                .zip(im)
                .map(|(&r, &i)| ComplexScalar::new(r, i))
                .collect(),
        )
    }

    /// Lifts a real sample set onto the real axis.
    pub fn from_real(reals: &RealSampleSet) -> Self {
        Self(
            reals
                .values()
                .iter()
                .map(|&r| ComplexScalar::new(r, 0.0))
                .collect(),
        )
    }

    pub fn values(&self) -> &[ComplexScalar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest absolute value of any real or imaginary component.
    pub fn max_abs_component(&self) -> f64 {
        self.0
            .iter()
            .map(|c| c.re.abs().max(c.im.abs()))
            .fold(0.0, f64::max)
    }
}

pub(crate) fn ensure_same_len(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::LengthMismatch { left, right })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bandwidth_rejects_non_positive() {
        assert!(KernelBandwidth::new(0.0).is_err());
        assert!(KernelBandwidth::new(-1.0).is_err());
        assert!(KernelBandwidth::new(f64::NAN).is_err());
        assert!(KernelBandwidth::new(f64::INFINITY).is_err());
        assert_eq!(KernelBandwidth::new(0.5).unwrap().sigma(), 0.5);
    }

    #[test]
    fn sample_sets_reject_empty_and_non_finite() {
        assert_eq!(RealSampleSet::new(vec![]), Err(Error::EmptySampleSet));
        assert_eq!(
            RealSampleSet::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1 })
        );
        assert_eq!(
            ComplexSampleSet::new(vec![ComplexScalar::new(0.0, f64::INFINITY)]),
            Err(Error::NonFinite { index: 0 })
        );
        assert!(ComplexSampleSet::from_parts(&[1.0], &[1.0, 2.0]).is_err());
    }
}
