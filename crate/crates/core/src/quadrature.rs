//! Numerical oracle for complex correntropy.
//!
//! Evaluates the double integral of the four-dimensional product-kernel
//! Parzen density restricted to the diagonal `x = y = u1`, `z = s = u2`,
//! on a tensor-product trapezoid grid. The integrand is a sum of Gaussians,
//! so the trapezoid rule converges spectrally once the grid resolves the
//! kernel width. Convergence is confirmed by halving the grid spacing.

use crate::correntropy::gaussian_kernel;
use crate::error::{Error, Result};
use crate::sample::{ensure_same_len, ComplexSampleSet, KernelBandwidth};

/// Minimum padding, in bandwidths, between the samples and the box edge.
pub const MIN_PADDING_SIGMAS: f64 = 6.0;
/// Padding used by [`QuadratureSpec::covering`].
pub const DEFAULT_PADDING_SIGMAS: f64 = 8.0;
pub const DEFAULT_NODES: usize = 257;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Integration box `[-half_width, half_width]^2` and grid resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub half_width: f64,
    /// Nodes per axis, including both end points.
    pub nodes: usize,
    /// Relative change allowed when the node count is doubled.
    pub tolerance: f64,
}

impl QuadratureSpec {
    /// Default box: every sample component plus eight bandwidths of padding,
    /// 257 nodes per axis.
    pub fn covering(c1: &ComplexSampleSet, c2: &ComplexSampleSet, bw: KernelBandwidth) -> Self {
        let extent = c1.max_abs_component().max(c2.max_abs_component());
        Self {
            half_width: extent + DEFAULT_PADDING_SIGMAS * bw.sigma(),
            nodes: DEFAULT_NODES,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(Error::param("half_width", format!("must be positive, got {}", self.half_width)));
        }
        if self.nodes < 3 {
            return Err(Error::param("nodes", format!("need at least 3, got {}", self.nodes)));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::param("tolerance", format!("must be positive, got {}", self.tolerance)));
        }
        Ok(())
    }
}

/// Complex correntropy computed from its defining diagonal integral.
///
/// Fails with [`Error::QuadratureRange`] if a sample component lies closer
/// than six bandwidths to the box edge, and with
/// [`Error::QuadratureNotConverged`] if doubling the node count moves the
/// result by more than `quad.tolerance` (relative).
pub fn correntropy_integral_oracle(
    c1: &ComplexSampleSet,
    c2: &ComplexSampleSet,
    bw: KernelBandwidth,
    quad: QuadratureSpec,
) -> Result<f64> {
    ensure_same_len(c1.len(), c2.len())?;
    quad.validate()?;
    let padding = MIN_PADDING_SIGMAS * bw.sigma();
    let extent = c1.max_abs_component().max(c2.max_abs_component());
    if extent + padding > quad.half_width {
        return Err(Error::QuadratureRange {
            half_width: quad.half_width,
            value: extent,
            padding,
        });
    }

    let coarse = diagonal_integral(c1, c2, bw, quad.half_width, quad.nodes);
    let fine_nodes = 2 * quad.nodes - 1;
    let fine = diagonal_integral(c1, c2, bw, quad.half_width, fine_nodes);
    if (fine - coarse).abs() > quad.tolerance * fine.abs() {
        return Err(Error::QuadratureNotConverged {
            coarse,
            fine,
            nodes: quad.nodes,
            tolerance: quad.tolerance,
        });
    }
    Ok(fine)
}

/// Composite trapezoid rule over `[lo, hi]` with `intervals` panels.
pub fn trapezoid(f: impl Fn(f64) -> f64, lo: f64, hi: f64, intervals: usize) -> f64 {
    let h = (hi - lo) / intervals as f64;
    let inner: f64 = (1..intervals).map(|i| f(lo + i as f64 * h)).sum();
    h * (inner + 0.5 * (f(lo) + f(hi)))
}

fn diagonal_integral(
    c1: &ComplexSampleSet,
    c2: &ComplexSampleSet,
    bw: KernelBandwidth,
    half_width: f64,
    nodes: usize,
) -> f64 {
    let step = 2.0 * half_width / (nodes - 1) as f64;
    let grid: Vec<f64> = (0..nodes).map(|i| -half_width + i as f64 * step).collect();
    let weight = |i: usize| if i == 0 || i == nodes - 1 { 0.5 * step } else { step };

    // Per-sample kernel products along each axis:
    // re_axis[n][i] = G(u1_i - x_n) G(u1_i - y_n), im_axis[n][j] likewise.
    let axis = |a: f64, b: f64| -> Vec<f64> {
        grid.iter()
            .map(|&u| gaussian_kernel(u - a, bw) * gaussian_kernel(u - b, bw))
            .collect()
    };
    let pairs = c1.values().iter().zip(c2.values());
    let re_axis: Vec<Vec<f64>> = pairs.clone().map(|(p, q)| axis(p.re, q.re)).collect();
    let im_axis: Vec<Vec<f64>> = pairs.map(|(p, q)| axis(p.im, q.im)).collect();
    let n = c1.len() as f64;

    let mut total = 0.0;
    for i in 0..nodes {
        let mut row = 0.0;
        for j in 0..nodes {
            let density: f64 = re_axis
                .iter()
                .zip(&im_axis)
                .map(|(re, im)| re[i] * im[j])
                .sum::<f64>()
                / n;
            row += weight(j) * density;
        }
        total += weight(i) * row;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correntropy::complex_correntropy;
    use crate::sample::ComplexScalar;
    use std::f64::consts::PI;

    fn bw(s: f64) -> KernelBandwidth {
        KernelBandwidth::new(s).unwrap()
    }

    #[test]
    fn origin_pair_gives_self_convolution_peak() {
        let z = ComplexSampleSet::new(vec![ComplexScalar::new(0.0, 0.0)]).unwrap();
        let spec = QuadratureSpec::covering(&z, &z, bw(1.0));
        let v = correntropy_integral_oracle(&z, &z, bw(1.0), spec).unwrap();
        assert!((v - 1.0 / (4.0 * PI)).abs() < 1e-12, "{v}");
    }

    #[test]
    fn agrees_with_closed_form() {
        let a = ComplexSampleSet::from_parts(&[0.3, -1.0, 2.2], &[1.1, 0.0, -0.7]).unwrap();
        let b = ComplexSampleSet::from_parts(&[0.0, -1.5, 1.0], &[0.2, 0.9, -0.1]).unwrap();
        for s in [0.5, 1.0, 2.0] {
            let spec = QuadratureSpec::covering(&a, &b, bw(s));
            let q = correntropy_integral_oracle(&a, &b, bw(s), spec).unwrap();
            let closed = complex_correntropy(&a, &b, bw(s)).unwrap();
            assert!(((q - closed) / closed).abs() < 1e-6);
        }
    }

    #[test]
    fn box_must_cover_samples() {
        let a = ComplexSampleSet::from_parts(&[5.0], &[0.0]).unwrap();
        let spec = QuadratureSpec {
            half_width: 3.0,
            nodes: DEFAULT_NODES,
            tolerance: DEFAULT_TOLERANCE,
        };
        assert!(matches!(
            correntropy_integral_oracle(&a, &a, bw(1.0), spec),
            Err(Error::QuadratureRange { .. })
        ));
        // Inside the box but with less than six bandwidths of padding.
        let tight = QuadratureSpec { half_width: 10.0, ..spec };
        assert!(matches!(
            correntropy_integral_oracle(&a, &a, bw(1.0), tight),
            Err(Error::QuadratureRange { .. })
        ));
    }

    #[test]
    fn coarse_grid_fails_convergence_check() {
        let a = ComplexSampleSet::from_parts(&[0.0, 1.0], &[0.0, -1.0]).unwrap();
        let b = ComplexSampleSet::from_parts(&[0.5, 0.0], &[0.1, 0.0]).unwrap();
        let spec = QuadratureSpec {
            half_width: 40.0,
            nodes: 9,
            tolerance: 1e-6,
        };
        assert!(matches!(
            correntropy_integral_oracle(&a, &b, bw(0.3), spec),
            Err(Error::QuadratureNotConverged { .. })
        ));
    }

    #[test]
    fn rejects_bad_spec() {
        let a = ComplexSampleSet::from_parts(&[0.0], &[0.0]).unwrap();
        let spec = QuadratureSpec { half_width: 10.0, nodes: 2, tolerance: 1e-8 };
        assert!(matches!(
            correntropy_integral_oracle(&a, &a, bw(1.0), spec),
            Err(Error::InvalidParameter { name: "nodes", .. })
        ));
    }
}
