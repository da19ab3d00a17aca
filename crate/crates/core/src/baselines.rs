//! Comparison baselines: scalar complex RLS and closed-form least squares.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::ComplexScalar;
use crate::solver::{FilterWeight, PairedDataset};

pub const DEFAULT_RLS_LAMBDA: f64 = 0.99;
pub const DEFAULT_RLS_P0: f64 = 1.0;

/// Exponentially weighted RLS for a single complex tap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RlsState {
    weight: FilterWeight,
    p: f64,
    lambda: f64,
}

impl RlsState {
    pub fn new(initial_weight: FilterWeight, p0: f64, lambda: f64) -> Result<Self> {
        if !(p0 > 0.0 && p0.is_finite()) {
            return Err(Error::param("rls_p0", format!("must be positive, got {p0}")));
        }
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(Error::param("rls_lambda", format!("must lie in (0, 1], got {lambda}")));
        }
        Ok(Self {
            weight: initial_weight,
            p: p0,
            lambda,
        })
    }

    pub fn update(&mut self, x: ComplexScalar, d: ComplexScalar) {
        let power = x.norm_sqr();
        let denom = self.lambda + power * self.p;
        let gain = x.conj() * (self.p / denom);
        let error = d - self.weight.value() * x;
        self.weight = FilterWeight::from_complex(self.weight.value() + gain * error)
            .expect("RLS weight stays finite for finite inputs");
        // (p - k x p) / lambda with k x = p |x|^2 / denom
        self.p /= denom;
    }

    pub fn weight(&self) -> FilterWeight {
        self.weight
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

pub fn rls_update(state: RlsState, x: ComplexScalar, d: ComplexScalar) -> RlsState {
    let mut next = state;
    next.update(x, d);
    next
}

/// `sum d_n conj(x_n) / sum |x_n|^2`.
pub fn least_squares_weight(data: &PairedDataset) -> Result<FilterWeight> {
    let (num, den) = data.pairs().fold((ComplexScalar::new(0.0, 0.0), 0.0), |(num, den), (x, d)| {
        (num + d * x.conj(), den + x.norm_sqr())
    });
    if den == 0.0 {
        return Err(Error::Unidentifiable);
    }
    FilterWeight::from_complex(num / den)
}
