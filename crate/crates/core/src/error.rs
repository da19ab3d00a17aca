use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("kernel bandwidth must be positive and finite, got {0}")]
    InvalidBandwidth(f64),

    #[error("sample set must contain at least one sample")]
    EmptySampleSet,

    #[error("non-finite value at sample index {index}")]
    NonFinite { index: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, got {found} (point {index})")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        index: usize,
    },

    #[error("integration box half-width {half_width} does not cover sample value {value} with {padding} of padding")]
    QuadratureRange {
        half_width: f64,
        value: f64,
        padding: f64,
    },

    #[error("quadrature did not converge: {coarse} with {nodes} nodes vs {fine} after doubling (tolerance {tolerance})")]
    QuadratureNotConverged {
        coarse: f64,
        fine: f64,
        nodes: usize,
        tolerance: f64,
    },

    #[error("weight is unidentifiable: every input sample is zero")]
    Unidentifiable,

    #[error("kernel collapse: all kernel weights underflowed to zero; use a larger kernel bandwidth than {sigma}")]
    KernelCollapse { sigma: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
