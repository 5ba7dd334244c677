use thiserror::Error;

/// Errors raised by the lattice routines.
///
/// These are contract violations on inputs. Blow-up of the nonlinear
/// dynamics is an outcome, not an error, and is reported through
/// [`crate::evolution::Stepped`] and [`crate::evolution::Outcome`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("field has {got} values but the domain has {expected} sites")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("site {site:?} is not an interior site of a box with extents {extents:?}")]
    NotInterior {
        site: Vec<usize>,
        extents: Vec<usize>,
    },

    #[error("site {site:?} lies outside a box with extents {extents:?}")]
    OutOfDomain {
        site: Vec<usize>,
        extents: Vec<usize>,
    },

    #[error("boundary site {site:?} has nonzero value {value}")]
    NonzeroBoundary { site: Vec<usize>, value: f64 },

    #[error("site {site:?} has negative value {value}")]
    NegativeValue { site: Vec<usize>, value: f64 },

    #[error("site {site:?} has non-finite value {value}")]
    NonFinite { site: Vec<usize>, value: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("domains differ: {left:?} vs {right:?}")]
    DomainMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("sine interpolation residual {residual:e} exceeds {tolerance:e}")]
    SingularTransform { residual: f64, tolerance: f64 },

    #[error("majorant undefined at step {step}: partial sum reached 1 (defined up to {defined_up_to:?})")]
    MajorantUndefined {
        step: usize,
        defined_up_to: Option<usize>,
    },

    #[error("bound needs m_0..m_{} but only {got} values were supplied", needed.saturating_sub(1))]
    ShortPrefix { needed: usize, got: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
