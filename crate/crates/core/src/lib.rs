//! Discrete semilinear heat equation on a box lattice.
//!
//! The nonlinear dynamics
//! `f^{s+1}_n = g^s_n / {1 - alpha*delta*(g^s_n)^alpha}^{1/alpha}`, with `g`
//! the mean of the axis neighbours and zero Dirichlet boundary, blows up when
//! `g` reaches `(alpha*delta)^{-1/alpha}`. This crate simulates it, detects
//! blow-up, builds the majorant super-solution from the spectral solution of
//! the linear averaging problem, and evaluates the series bounds that certify
//! global existence for small data.
//!
//! Numerical routines are generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases below are the usual entry points.

pub mod domain;
pub mod error;
pub mod evolution;
pub mod field;
pub mod majorant;
pub mod rng;
pub mod scalar;
pub mod spectral;

pub use domain::{BoxDomain, Site};
pub use error::{Error, Result};
pub use evolution::{
    normalize_scaling, simulate, step_nonlinear, BlowupReport, BlowupSignal, Outcome, Params,
    Stepped, TraceRecord,
};
pub use field::Field;
pub use majorant::{
    bound_alpha_gt_1, bound_alpha_le_1, certify, compute_trace, find_threshold, majorant_field,
    tail_start, verify_comparison, BisectionStep, BoundReport, ComparisonVerdict, Falsification,
    MajorantTrace, Regime, ThresholdOutcome, ThresholdSearch, COMPARISON_SLACK,
};
pub use rng::{random_field, SeededRng};
pub use scalar::Scalar;
pub use spectral::{apply_m, eigenvalue, step_linear_direct, ModeTable, SpectralCoeffs};

pub type Field64 = Field<f64>;
pub type Field32 = Field<f32>;
pub type Params64 = Params<f64>;
pub type Params32 = Params<f32>;
pub type ModeTable64 = ModeTable<f64>;
pub type ModeTable32 = ModeTable<f32>;
pub type SpectralCoeffs64 = SpectralCoeffs<f64>;
pub type BlowupReport64 = BlowupReport<f64>;
pub type MajorantTrace64 = MajorantTrace<f64>;
pub type BoundReport64 = BoundReport<f64>;
