//! Rational minimax approximation of sampled functions by the AAA-Lawson method.
//!
//! A degree-`n` fit runs in two phases: a greedy AAA interpolant, then a
//! linearized barycentric Lawson iteration (iteratively reweighted least
//! squares) that pushes the error curve toward equioscillation.
//!
//! ```
//! use aaa_lawson::{aaa_fit, lawson_run, LawsonConfig, SampleSet, Complex};
//!
//! let z: Vec<Complex<f64>> = (1..=200)
//!     .map(|k| Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 200.0))
//!     .collect();
//! let f: Vec<_> = z.iter().map(|z| z.exp()).collect();
//! let samples = SampleSet::new(z, f, true).unwrap();
//! let (r0, _) = aaa_fit(&samples, 3).unwrap();
//! let out = lawson_run(&samples, &r0, &LawsonConfig::default()).unwrap();
//! assert!(out.max_error < 2e-5);
//! ```

pub mod aaa;
pub mod barycentric;
pub mod catalog;
pub mod domains;
pub mod driver;
pub mod functions;
pub mod io;
pub mod lawson;
pub mod numerics;
pub mod samples;
pub mod svg;

use std::fmt::{Debug, Display};
use std::iter::Sum;

pub use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

pub use barycentric::{
    from_quotient, max_error, winding_number, BarycentricRational, Eval, MaxError, Mode, NodePolynomial,
    PoleReport,
};
pub use numerics::{generalized_eigenvalues, smallest_singular_vector, ComplexMatrix, Eigenvalues};
pub use aaa::{aaa_fit, loewner_matrix, AaaRecord, AaaTrace};
pub use lawson::{
    lawson_matrix, lawson_run, lawson_step, locate_support, nonlinear_errors, LawsonConfig, LawsonOutcome,
    LawsonState, StepRule, StepStatus, StopReason,
};
pub use samples::SampleSet;
pub use catalog::{FailureClass, ProblemEntry};
pub use domains::{DomainSpec, Grid, Law, Piece};
pub use driver::{run_file, run_problem, run_samples, ApproxReport, Overrides, RunOptions, Winding};
pub use functions::FunctionDescriptor;

/// Scalar bound shared by every generic routine in the crate (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Sum + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + NumAssign
        + Debug
        + Display
        + Default
        + Sum
        + Send
        + Sync
        + 'static
{
}

pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal fits the scalar type")
}

/// Converts a double-precision relative tolerance to the working precision,
/// keeping its ratio to machine epsilon.
pub(crate) fn rel_tol<T: Real>(x: f64) -> T {
    lit::<T>(x / f64::EPSILON) * T::epsilon()
}

pub type Rational32 = BarycentricRational<f32>;
pub type Rational64 = BarycentricRational<f64>;
pub type Samples64 = SampleSet<f64>;
pub type Matrix64 = ComplexMatrix<f64>;
pub type Lawson64 = LawsonOutcome<f64>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("insufficient samples: degree {degree} needs at least {needed} points, got {got}")]
    InsufficientSamples {
        degree: usize,
        needed: usize,
        got: usize,
    },
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("winding number undefined: {0}")]
    WindingUndefined(String),
    #[error("winding number unresolved: {0}")]
    WindingUnresolved(String),
    #[error("grid build error: {0}")]
    Build(String),
    #[error("unknown problem `{name}`{}", .suggestion.as_ref().map(|s| format!(", did you mean `{s}`?")).unwrap_or_default())]
    UnknownProblem {
        name: String,
        suggestion: Option<String>,
    },
    #[error("problem `{name}` is a stub: {reason}")]
    Stub { name: String, reason: String },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("evaluation error: {0}")]
    Evaluation(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
