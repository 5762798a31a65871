//! Conformal transplantation of a square eigenfunction onto the unit disk,
//! its Bessel expansion, and the correction function that turns it into a
//! disk eigenfunction.

pub mod bessel;
pub mod correction;
mod demo;
pub mod elliptic;
pub mod expansion;
mod io;
pub mod map;
pub mod quadrature;

use num_complex::Complex64;
use thiserror::Error;

pub use bessel::{bessel_j, bessel_j_prime, bessel_zero};
pub use correction::{correction_function, transplant_source, Correction, CorrectionSpec, DiskBasis};
pub use demo::{run_demo, Demo, DemoConfig, DemoReport, ErrorPair};
pub use elliptic::{carlson_rf, elliptic_f};
pub use expansion::{
    bessel_expand, grid_terms, paired_terms, transplant_error, transplant_mode, BesselExpansion, BesselTerm, ErrorNorm,
    SquareMode, TransplantedMode,
};
pub use io::{coefficients_csv, demo_svgs, metrics_json};
pub use map::{SquareMap, ROUNDED_CONSTANT};
pub use quadrature::{gauss_legendre, DiskQuadrature};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConformalError {
    #[error("argument out of domain: {0}")]
    OutOfDomain(String),
    #[error("no convergence: {0}")]
    ConvergenceFailure(String),
    #[error("on a branch cut; one-sided values {below} and {above}")]
    BranchCut { below: Complex64, above: Complex64 },
    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
    #[error("eigenvalue gap too small at basis function {0}")]
    SmallDenominator(usize),
    #[error("term count {0} outside 1..=10")]
    InvalidTerms(usize),
}
