//! Linear-algebra cross-check of the genie-aided bounds.
//!
//! The genie-aided channel is a finite set of jointly Gaussian scalars, so
//! every mutual information the converse argument needs can be evaluated
//! exactly from covariance determinants. This module builds those
//! covariances and compares the resulting quantities with the closed-form
//! gaps used by [`crate::bounds`].

mod genie;
mod system;

use thiserror::Error;

pub use genie::{
    build_system, gap_closed_form, gap_monotone_in_rho, mac_rate_oracle, optimal_genie,
    verify_gap_formula, verify_zero_term, GenieConfig, GenieFlavor, ADMISSIBLE_SLACK,
};
pub use system::{conditional_mi, GaussianSystem, DEGENERATE_EIG, PSD_TOL, SINGULAR_DET};

/// Variable labels used by [`build_system`].
pub mod var {
    pub const X1: &str = "X1";
    pub const X2: &str = "X2";
    pub const Z1: &str = "Z1";
    pub const W: &str = "W";
    pub const Y1: &str = "Y1";
    pub const S1: &str = "S1";
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("covariance is {rows}x{cols} but {names} variables are named")]
    Shape {
        names: usize,
        rows: usize,
        cols: usize,
    },
    #[error("variable {0} is named twice")]
    DuplicateName(String),
    #[error("covariance has non-finite entries")]
    NotFinite,
    #[error("covariance is not symmetric at ({0}, {1})")]
    Asymmetric(String, String),
    #[error("covariance is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("variable {0} appears in more than one argument set")]
    Overlap(String),
    #[error("covariance of {{{}}} is singular", .0.join(", "))]
    Singular(Vec<String>),
    #[error("correlation coefficient must lie in [-1, 1], got {0}")]
    InvalidRho(f64),
    #[error("genie noise scale must be finite, got {0}")]
    InvalidEta(f64),
    #[error("ρ² = 1 makes the genie noise a copy of the receiver noise")]
    UnitCorrelation,
    #[error("squared correlation grid value {0} outside [0, 1)")]
    InvalidRhoGrid(f64),
    #[error("outside the validity region: {0}")]
    OutsideValidity(&'static str),
}
