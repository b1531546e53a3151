//! Genus-3 Thetanullwerte at a reduced Riemann matrix, to arbitrary
//! precision: certified naive summation, the τ-duplication formula with
//! square-root sign resolution, the Borchardt mean, and the quasi-linear
//! Borchardt/Newton evaluator.

pub mod borchardt;
pub mod charindex;
pub mod duplication;
pub mod fast;
pub mod feval;
pub mod naive;

pub use borchardt::{borchardt_mean, borchardt_step, BorchardtMode};
pub use charindex::{index_is_even, index_to_char, theta_index, ThetaCharacteristic};
pub use duplication::{duplication_all_squares, resolve_square_roots};
pub use fast::theta_fast;
pub use feval::{f_eval, f_target};
pub use naive::{theta_c_constant, theta_naive_all, theta_naive_fundamental, truncation_bound};

use mpnum::{BigComplex, MpError};
use siegel::{RiemannMatrix, SiegelError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ThetaError {
    #[error("matrix is not reduced (Minkowski certificate or |Re| ≤ 1/2 failed)")]
    NotReduced,
    #[error("square-root sign cannot be decided at the hint precision")]
    AmbiguousSign,
    #[error("iteration did not converge within its cap")]
    NoConvergence,
    #[error(transparent)]
    Numeric(#[from] MpError),
    #[error(transparent)]
    Siegel(#[from] SiegelError),
}

pub type Result<T> = std::result::Result<T, ThetaError>;

/// The 64 values ϑ_i(0,τ), i = 0..63, at a fixed Riemann matrix.
///
/// Invariants (verified by the evaluators, enforced by tests):
/// the 28 odd entries vanish; for a smooth-quartic period matrix the 36 even
/// entries are nonzero.
#[derive(Debug, Clone)]
pub struct ThetaVector {
    pub values: Vec<BigComplex>,
    pub at_tau: RiemannMatrix,
    pub prec: u32,
}

impl ThetaVector {
    pub fn new(values: Vec<BigComplex>, at_tau: RiemannMatrix, prec: u32) -> Self {
        assert_eq!(values.len(), 64, "a theta vector has 64 entries");
        ThetaVector { values, at_tau, prec }
    }

    pub fn value(&self, i: usize) -> &BigComplex {
        &self.values[i]
    }
}
