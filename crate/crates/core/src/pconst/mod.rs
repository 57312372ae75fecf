//! Rings of constants and the decision procedures built on them.
//!
//! Kernel computations are truncated at a degree bound and say so; the
//! final verdicts (generator extraction, witness certification) are checked
//! by bound-free identities.

mod hunt;
mod kernel;
mod membership;
mod twovar;
mod witness;

use thiserror::Error;

use crate::deriv::DerivError;
use crate::poly::{Context, PolyError};

pub use hunt::{hunt_counterexamples, HuntCandidate, HuntConfig, HuntReport, WITNESS_NOT_FOUND};
pub use kernel::{
    kernel_basis, minimal_non_b_constant, non_b_constants, KernelBasis, MAX_LINEAR_COLUMNS,
};
pub use membership::{b_algebra_membership, Membership};
pub use twovar::{classify_two_vars, find_generator_two_vars, TwoVarReport};
pub use witness::{
    certify_jacobian_witness, check_corollary1, check_corollary2, is_p_independent, JacobianWitness,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstError {
    #[error(transparent)]
    Deriv(#[from] DerivError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("parameter variables are not supported here; K must be F_p")]
    ParametersPresent,
    #[error("degree bound {bound} needs {columns} unknowns, above the limit {limit}")]
    BoundTooLarge {
        bound: u32,
        columns: u64,
        limit: u64,
    },
    #[error("no constant outside K[x^p, y^p] of degree <= {0}; retry with a larger bound")]
    NoCandidate(u32),
    #[error("expected two main variables, got {0}")]
    NotTwoVariables(usize),
    #[error("the derivation is not Jacobian")]
    NotJacobian,
    #[error("the derivation is not irreducible (images share the factor {0})")]
    NotIrreducible(String),
    #[error("{0} is not a constant of the derivation")]
    NotAConstant(String),
    #[error("dgcd = {0} is not a unit")]
    DgcdNotUnit(String),
    #[error("the derivation is not a unit multiple of d_F")]
    RatioNotUnit,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl ConstError {
    /// Failures that a larger bound (or smaller request) might avoid.
    pub fn is_bound_exceeded(&self) -> bool {
        matches!(
            self,
            ConstError::BoundTooLarge { .. } | ConstError::NoCandidate(_)
        )
    }
}

fn require_no_params(ctx: &Context) -> Result<(), ConstError> {
    if ctx.has_params() {
        Err(ConstError::ParametersPresent)
    } else {
        Ok(())
    }
}
