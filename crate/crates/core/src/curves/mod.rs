//! Curve classes, the intersection pairing, pushforward solving, cones,
//! extremality certificates and the Mori-cone propagation rule.
//!
//! A curve class is known only through its intersection numbers against the
//! Picard generators of the space it lives on.

mod chain;
mod class;
mod cone;
mod restriction;

pub use chain::{mori_propagate, ChainOutcome, ChainSpec, ChainStep, StepReport};
pub use class::{
    build_curve, intersect, kneg_check, pairing_table, pushforward, solve_pushforward, AtomicCurveSpec, CurveClass,
    CurveOrigin, KNegEntry, KNegReport,
};
pub use cone::{extremal_certificate, verify_certificate, Cone, DependencyWitness, ExtremalOutcome, DEFAULT_HEIGHT_BOUND};
pub use restriction::{restriction_kernel, RestrictionKernel};

use thiserror::Error;

use crate::kernel::KernelError;
use crate::tower::TowerError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("{generator:?} is not the tautological generator of a projective bundle under {space:?}")]
    NotTautological { space: String, generator: String },
    #[error("{0:?} is not a blow-up")]
    NotBlowUp(String),
    #[error("the center of {0:?} declares no restriction class for its exceptional divisor")]
    MissingRestrictionClass(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("{what}: expected length {expected}, got {got}")]
    Length { what: String, expected: usize, got: usize },
    #[error("the pairing table is singular")]
    SingularTable,
    #[error("the observed pairings are inconsistent with the table")]
    Inconsistent,
    #[error("step {step:?}: hypothesis violated: {condition}")]
    Hypothesis { step: String, condition: String },
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}
