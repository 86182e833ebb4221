//! The construction-DAG calculus.
//!
//! Spaces are built from formal bases by projective bundles, blow-ups, fiber
//! products and divisors. Each node knows its Picard basis and dimension;
//! canonical classes follow from Euler sequences, the blow-up formula and
//! adjunction. Bundles are known only by `(rank, c₁)`.
//!
//! Convention: `ℙ(F)` parametrizes lines in `F`, the tautological sub line
//! `O(−1) ⊂ π*F` has `c₁ = −ξ`, and the relative tangent bundle comes from
//! `0 → O → π*F ⊗ O(1) → T → 0`.

mod bundle;
mod canonical;
mod cohomology;
mod pullback;
mod space;

pub use bundle::{relative_tangent, tautological_sub, FormalBundle};
pub use canonical::{ambient_canonical_restriction, blowup_restricted_canonical, canonical_class};
pub use cohomology::{coh_dim_product_proj, h_p2};
pub use pullback::{transport_class, Basis, PullbackMap, TransportStep};
pub use space::{CenterSpec, DivClass, Space, SpaceId, SpaceKind, Tower};

use thiserror::Error;

use crate::kernel::KernelError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TowerError {
    #[error("space {0:?} is defined twice")]
    DuplicateSpace(String),
    #[error("generator {generator:?} appears twice in space {space:?}")]
    DuplicateGenerator { space: String, generator: String },
    #[error("unknown space {0:?}")]
    UnknownSpace(String),
    #[error("space {space:?} has no generator {generator:?}")]
    UnknownGenerator { space: String, generator: String },
    #[error("{what}: expected length {expected}, got {got}")]
    Length { what: String, expected: usize, got: usize },
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("missing canonical class declaration for base {0:?}")]
    MissingCanonical(String),
    #[error("invalid rank: {0}")]
    InvalidRank(String),
    #[error("rank underflow: {0}")]
    RankUnderflow(String),
    #[error("{0:?} is not a projective bundle")]
    NotProjBundle(String),
    #[error("{0:?} is not a blow-up")]
    NotBlowUp(String),
    #[error("{0:?} is not a fiber product")]
    NotFiberProduct(String),
    #[error("{ancestor:?} is not below {descendant:?} in the tower")]
    NotAncestor { ancestor: String, descendant: String },
    #[error("not invertible: {0}")]
    NonInvertible(String),
    #[error("cannot drop coordinate: {0}")]
    BadDrop(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("invalid construction: {0}")]
    Invalid(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}
