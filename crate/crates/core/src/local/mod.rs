//! Linear-algebra models of the singularities at polystable points.
//!
//! Two local models appear. Along the deepest stratum the tangent data is a
//! homomorphism `φ: W → E` with isotropic image, where `W` is the Lie algebra
//! of `PGL(2)` with its Killing form and `E` is a symplectic space. At a point
//! `I_{Z₁} ⊕ I_{Z₂}` the data is a pair of mixed Ext classes `(e₁₂, e₂₁)`
//! paired perfectly against each other.

mod forms;
mod incidence;
mod quadric;
mod stabilizer;
mod yoneda;

pub use forms::{is_isotropic, HomWE, QuadSpaceW, SymplecticSpace};
pub use incidence::{
    fixed_locus_incidence, isotropy_equivalence_fp, omega_fp, projective_points, EquivalenceReport,
    IncidenceReport,
};
pub use quadric::{
    normal_cone_quadric, pairing_quadric, pullback_omega_quadrics, regular_sequence_check,
    symmetric_diagonalization, symmetric_rank, Quadric, QuadricReport,
};
pub use stabilizer::{stabilizer_class_omega, stabilizer_class_sigma, StabilizerClass};
pub use yoneda::{
    po2_act, yoneda_omega, yoneda_sigma, DiagonalExts, ExtPair, Po2Element, Po2Outcome, PsiRelation,
    SigmaValue,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LocalModelError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid form: {0}")]
    Invalid(String),
    #[error("not in Hom^ω: the image of φ is not isotropic")]
    NotInHomOmega,
    #[error("the pairing between the Ext spaces is singular")]
    SingularPairing,
    #[error("degenerate model: the supplied pairing is rank-deficient")]
    DegenerateModel,
    #[error("scaling by λ = 0 is not a group element")]
    ZeroScale,
    #[error("n = {0} is below the minimum 3")]
    NTooSmall(i64),
    #[error("m = {0} must be even and positive")]
    OddDimension(usize),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("quadric #{0} is not homogeneous")]
    NonHomogeneous(usize),
}
