//! Stabilizer classification at the two kinds of polystable points.

use serde::{Deserialize, Serialize};

use super::{yoneda_omega, ExtPair, HomWE, LocalModelError, QuadSpaceW, SymplecticSpace};
use crate::kernel::{kernel_basis, Rat, RatMatrix};

/// Stabilizer type of a point of a local model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StabilizerClass {
    /// The whole of `SO(W)` (equivalently `PGL(2)`).
    FullSoW,
    /// A one-dimensional additive group.
    Additive,
    /// A one-dimensional multiplicative group.
    Multiplicative,
    /// The trivial group.
    Trivial,
}

impl StabilizerClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            StabilizerClass::FullSoW => "FULL_SO_W",
            StabilizerClass::Additive => "ADDITIVE",
            StabilizerClass::Multiplicative => "MULTIPLICATIVE",
            StabilizerClass::Trivial => "TRIVIAL",
        }
    }
}

impl std::fmt::Display for StabilizerClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Stabilizer in `PGL(2) = SO(W)` of `φ ∈ Hom^ω(W, E)`.
///
/// `φ = 0` is fixed by everything; if `rk φ ≥ 2` only the identity fixes it;
/// if `rk φ = 1` the stabilizer is the one-parameter group fixing the line
/// `ker(φ)^{⊥κ}`, additive when that line is `κ`-isotropic and multiplicative
/// otherwise.
pub fn stabilizer_class_omega(
    phi: &HomWE,
    w: &QuadSpaceW,
    e: &SymplecticSpace,
) -> Result<StabilizerClass, LocalModelError> {
    let form = yoneda_omega(phi, e)?;
    if form.iter().any(|c| !c.is_zero()) {
        return Err(LocalModelError::NotInHomOmega);
    }
    match phi.rank() {
        0 => Ok(StabilizerClass::FullSoW),
        1 => {
            let ker = kernel_basis(phi.matrix());
            debug_assert_eq!(ker.len(), 2);
            // v ∈ ker^{⊥κ} iff (K^t G) v = 0 where K has the kernel as columns.
            let k = RatMatrix::from_rows(ker).expect("kernel vectors share a length");
            let constraints = k.mul(w.gram()).map_err(|e| LocalModelError::Dimension(e.to_string()))?;
            let perp = kernel_basis(&constraints);
            debug_assert_eq!(perp.len(), 1);
            let v = &perp[0];
            if w.kappa(v, v)?.is_zero() {
                Ok(StabilizerClass::Additive)
            } else {
                Ok(StabilizerClass::Multiplicative)
            }
        }
        _ => Ok(StabilizerClass::Trivial),
    }
}

/// Stabilizer in `C*` of an Ext pair: multiplicative exactly when both
/// components vanish, trivial otherwise.
pub fn stabilizer_class_sigma(pair: &ExtPair) -> StabilizerClass {
    let zero = |v: &[Rat]| v.iter().all(Rat::is_zero);
    if zero(pair.e12()) && zero(pair.e21()) {
        StabilizerClass::Multiplicative
    } else {
        StabilizerClass::Trivial
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn table_examples() {
        let e = SymplecticSpace::standard(2);
        let w = QuadSpaceW::default();
        let x1 = col(&[1, 0, 0, 0]);
        let x2 = col(&[0, 1, 0, 0]);
        let z = col(&[0, 0, 0, 0]);
        assert_eq!(stabilizer_class_omega(&HomWE::zero(4), &w, &e).unwrap(), StabilizerClass::FullSoW);
        // ker = span{w2, w3}
        let phi = HomWE::from_images([x1.clone(), z.clone(), z.clone()]).unwrap();
        assert_eq!(stabilizer_class_omega(&phi, &w, &e).unwrap(), StabilizerClass::Additive);
        // ker = span{w1, w3}
        let phi = HomWE::from_images([z.clone(), x1.clone(), z.clone()]).unwrap();
        assert_eq!(stabilizer_class_omega(&phi, &w, &e).unwrap(), StabilizerClass::Multiplicative);
        let phi = HomWE::from_images([x1, x2, z]).unwrap();
        assert_eq!(stabilizer_class_omega(&phi, &w, &e).unwrap(), StabilizerClass::Trivial);
    }

    #[test]
    fn non_isotropic_rejected() {
        let e = SymplecticSpace::standard(2);
        let phi = HomWE::from_images([col(&[1, 0, 0, 0]), col(&[0, 0, 1, 0]), col(&[0, 0, 0, 0])]).unwrap();
        assert!(matches!(
            stabilizer_class_omega(&phi, &QuadSpaceW::default(), &e),
            Err(LocalModelError::NotInHomOmega)
        ));
    }

    #[test]
    fn sigma_classes() {
        let zero = ExtPair::with_identity(col(&[0, 0]), col(&[0, 0])).unwrap();
        assert_eq!(stabilizer_class_sigma(&zero), StabilizerClass::Multiplicative);
        let one = ExtPair::with_identity(col(&[1, 0]), col(&[0, 0])).unwrap();
        assert_eq!(stabilizer_class_sigma(&one), StabilizerClass::Trivial);
    }
}
