//! Yoneda square maps of the two local models and the `PO(2)/μ₂` action on
//! Ext pairs.

use serde::{Deserialize, Serialize};

use super::{HomWE, LocalModelError, SymplecticSpace};
use crate::kernel::{dot, rank, Rat, RatMatrix};

/// Coordinates `((φ*ω)(w₁,w₂), (φ*ω)(w₁,w₃), (φ*ω)(w₂,w₃))` of the pulled-back
/// two-form. Zero exactly when the image of `φ` is isotropic.
pub fn yoneda_omega(phi: &HomWE, e: &SymplecticSpace) -> Result<[Rat; 3], LocalModelError> {
    if phi.target_dim() != e.dim() {
        return Err(LocalModelError::Dimension(format!(
            "φ lands in dimension {} but E has dimension {}",
            phi.target_dim(),
            e.dim()
        )));
    }
    // Gram of φ*ω is Φᵗ Ω Φ.
    let pulled = phi
        .matrix()
        .transpose()
        .mul(e.gram())
        .and_then(|m| m.mul(phi.matrix()))
        .map_err(|err| LocalModelError::Dimension(err.to_string()))?;
    Ok([pulled.get(0, 1).clone(), pulled.get(0, 2).clone(), pulled.get(1, 2).clone()])
}

/// The diagonal Ext components, carried along but never consumed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalExts {
    pub e11: Vec<Rat>,
    pub e22: Vec<Rat>,
}

/// A pair `(e₁₂, e₂₁)` of mixed Ext classes together with the perfect
/// pairing between the two Ext spaces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtPair {
    e12: Vec<Rat>,
    e21: Vec<Rat>,
    pairing: RatMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    diagonal: Option<DiagonalExts>,
}

impl ExtPair {
    pub fn new(e12: Vec<Rat>, e21: Vec<Rat>, pairing: RatMatrix) -> Result<Self, LocalModelError> {
        let k = e12.len();
        if e21.len() != k || pairing.rows() != k || pairing.cols() != k {
            return Err(LocalModelError::Dimension(format!(
                "Ext pair lengths {} and {} do not match a {}x{} pairing",
                k,
                e21.len(),
                pairing.rows(),
                pairing.cols()
            )));
        }
        if rank(&pairing) != k {
            return Err(LocalModelError::SingularPairing);
        }
        Ok(ExtPair { e12, e21, pairing, diagonal: None })
    }

    /// Pair with the identity pairing.
    pub fn with_identity(e12: Vec<Rat>, e21: Vec<Rat>) -> Result<Self, LocalModelError> {
        let k = e12.len();
        ExtPair::new(e12, e21, RatMatrix::identity(k))
    }

    /// Attaches diagonal components; both must have a common length.
    pub fn with_diagonal(mut self, e11: Vec<Rat>, e22: Vec<Rat>) -> Result<Self, LocalModelError> {
        if e11.len() != e22.len() {
            return Err(LocalModelError::Dimension(
                "diagonal Ext components must have equal length".into(),
            ));
        }
        self.diagonal = Some(DiagonalExts { e11, e22 });
        Ok(self)
    }

    pub fn e12(&self) -> &[Rat] {
        &self.e12
    }

    pub fn e21(&self) -> &[Rat] {
        &self.e21
    }

    pub fn pairing(&self) -> &RatMatrix {
        &self.pairing
    }

    pub fn diagonal(&self) -> Option<&DiagonalExts> {
        self.diagonal.as_ref()
    }

    /// `Ψ(e₁₂, e₂₁) = ⟨e₁₂, e₂₁⟩` through the pairing.
    pub fn psi(&self) -> Rat {
        dot(&self.e12, &self.pairing.mul_vec(&self.e21).expect("shape validated"))
    }
}

/// Output of the Yoneda square map on the mixed part.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaValue {
    /// Component of `e₂₁ ∪ e₁₂`.
    pub alpha: Rat,
    /// Component of `e₁₂ ∪ e₂₁`.
    pub beta: Rat,
    pub in_zero_locus: bool,
}

/// `β = ⟨e₁₂, e₂₁⟩`, and `α = −β` because trace-after-cup is
/// anticommutative; the pair lies in the zero locus iff `β = 0`.
pub fn yoneda_sigma(pair: &ExtPair) -> SigmaValue {
    let beta = pair.psi();
    SigmaValue { alpha: -&beta, in_zero_locus: beta.is_zero(), beta }
}

/// An element of `PO(2)/μ₂` acting on Ext pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Po2Element {
    /// The torus element `θ_λ`.
    Scale(Rat),
    /// The involution exchanging the two summands.
    Swap,
}

/// How `Ψ` is expected to transform under an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsiRelation {
    Preserved,
    Negated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Po2Outcome {
    pub pair: ExtPair,
    pub psi_before: Rat,
    pub psi_after: Rat,
    pub expected: PsiRelation,
    pub holds: bool,
}

/// Applies an element of `PO(2)/μ₂` and reports the equivariance of `Ψ`.
///
/// `θ_λ` sends `(e₁₂, e₂₁)` to `(λe₁₂, λ⁻¹e₂₁)` and fixes the diagonal part.
/// The swap exchanges the summands; since the pairing is trace-after-cup in
/// the other order, it becomes `−Pᵗ`, so `Ψ` changes sign.
pub fn po2_act(element: &Po2Element, pair: &ExtPair) -> Result<Po2Outcome, LocalModelError> {
    let psi_before = pair.psi();
    let (result, expected) = match element {
        Po2Element::Scale(lambda) => {
            let inv = lambda.recip().map_err(|_| LocalModelError::ZeroScale)?;
            let mut out = pair.clone();
            out.e12 = pair.e12.iter().map(|x| x * lambda).collect();
            out.e21 = pair.e21.iter().map(|x| x * &inv).collect();
            (out, PsiRelation::Preserved)
        }
        Po2Element::Swap => {
            let pairing = pair.pairing.transpose().map(|x| -x);
            let mut out = ExtPair::new(pair.e21.clone(), pair.e12.clone(), pairing)?;
            out.diagonal = pair
                .diagonal
                .as_ref()
                .map(|d| DiagonalExts { e11: d.e22.clone(), e22: d.e11.clone() });
            (out, PsiRelation::Negated)
        }
    };
    let psi_after = result.psi();
    let holds = match expected {
        PsiRelation::Preserved => psi_after == psi_before,
        PsiRelation::Negated => psi_after == -&psi_before,
    };
    Ok(Po2Outcome { pair: result, psi_before, psi_after, expected, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn omega_examples() {
        let e = SymplecticSpace::standard(2);
        assert_eq!(yoneda_omega(&HomWE::zero(4), &e).unwrap(), [Rat::zero(), Rat::zero(), Rat::zero()]);
        let phi = HomWE::from_images([v(&[1, 0, 0, 0]), v(&[0, 0, 1, 0]), v(&[0, 0, 0, 0])]).unwrap();
        assert_eq!(yoneda_omega(&phi, &e).unwrap(), [Rat::one(), Rat::zero(), Rat::zero()]);
        assert!(yoneda_omega(&HomWE::zero(6), &e).is_err());
    }

    #[test]
    fn sigma_examples() {
        let p = ExtPair::with_identity(v(&[0, 0]), v(&[3, 1])).unwrap();
        assert!(yoneda_sigma(&p).in_zero_locus);
        let p = ExtPair::with_identity(v(&[1, 0]), v(&[0, 1])).unwrap();
        let s = yoneda_sigma(&p);
        assert!(s.in_zero_locus && s.alpha.is_zero() && s.beta.is_zero());
        let p = ExtPair::with_identity(v(&[1, 0]), v(&[1, 0])).unwrap();
        let s = yoneda_sigma(&p);
        assert_eq!((s.alpha, s.beta), (Rat::from_int(-1), Rat::from_int(1)));
        assert!(!s.in_zero_locus);
    }

    #[test]
    fn singular_pairing_rejected() {
        assert!(matches!(
            ExtPair::new(v(&[1, 0]), v(&[0, 1]), RatMatrix::zeros(2, 2)),
            Err(LocalModelError::SingularPairing)
        ));
    }

    #[test]
    fn po2_examples() {
        let p = ExtPair::with_identity(v(&[1, 0]), v(&[0, 1])).unwrap();
        let out = po2_act(&Po2Element::Scale(Rat::one()), &p).unwrap();
        assert_eq!(out.pair, p);
        let out = po2_act(&Po2Element::Scale(Rat::from_int(2)), &p).unwrap();
        assert_eq!(out.pair.e12(), &v(&[2, 0])[..]);
        assert_eq!(out.pair.e21(), &[Rat::zero(), Rat::new(1, 2).unwrap()][..]);
        assert!(out.holds);
        let q = ExtPair::with_identity(v(&[1, 0]), v(&[1, 0])).unwrap();
        let out = po2_act(&Po2Element::Swap, &q).unwrap();
        assert_eq!((out.psi_before.clone(), out.psi_after.clone()), (Rat::one(), Rat::from_int(-1)));
        assert!(out.holds);
        assert!(matches!(po2_act(&Po2Element::Scale(Rat::zero()), &q), Err(LocalModelError::ZeroScale)));
    }

    #[test]
    fn swap_exchanges_diagonal_padding() {
        let p = ExtPair::with_identity(v(&[1]), v(&[2]))
            .unwrap()
            .with_diagonal(v(&[5]), v(&[7]))
            .unwrap();
        let out = po2_act(&Po2Element::Swap, &p).unwrap();
        assert_eq!(out.pair.diagonal().unwrap().e11, v(&[7]));
        assert!(ExtPair::with_identity(v(&[1]), v(&[2])).unwrap().with_diagonal(v(&[1]), v(&[])).is_err());
    }
}
