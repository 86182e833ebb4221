//! Bilinear-form spaces: the symplectic tangent space `E` and the
//! three-dimensional quadratic space `W` carrying the Killing form.

use serde::{Deserialize, Serialize};

use super::LocalModelError;
use crate::kernel::{dot, rank, Matrix, Rat, RatMatrix};

fn check_vec(v: &[Rat], dim: usize, what: &str) -> Result<(), LocalModelError> {
    if v.len() != dim {
        return Err(LocalModelError::Dimension(format!(
            "{what} has length {} but the space has dimension {dim}",
            v.len()
        )));
    }
    Ok(())
}

fn bilinear(gram: &RatMatrix, u: &[Rat], v: &[Rat]) -> Rat {
    let gv = gram.mul_vec(v).expect("dimension checked by caller");
    dot(u, &gv)
}

/// A finite-dimensional symplectic vector space over `ℚ`, given by the Gram
/// matrix of its form `ω`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymplecticSpace {
    gram: RatMatrix,
}

impl SymplecticSpace {
    /// Validates that `gram` is square, antisymmetric and nonsingular.
    pub fn new(gram: RatMatrix) -> Result<Self, LocalModelError> {
        if !gram.is_square() || !gram.rows().is_multiple_of(2) {
            return Err(LocalModelError::Invalid(
                "a symplectic Gram matrix must be square of even size".into(),
            ));
        }
        let size = gram.rows();
        for i in 0..size {
            for j in 0..size {
                if gram.get(i, j) != &-gram.get(j, i) {
                    return Err(LocalModelError::Invalid("Gram matrix is not antisymmetric".into()));
                }
            }
        }
        if rank(&gram) != size {
            return Err(LocalModelError::Invalid("symplectic form is degenerate".into()));
        }
        Ok(SymplecticSpace { gram })
    }

    /// The standard form on `ℚ^{2m}` in coordinates `(x_1..x_m, y_1..y_m)`
    /// with `ω(x_i, y_i) = 1`.
    pub fn standard(m: usize) -> Self {
        let mut gram = RatMatrix::zeros(2 * m, 2 * m);
        for i in 0..m {
            gram.set(i, m + i, Rat::one());
            gram.set(m + i, i, -Rat::one());
        }
        SymplecticSpace { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn omega(&self, u: &[Rat], v: &[Rat]) -> Result<Rat, LocalModelError> {
        check_vec(u, self.dim(), "vector")?;
        check_vec(v, self.dim(), "vector")?;
        Ok(bilinear(&self.gram, u, v))
    }
}

/// True iff `ω` vanishes on every pair of the given generators.
pub fn is_isotropic(generators: &[Vec<Rat>], space: &SymplecticSpace) -> Result<bool, LocalModelError> {
    for g in generators {
        check_vec(g, space.dim(), "generator")?;
    }
    for (i, u) in generators.iter().enumerate() {
        for v in &generators[i + 1..] {
            if !space.omega(u, v)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The three-dimensional space `W` (the Lie algebra of `PGL(2)`) with a
/// nondegenerate symmetric form `κ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadSpaceW {
    gram: RatMatrix,
}

impl Default for QuadSpaceW {
    /// The hyperbolic Gram `[[0,0,1],[0,1,0],[1,0,0]]`, which has isotropic
    /// vectors over `ℚ`.
    fn default() -> Self {
        let one = Rat::one;
        let zero = Rat::zero;
        QuadSpaceW {
            gram: Matrix::from_rows(vec![
                vec![zero(), zero(), one()],
                vec![zero(), one(), zero()],
                vec![one(), zero(), zero()],
            ])
            .expect("constant shape"),
        }
    }
}

impl QuadSpaceW {
    pub fn new(gram: RatMatrix) -> Result<Self, LocalModelError> {
        if gram.rows() != 3 || gram.cols() != 3 {
            return Err(LocalModelError::Invalid("W is three-dimensional".into()));
        }
        if gram != gram.transpose() {
            return Err(LocalModelError::Invalid("Killing-form Gram is not symmetric".into()));
        }
        if rank(&gram) != 3 {
            return Err(LocalModelError::Invalid("Killing form is degenerate".into()));
        }
        Ok(QuadSpaceW { gram })
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn kappa(&self, u: &[Rat], v: &[Rat]) -> Result<Rat, LocalModelError> {
        check_vec(u, 3, "vector of W")?;
        check_vec(v, 3, "vector of W")?;
        Ok(bilinear(&self.gram, u, v))
    }

    /// True iff `g` preserves `κ`, i.e. `gᵗ·G·g = G`.
    pub fn is_orthogonal(&self, g: &RatMatrix) -> bool {
        g.rows() == 3
            && g.cols() == 3
            && g.transpose().mul(&self.gram).and_then(|m| m.mul(g)).is_ok_and(|m| m == self.gram)
    }
}

/// A homomorphism `φ: W → E`, stored with the images of the three basis
/// vectors of `W` as columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomWE {
    matrix: RatMatrix,
}

impl HomWE {
    pub fn new(matrix: RatMatrix) -> Result<Self, LocalModelError> {
        if matrix.cols() != 3 {
            return Err(LocalModelError::Dimension(format!(
                "Hom(W, E) needs three columns, got {}",
                matrix.cols()
            )));
        }
        Ok(HomWE { matrix })
    }

    pub fn from_images(images: [Vec<Rat>; 3]) -> Result<Self, LocalModelError> {
        let dim = images[0].len();
        HomWE::new(
            Matrix::from_cols_with_height(dim, images.to_vec())
                .map_err(|e| LocalModelError::Dimension(e.to_string()))?,
        )
    }

    pub fn zero(dim_e: usize) -> Self {
        HomWE { matrix: RatMatrix::zeros(dim_e, 3) }
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn images(&self) -> Vec<Vec<Rat>> {
        (0..3).map(|c| self.matrix.col(c)).collect()
    }

    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    /// Precomposition `φ ∘ g` with an endomorphism of `W`.
    pub fn precompose(&self, g: &RatMatrix) -> Result<Self, LocalModelError> {
        let m = self.matrix.mul(g).map_err(|e| LocalModelError::Dimension(e.to_string()))?;
        HomWE::new(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        v[i] = Rat::one();
        v
    }

    #[test]
    fn isotropy_examples() {
        let space = SymplecticSpace::standard(2);
        // coordinates (x1, x2, y1, y2)
        let (x1, x2, y1) = (e(4, 0), e(4, 1), e(4, 2));
        assert!(is_isotropic(&[], &space).unwrap());
        assert!(is_isotropic(&[x1.clone(), x2], &space).unwrap());
        assert!(!is_isotropic(&[x1, y1], &space).unwrap());
        assert!(is_isotropic(&[e(3, 0)], &space).is_err());
    }

    #[test]
    fn rejects_bad_grams() {
        assert!(SymplecticSpace::new(RatMatrix::identity(2)).is_err());
        assert!(SymplecticSpace::new(RatMatrix::zeros(2, 2)).is_err());
        assert!(QuadSpaceW::new(RatMatrix::zeros(3, 3)).is_err());
        assert!(QuadSpaceW::new(RatMatrix::identity(3)).is_ok());
    }

    #[test]
    fn hyperbolic_default_has_isotropic_vectors() {
        let w = QuadSpaceW::default();
        assert!(w.kappa(&e(3, 2), &e(3, 2)).unwrap().is_zero());
        assert!(w.kappa(&e(3, 1), &e(3, 1)).unwrap().is_one());
        assert!(w.is_orthogonal(&RatMatrix::identity(3)));
    }
}
