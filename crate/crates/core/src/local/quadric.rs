//! Quadratic forms: the normal-cone quadric of the mixed stratum and the
//! expected-codimension check for small quadric systems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{LocalModelError, SymplecticSpace};
use crate::kernel::{dot, rank, Rat, RatMatrix};

/// A polynomial of degree at most two, `vᵗGv + ℓ·v + c` with `G` symmetric.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quadric {
    pub gram: RatMatrix,
    pub linear: Vec<Rat>,
    pub constant: Rat,
}

impl Quadric {
    /// A homogeneous quadric from its symmetric Gram matrix.
    pub fn homogeneous(gram: RatMatrix) -> Result<Self, LocalModelError> {
        if !gram.is_square() || gram != gram.transpose() {
            return Err(LocalModelError::Invalid("quadric Gram must be square and symmetric".into()));
        }
        let n = gram.rows();
        Ok(Quadric { gram, linear: vec![Rat::zero(); n], constant: Rat::zero() })
    }

    pub fn nvars(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.constant.is_zero() && self.linear.iter().all(Rat::is_zero)
    }

    pub fn eval(&self, v: &[Rat]) -> Rat {
        let gv = self.gram.mul_vec(v).expect("caller checks length");
        dot(v, &gv) + dot(&self.linear, v) + self.constant.clone()
    }

    /// Gradient `2Gv + ℓ`.
    pub fn gradient(&self, v: &[Rat]) -> Vec<Rat> {
        let two = Rat::from_int(2);
        let gv = self.gram.mul_vec(v).expect("caller checks length");
        gv.iter().zip(&self.linear).map(|(g, l)| &(g * &two) + l).collect()
    }
}

/// Rank of a symmetric matrix computed by congruence diagonalization
/// (`G ↦ PᵗGP`), returning the diagonal it reaches.
pub fn symmetric_diagonalization(gram: &RatMatrix) -> Vec<Rat> {
    let mut g = gram.clone();
    let size = g.rows();
    let mut diag = Vec::with_capacity(size);
    for k in 0..size {
        if g.get(k, k).is_zero() {
            // bring a nonzero diagonal entry into position k
            if let Some(j) = (k + 1..size).find(|&j| !g.get(j, j).is_zero()) {
                swap_sym(&mut g, k, j);
            } else if let Some(j) = (k + 1..size).find(|&j| !g.get(k, j).is_zero()) {
                // e_k ↦ e_k + e_j turns g_kk into 2 g_kj ≠ 0
                add_sym(&mut g, k, j);
            }
        }
        let pivot = g.get(k, k).clone();
        diag.push(pivot.clone());
        if pivot.is_zero() {
            continue;
        }
        for i in k + 1..size {
            let factor = g.get(i, k) / &pivot;
            if factor.is_zero() {
                continue;
            }
            // row_i -= factor row_k, then col_i -= factor col_k
            for c in 0..size {
                let v = g.get(i, c) - &(&factor * g.get(k, c));
                g.set(i, c, v);
            }
            for r in 0..size {
                let v = g.get(r, i) - &(&factor * g.get(r, k));
                g.set(r, i, v);
            }
        }
    }
    diag
}

fn swap_sym(g: &mut RatMatrix, a: usize, b: usize) {
    let size = g.rows();
    for c in 0..size {
        let t = g.get(a, c).clone();
        g.set(a, c, g.get(b, c).clone());
        g.set(b, c, t);
    }
    for r in 0..size {
        let t = g.get(r, a).clone();
        g.set(r, a, g.get(r, b).clone());
        g.set(r, b, t);
    }
}

fn add_sym(g: &mut RatMatrix, target: usize, source: usize) {
    let size = g.rows();
    for c in 0..size {
        let v = g.get(target, c) + g.get(source, c);
        g.set(target, c, v);
    }
    for r in 0..size {
        let v = g.get(r, target) + g.get(r, source);
        g.set(r, target, v);
    }
}

pub fn symmetric_rank(gram: &RatMatrix) -> usize {
    symmetric_diagonalization(gram).iter().filter(|d| !d.is_zero()).count()
}

/// The single quadric `⟨e₁₂, e₂₁⟩` on `ℚ^{2k}` for a `k×k` pairing `P`,
/// with Gram `[[0, P/2], [Pᵗ/2, 0]]`.
pub fn pairing_quadric(pairing: &RatMatrix) -> Result<Quadric, LocalModelError> {
    if !pairing.is_square() {
        return Err(LocalModelError::Dimension("pairing must be square".into()));
    }
    let k = pairing.rows();
    let half = Rat::new(1, 2).expect("nonzero denominator");
    let mut gram = RatMatrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            let v = pairing.get(i, j) * &half;
            gram.set(i, k + j, v.clone());
            gram.set(k + j, i, v);
        }
    }
    Quadric::homogeneous(gram)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadricReport {
    pub n: i64,
    pub variables: usize,
    pub rank: usize,
    /// Full rank: the projectivized quadric is smooth.
    pub smooth: bool,
    pub quadric: Quadric,
}

/// The normal-cone quadric `q(e₁₂, e₂₁) = ⟨e₁₂, e₂₁⟩` on `ℚ^{4n−4}` with its
/// rank. `pairing` defaults to the identity on `ℚ^{2n−2}`; a rank-deficient
/// pairing is rejected as a degenerate model.
pub fn normal_cone_quadric(n: i64, pairing: Option<&RatMatrix>) -> Result<QuadricReport, LocalModelError> {
    if n < 3 {
        return Err(LocalModelError::NTooSmall(n));
    }
    let k = (2 * n - 2) as usize;
    let default = RatMatrix::identity(k);
    let pairing = pairing.unwrap_or(&default);
    if pairing.rows() != k || pairing.cols() != k {
        return Err(LocalModelError::Dimension(format!("pairing must be {k}x{k} for n = {n}")));
    }
    if rank(pairing) != k {
        return Err(LocalModelError::DegenerateModel);
    }
    let quadric = pairing_quadric(pairing)?;
    let r = symmetric_rank(&quadric.gram);
    Ok(QuadricReport { n, variables: 2 * k, rank: r, smooth: r == 2 * k, quadric })
}

/// The three quadrics `φ ↦ ω(φw_i, φw_j)`, `i < j`, on `Hom(W, E) = ℚ^{3·dim E}`
/// with variables ordered column by column.
pub fn pullback_omega_quadrics(e: &SymplecticSpace) -> Vec<Quadric> {
    let d = e.dim();
    let half = Rat::new(1, 2).expect("nonzero denominator");
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| {
            let mut gram = RatMatrix::zeros(3 * d, 3 * d);
            for a in 0..d {
                for b in 0..d {
                    let v = e.gram().get(a, b) * &half;
                    if v.is_zero() {
                        continue;
                    }
                    let (p, q) = (i * d + a, j * d + b);
                    gram.set(p, q, gram.get(p, q) + &v);
                    gram.set(q, p, gram.get(q, p) + &v);
                }
            }
            Quadric::homogeneous(gram).expect("constructed symmetric")
        })
        .collect()
}

/// Expected-codimension certificate: true iff the Jacobian of the system
/// reaches full rank `k` at one of `samples` seeded random rational points.
pub fn regular_sequence_check(
    quadrics: &[Quadric],
    samples: usize,
    seed: u64,
) -> Result<bool, LocalModelError> {
    let Some(first) = quadrics.first() else {
        return Ok(true);
    };
    let nvars = first.nvars();
    for (i, q) in quadrics.iter().enumerate() {
        if q.nvars() != nvars {
            return Err(LocalModelError::Dimension("quadrics live on different spaces".into()));
        }
        if !q.is_homogeneous() {
            return Err(LocalModelError::NonHomogeneous(i));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let point: Vec<Rat> = (0..nvars).map(|_| Rat::from_int(rng.gen_range(-5..=5))).collect();
        let jac = RatMatrix::from_rows(quadrics.iter().map(|q| q.gradient(&point)).collect())
            .expect("all gradients share a length");
        if rank(&jac) == quadrics.len() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Matrix;

    #[test]
    fn quadric_ranks() {
        for (n, expected) in [(3, 8), (4, 12), (5, 16)] {
            let rep = normal_cone_quadric(n, None).unwrap();
            assert_eq!(rep.rank, expected);
            assert_eq!(rep.variables, expected);
            assert!(rep.smooth);
            assert_eq!(rank(&rep.quadric.gram), expected);
        }
        assert!(matches!(normal_cone_quadric(2, None), Err(LocalModelError::NTooSmall(2))));
    }

    #[test]
    fn degenerate_pairing() {
        let mut p = RatMatrix::zeros(4, 4);
        p.set(0, 0, Rat::one());
        assert!(matches!(normal_cone_quadric(3, Some(&p)), Err(LocalModelError::DegenerateModel)));
    }

    #[test]
    fn diagonalization_handles_zero_diagonal() {
        let g = Matrix::from_rows(vec![
            vec![Rat::zero(), Rat::one()],
            vec![Rat::one(), Rat::zero()],
        ])
        .unwrap();
        assert_eq!(symmetric_rank(&g), 2);
        assert_eq!(symmetric_rank(&RatMatrix::zeros(3, 3)), 0);
    }

    #[test]
    fn regular_sequences() {
        let q = pairing_quadric(&RatMatrix::identity(4)).unwrap();
        assert!(regular_sequence_check(std::slice::from_ref(&q), 5, 7).unwrap());
        assert!(!regular_sequence_check(&[q.clone(), q.clone()], 5, 7).unwrap());
        let fam = pullback_omega_quadrics(&SymplecticSpace::standard(3));
        assert_eq!(fam.len(), 3);
        assert!(regular_sequence_check(&fam, 5, 7).unwrap());
        let mut bad = q;
        bad.constant = Rat::one();
        assert!(matches!(regular_sequence_check(&[bad], 1, 0), Err(LocalModelError::NonHomogeneous(0))));
    }

    #[test]
    fn omega_quadrics_evaluate_pullback() {
        let e = SymplecticSpace::standard(1);
        let fam = pullback_omega_quadrics(&e);
        // φ(w1) = x, φ(w2) = y, φ(w3) = 0  → (1, 0, 0)
        let point: Vec<Rat> = [1, 0, 0, 1, 0, 0].iter().map(|&x| Rat::from_int(x)).collect();
        let vals: Vec<Rat> = fam.iter().map(|q| q.eval(&point)).collect();
        assert_eq!(vals, vec![Rat::one(), Rat::zero(), Rat::zero()]);
    }
}
