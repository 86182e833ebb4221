//! Bundles known only through `(rank, c₁)`, with the algebra of the
//! standard operations on those invariants.

use super::{DivClass, SpaceId, SpaceKind, Tower, TowerError};
use crate::kernel::{sample_points, ParamPoly, Rat};

/// A vector bundle on a space, recorded by rank and first Chern class.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalBundle {
    pub space: SpaceId,
    pub rank: ParamPoly,
    pub c1: DivClass,
}

fn same_space(a: &FormalBundle, b: &FormalBundle) -> Result<(), TowerError> {
    if a.space != b.space {
        return Err(TowerError::SpaceMismatch(format!(
            "bundles live on spaces #{} and #{}",
            a.space.0, b.space.0
        )));
    }
    Ok(())
}

/// `binomial(r + k − 1, j)` as a polynomial in `n` for a polynomial `r`,
/// namely `Π_{i<j} (r + k − 1 − i) / j!`.
fn poly_binomial(top: &ParamPoly, j: u32) -> Result<ParamPoly, TowerError> {
    let mut acc = ParamPoly::one();
    let mut fact = Rat::one();
    for i in 0..j {
        acc = acc.checked_mul(&(top - &ParamPoly::int(i as i64)))?;
        fact = &fact * &Rat::from_int(i as i64 + 1);
    }
    Ok(acc.scale(&fact.recip()?))
}

impl FormalBundle {
    pub fn new(tower: &Tower, rank: ParamPoly, c1: DivClass) -> Result<Self, TowerError> {
        tower.check_class(&c1, c1.space)?;
        Ok(FormalBundle { space: c1.space, rank, c1 })
    }

    pub fn trivial(tower: &Tower, space: SpaceId, rank: ParamPoly) -> Self {
        FormalBundle { space, rank, c1: tower.zero_class(space) }
    }

    /// A line bundle with the given first Chern class.
    pub fn line(c1: DivClass) -> Self {
        FormalBundle { space: c1.space, rank: ParamPoly::one(), c1 }
    }

    pub fn is_line(&self) -> bool {
        self.rank == ParamPoly::one()
    }

    pub fn dual(&self) -> Self {
        FormalBundle { space: self.space, rank: self.rank.clone(), c1: self.c1.neg() }
    }

    /// `E ⊗ ℓ` for a line bundle `ℓ`: `c₁ ↦ c₁ + r·c₁(ℓ)`.
    pub fn tensor_line(&self, line: &FormalBundle) -> Result<Self, TowerError> {
        same_space(self, line)?;
        if !line.is_line() {
            return Err(TowerError::InvalidRank(format!("tensor_line needs a line bundle, got rank {}", line.rank)));
        }
        let c1 = self.c1.add(&line.c1.scale(&self.rank)?)?;
        Ok(FormalBundle { space: self.space, rank: self.rank.clone(), c1 })
    }

    /// `E ⊗ F`: rank `r_E r_F`, `c₁ = r_F c₁(E) + r_E c₁(F)`.
    pub fn tensor(&self, other: &FormalBundle) -> Result<Self, TowerError> {
        same_space(self, other)?;
        let c1 = self.c1.scale(&other.rank)?.add(&other.c1.scale(&self.rank)?)?;
        Ok(FormalBundle { space: self.space, rank: self.rank.checked_mul(&other.rank)?, c1 })
    }

    /// The middle term of `0 → sub → E → quot → 0`: ranks and `c₁` add.
    pub fn extension(sub: &FormalBundle, quot: &FormalBundle) -> Result<Self, TowerError> {
        same_space(sub, quot)?;
        Ok(FormalBundle { space: sub.space, rank: &sub.rank + &quot.rank, c1: sub.c1.add(&quot.c1)? })
    }

    pub fn dsum(a: &FormalBundle, b: &FormalBundle) -> Result<Self, TowerError> {
        FormalBundle::extension(a, b)
    }

    /// `total / sub`: ranks and `c₁` subtract.
    pub fn quotient(total: &FormalBundle, sub: &FormalBundle) -> Result<Self, TowerError> {
        same_space(total, sub)?;
        let rank = &total.rank - &sub.rank;
        for k in sample_points() {
            if rank.eval_int(k).is_negative() {
                return Err(TowerError::RankUnderflow(format!(
                    "sub-bundle of rank {} exceeds total rank {} at n = {k}",
                    sub.rank, total.rank
                )));
            }
        }
        Ok(FormalBundle { space: total.space, rank, c1: total.c1.sub(&sub.c1)? })
    }

    /// Kernel of a surjection `total → target`; same arithmetic as a quotient.
    pub fn kernel(total: &FormalBundle, target: &FormalBundle) -> Result<Self, TowerError> {
        FormalBundle::quotient(total, target)
    }

    /// `S²E`: rank `r(r+1)/2`, `c₁ = (r+1)·c₁(E)`.
    pub fn sym2(&self) -> Result<Self, TowerError> {
        self.sym_power(2)
    }

    /// `SᵏE`: rank `C(r+k−1, k)`, `c₁ = C(r+k−1, r)·c₁(E)`.
    pub fn sym_power(&self, k: u32) -> Result<Self, TowerError> {
        let top = &self.rank + &ParamPoly::int(k as i64 - 1);
        let rank = poly_binomial(&top, k)?;
        let factor = if k == 0 { ParamPoly::zero() } else { poly_binomial(&top, k - 1)? };
        Ok(FormalBundle { space: self.space, rank, c1: self.c1.scale(&factor)? })
    }

    /// `∧^top E`: a line bundle with the same `c₁`.
    pub fn wedge_top(&self) -> Self {
        FormalBundle { space: self.space, rank: ParamPoly::one(), c1: self.c1.clone() }
    }

    /// Pullback along structure morphisms to a descendant space.
    pub fn lift(&self, tower: &Tower, to: SpaceId) -> Result<Self, TowerError> {
        Ok(FormalBundle { space: to, rank: self.rank.clone(), c1: tower.lift(&self.c1, to)? })
    }
}

fn proj_data(tower: &Tower, pb: SpaceId) -> Result<(FormalBundle, DivClass), TowerError> {
    let space = tower.space(pb);
    let SpaceKind::ProjBundle { bundle, .. } = &space.kind else {
        return Err(TowerError::NotProjBundle(space.name.clone()));
    };
    let taut = space.generators().last().expect("projective bundles add a generator");
    Ok((bundle.clone(), tower.generator(pb, taut)?))
}

/// The tautological sub line `O(−1) ⊂ π*F` on `ℙ(F)`, of class `−ξ`.
pub fn tautological_sub(tower: &Tower, pb: SpaceId) -> Result<FormalBundle, TowerError> {
    let (_, xi) = proj_data(tower, pb)?;
    Ok(FormalBundle::line(xi.neg()))
}

/// Relative tangent bundle of `ℙ(F) → B` from the Euler sequence
/// `0 → O → π*F ⊗ O(1) → T → 0`: rank `r − 1`, `c₁ = r·ξ + π*c₁(F)`.
pub fn relative_tangent(tower: &Tower, pb: SpaceId) -> Result<FormalBundle, TowerError> {
    let (bundle, xi) = proj_data(tower, pb)?;
    for k in sample_points() {
        if bundle.rank.eval_int(k) < Rat::one() {
            return Err(TowerError::InvalidRank(format!("bundle rank {} is below 1", bundle.rank)));
        }
    }
    let pulled = bundle.lift(tower, pb)?;
    let twisted = pulled.tensor_line(&FormalBundle::line(xi))?;
    FormalBundle::quotient(&twisted, &FormalBundle::trivial(tower, pb, ParamPoly::one()))
}
