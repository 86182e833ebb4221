//! Mori-cone propagation along a chain of pairs of morphisms.
//!
//! Given curves `Γ₁, …, Γ_m` forming a basis of `N₁(Y)` and morphisms
//! `c′: Y → Y′`, `c″: Y → Y″` such that `c′` contracts `Γ₁` and none of the
//! others while `c″` contracts `Γ₂, …, Γ_m` but not `Γ₁`: if the images
//! `c′_*Γ₂, …, c′_*Γ_m` form a basis of `N₁(Y′)` and generate its Mori cone,
//! then the Mori cone of `Y` is `ℝ⁺Γ₁ + … + ℝ⁺Γ_m`.

use super::{pushforward, Cone, CurveClass, CurveError};
use crate::kernel::{rank, Rat, RatMatrix};
use crate::tower::{PullbackMap, SpaceId, Tower};

/// One application of the propagation rule.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub name: String,
    pub space: SpaceId,
    /// `Γ₁` first.
    pub curves: Vec<CurveClass>,
    /// Picard pullback of `c′: Y → Y′` (source `Y′`, target `Y`).
    pub contraction_one: PullbackMap,
    /// Picard pullback of `c″: Y → Y″`.
    pub contraction_rest: PullbackMap,
}

/// A starting cone and the steps built on top of it, in order.
#[derive(Clone, Debug)]
pub struct ChainSpec {
    pub base_space: SpaceId,
    pub base_cone: Cone,
    pub steps: Vec<ChainStep>,
}

/// The verified hypotheses of one step.
#[derive(Clone, Debug, PartialEq)]
pub struct StepReport {
    pub step: String,
    pub conditions: Vec<(String, bool)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainOutcome {
    pub cone: Cone,
    pub steps: Vec<StepReport>,
}

impl ChainOutcome {
    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| s.conditions.iter().all(|(_, ok)| *ok))
    }
}

fn is_zero(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

fn full_rank(vectors: &[Vec<Rat>], dim: usize) -> bool {
    vectors.len() == dim && (dim == 0 || rank(&RatMatrix::from_rows(vectors.to_vec()).expect("rectangular")) == dim)
}

/// Checks every step's hypotheses at the given `n` and returns the cone of
/// the last space. The first violated hypothesis is reported as an error.
pub fn mori_propagate(tower: &Tower, chain: &ChainSpec, n: &Rat) -> Result<ChainOutcome, CurveError> {
    let base_rank = tower.space(chain.base_space).picard_rank();
    if chain.base_cone.dim != base_rank || !full_rank(&chain.base_cone.generators, base_rank) {
        return Err(CurveError::Hypothesis {
            step: tower.name(chain.base_space).to_string(),
            condition: "the base cone generators form a basis of N1".into(),
        });
    }
    let mut prev_space = chain.base_space;
    let mut prev_cone = chain.base_cone.clone();
    let mut reports = Vec::new();
    for step in &chain.steps {
        let fail = |condition: &str| CurveError::Hypothesis { step: step.name.clone(), condition: condition.to_string() };
        let rank_y = tower.space(step.space).picard_rank();
        if step.curves.iter().any(|c| c.space != step.space) {
            return Err(fail("all curves live on the step's space"));
        }
        if step.contraction_one.target != step.space || step.contraction_rest.target != step.space {
            return Err(fail("both morphisms start at the step's space"));
        }
        if step.contraction_one.source != prev_space {
            return Err(fail("the first morphism lands on the previous space of the chain"));
        }
        let (first, rest) = step.curves.split_first().ok_or_else(|| fail("at least one curve"))?;
        let vectors: Vec<Vec<Rat>> = step.curves.iter().map(|c| c.eval(n)).collect();
        let one: Vec<Vec<Rat>> = step
            .curves
            .iter()
            .map(|c| Ok(pushforward(c, &step.contraction_one, &c.label)?.eval(n)))
            .collect::<Result<_, CurveError>>()?;
        let other: Vec<Vec<Rat>> = step
            .curves
            .iter()
            .map(|c| Ok(pushforward(c, &step.contraction_rest, &c.label)?.eval(n)))
            .collect::<Result<_, CurveError>>()?;
        let images = Cone {
            dim: prev_cone.dim,
            labels: rest.iter().map(|c| c.label.clone()).collect(),
            generators: one[1..].to_vec(),
        };
        let conditions = vec![
            ("(1) the curves form a basis of N1".to_string(), full_rank(&vectors, rank_y)),
            (format!("(3) c' contracts {}", first.label), is_zero(&one[0])),
            ("(3) c' contracts none of the other curves".to_string(), one[1..].iter().all(|v| !is_zero(v))),
            ("(4) c'' contracts all other curves".to_string(), other[1..].iter().all(|v| is_zero(v))),
            (format!("(4) c'' does not contract {}", first.label), !is_zero(&other[0])),
            ("the images under c' form a basis of N1 of the target".to_string(), full_rank(&one[1..], prev_cone.dim)),
            (
                "the images under c' generate the known Mori cone of the target".to_string(),
                images.generators.iter().all(|g| !is_zero(g)) && images.same_rays(&prev_cone),
            ),
        ];
        if let Some((c, _)) = conditions.iter().find(|(_, ok)| !ok) {
            return Err(fail(c));
        }
        reports.push(StepReport { step: step.name.clone(), conditions });
        prev_cone = Cone::from_curves(&step.curves, n)?;
        prev_space = step.space;
    }
    Ok(ChainOutcome { cone: prev_cone, steps: reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{build_curve, AtomicCurveSpec};
    use crate::kernel::ParamPoly;
    use crate::tower::FormalBundle;

    /// `ℙ¹ × ℙ¹` from `ℙ¹`: both projections, the two rulings.
    #[test]
    fn product_of_lines() {
        let mut t = Tower::new();
        let pt = t.add_formal_base("pt", &[], Some(vec![]), ParamPoly::zero()).unwrap();
        let two = FormalBundle::trivial(&t, pt, ParamPoly::int(2));
        let a = t.add_proj_bundle("A", two.clone(), "u").unwrap();
        let b = t.add_proj_bundle("B", two, "v").unwrap();
        let ab = t.add_fiber_product("AB", a, b, pt).unwrap();
        let fa = build_curve(&t, ab, "fa", AtomicCurveSpec::LineInProjFiber { generator: "v".into() }).unwrap();
        let fb = build_curve(&t, ab, "fb", AtomicCurveSpec::LineInProjFiber { generator: "u".into() }).unwrap();
        let to_a = PullbackMap::structure(&t, "pa", a, ab).unwrap();
        let to_b = PullbackMap::structure(&t, "pb", b, ab).unwrap();
        let line = Cone::new(1, vec!["l".into()], vec![vec![Rat::one()]]).unwrap();
        let chain = ChainSpec {
            base_space: a,
            base_cone: line,
            steps: vec![ChainStep {
                name: "AB".into(),
                space: ab,
                curves: vec![fa.clone(), fb.clone()],
                contraction_one: to_a.clone(),
                contraction_rest: to_b.clone(),
            }],
        };
        let out = mori_propagate(&t, &chain, &Rat::from_int(3)).unwrap();
        assert!(out.all_hold());
        assert_eq!(out.cone.labels, vec!["fa", "fb"]);

        // Swapping the roles of the curves breaks hypothesis (3).
        let mut bad = chain.clone();
        bad.steps[0].curves = vec![fb, fa];
        assert!(matches!(mori_propagate(&t, &bad, &Rat::from_int(3)), Err(CurveError::Hypothesis { .. })));

    }
}
