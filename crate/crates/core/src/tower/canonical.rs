//! Canonical classes of tower nodes, and the adjunction-style corrections
//! used when a canonical class of an ambient space is restricted to a
//! subvariety.

use super::{relative_tangent, DivClass, SpaceId, SpaceKind, Tower, TowerError};
use crate::kernel::ParamPoly;

/// Canonical class assembled along the construction:
///
/// * projective bundle: `π*K_B − (r·ξ + π*c₁F)` (minus the relative tangent),
/// * blow-up: `π*K + (codim − 1)·e`,
/// * fiber product: sum of the two relative canonical classes over the base,
/// * divisor: adjunction `(K + D)|_D`.
pub fn canonical_class(tower: &Tower, s: SpaceId) -> Result<DivClass, TowerError> {
    let space = tower.space(s);
    match &space.kind {
        SpaceKind::FormalBase { canonical } => match canonical {
            Some(k) => tower.class(s, k.clone()),
            None => Err(TowerError::MissingCanonical(space.name.clone())),
        },
        SpaceKind::ProjBundle { base, .. } => {
            let k_base = tower.lift(&canonical_class(tower, *base)?, s)?;
            k_base.sub(&relative_tangent(tower, s)?.c1)
        }
        SpaceKind::BlowUp { ambient, center } => {
            let k_amb = tower.lift(&canonical_class(tower, *ambient)?, s)?;
            let exc = tower.generator(s, space.generators().last().expect("blow-ups add a generator"))?;
            k_amb.add(&exc.scale(&(&center.codim - &ParamPoly::one()))?)
        }
        SpaceKind::FiberProduct { left, right, over } => {
            let kl = tower.lift(&canonical_class(tower, *left)?, s)?;
            let kr = tower.lift(&canonical_class(tower, *right)?, s)?;
            let ko = tower.lift(&canonical_class(tower, *over)?, s)?;
            kl.add(&kr)?.sub(&ko)
        }
        SpaceKind::DivisorIn { ambient, class } => {
            let k_amb = canonical_class(tower, *ambient)?;
            let sum = k_amb.add(class)?;
            Ok(DivClass { space: s, coords: sum.coords })
        }
    }
}

/// `K_Y|_X = K_X − Σ c₁(N)` for a chain of embeddings `X ⊂ … ⊂ Y`, given the
/// canonical class of `X` and the normal classes of each step restricted to
/// `X`.
pub fn ambient_canonical_restriction(k_sub: &DivClass, normals: &[DivClass]) -> Result<DivClass, TowerError> {
    let mut k = k_sub.clone();
    for nrm in normals {
        k = k.sub(nrm)?;
    }
    Ok(k)
}

/// Canonical class of a blown-up ambient restricted to the strict transform.
///
/// When the ambient center has codimension `c` and meets the subvariety in
/// the center of the strict-transform blow-up `strict`, the ambient
/// exceptional divisor restricts to the exceptional generator of `strict`,
/// so the restriction is `π*(K|) + (c − 1)·e`.
pub fn blowup_restricted_canonical(
    tower: &Tower,
    strict: SpaceId,
    restricted: &DivClass,
    ambient_codim: &ParamPoly,
) -> Result<DivClass, TowerError> {
    let space = tower.space(strict);
    let SpaceKind::BlowUp { .. } = space.kind else {
        return Err(TowerError::NotBlowUp(space.name.clone()));
    };
    let exc = tower.generator(strict, space.generators().last().expect("blow-ups add a generator"))?;
    tower.lift(restricted, strict)?.add(&exc.scale(&(ambient_codim - &ParamPoly::one()))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::FormalBundle;

    #[test]
    fn projective_space_canonical() {
        let mut t = Tower::new();
        let pt = t.add_formal_base("pt", &[], Some(vec![]), ParamPoly::zero()).unwrap();
        let p = t.add_proj_bundle("P", FormalBundle::trivial(&t, pt, ParamPoly::lin(0, 2)), "xi").unwrap();
        let k = canonical_class(&t, p).unwrap();
        assert_eq!(k.coords, vec![ParamPoly::lin(0, -2)]);
        assert_eq!(k.coords[0].eval_int(3), crate::kernel::Rat::from_int(-6));
    }

    #[test]
    fn missing_base_canonical() {
        let mut t = Tower::new();
        let g = t.add_formal_base("G", &["a"], None, ParamPoly::int(3)).unwrap();
        let p = t.add_proj_bundle("P", FormalBundle::trivial(&t, g, ParamPoly::int(2)), "h").unwrap();
        assert!(matches!(canonical_class(&t, p), Err(TowerError::MissingCanonical(_))));
    }

    #[test]
    fn blow_up_of_a_point_in_the_plane() {
        let mut t = Tower::new();
        let pt = t.add_formal_base("pt", &[], Some(vec![]), ParamPoly::zero()).unwrap();
        let p2 = t.add_proj_bundle("P2", FormalBundle::trivial(&t, pt, ParamPoly::int(3)), "h").unwrap();
        let bl = t.add_blow_up("Bl", p2, crate::tower::CenterSpec::new(ParamPoly::int(2)), "e").unwrap();
        assert_eq!(canonical_class(&t, bl).unwrap().coords, vec![ParamPoly::int(-3), ParamPoly::int(1)]);
    }
}
