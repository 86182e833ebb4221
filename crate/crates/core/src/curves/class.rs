//! Curve classes built from atomic specifications, and their pairings with
//! divisor classes.

use super::CurveError;
use crate::kernel::{inverse_poly, sample_points, solve_linear_poly, KernelError, ParamPoly, PolyMatrix, Rat};
use crate::tower::{DivClass, PullbackMap, SpaceId, SpaceKind, Tower};

/// How a curve class was obtained.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveOrigin {
    LineInProjFiber { generator: String },
    ExceptionalFiberLine,
    LineInExceptionalFiber { direction: String },
    StrictTransform { ambient: String, mult_at_center: u32 },
    DeclaredSection { note: String },
    Pushforward { curve: String, map: String },
    Combination,
}

/// A 1-cycle recorded by its intersection numbers with the Picard
/// generators of its space.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveClass {
    pub space: SpaceId,
    pub label: String,
    pub vector: Vec<ParamPoly>,
    pub origin: CurveOrigin,
}

/// The atomic constructions of curve classes.
#[derive(Clone, Debug, PartialEq)]
pub enum AtomicCurveSpec {
    /// A line in a fiber of the projective bundle whose tautological
    /// generator is named: degree 1 against it, 0 against everything else.
    LineInProjFiber { generator: String },
    /// A line in a projective fiber of a smooth blow-up's exceptional
    /// divisor: degree −1 against the exceptional class.
    ExceptionalFiberLine,
    /// A curve inside a fiber of the exceptional divisor over the center,
    /// given as a curve on the space modelling the exceptional divisor; its
    /// degree against the exceptional class is read off the declared
    /// restriction class of the center.
    LineInExceptionalFiber { direction: CurveClass },
    /// Strict transform of a curve on the ambient space meeting the center
    /// in `mult_at_center` points (counted with multiplicity).
    StrictTransform { ambient: CurveClass, mult_at_center: u32 },
    /// An explicitly computed vector together with its derivation.
    DeclaredSection { vector: Vec<ParamPoly>, note: String },
}

impl CurveClass {
    fn check_same(&self, other: &CurveClass) -> Result<(), CurveError> {
        if self.space != other.space || self.vector.len() != other.vector.len() {
            return Err(CurveError::SpaceMismatch(format!(
                "curves {} and {} live on different spaces",
                self.label, other.label
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &CurveClass) -> Result<CurveClass, CurveError> {
        self.check_same(other)?;
        Ok(CurveClass {
            space: self.space,
            label: format!("{} + {}", self.label, other.label),
            vector: self.vector.iter().zip(&other.vector).map(|(a, b)| a + b).collect(),
            origin: CurveOrigin::Combination,
        })
    }

    pub fn scale(&self, c: &ParamPoly) -> Result<CurveClass, CurveError> {
        let vector = self.vector.iter().map(|v| v.checked_mul(c)).collect::<Result<Vec<_>, KernelError>>()?;
        Ok(CurveClass { space: self.space, label: format!("({c})·{}", self.label), vector, origin: CurveOrigin::Combination })
    }

    /// `Σ cᵢ·Γᵢ`, labelled with `label`.
    pub fn combination(label: &str, terms: &[(ParamPoly, &CurveClass)]) -> Result<CurveClass, CurveError> {
        let (_, first) = terms.first().ok_or_else(|| CurveError::InvalidCurve("empty combination".into()))?;
        let mut acc = CurveClass {
            space: first.space,
            label: label.to_string(),
            vector: vec![ParamPoly::zero(); first.vector.len()],
            origin: CurveOrigin::Combination,
        };
        for (c, curve) in terms {
            acc.check_same(curve)?;
            for (a, v) in acc.vector.iter_mut().zip(&curve.vector) {
                *a = &*a + &v.checked_mul(c)?;
            }
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.vector.iter().all(ParamPoly::is_zero)
    }

    pub fn eval(&self, n: &Rat) -> Vec<Rat> {
        self.vector.iter().map(|v| v.eval(n)).collect()
    }

    pub fn relabel(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }
}

fn blow_up_parts(tower: &Tower, space: SpaceId) -> Result<(SpaceId, usize), CurveError> {
    let s = tower.space(space);
    match &s.kind {
        SpaceKind::BlowUp { ambient, .. } => Ok((*ambient, s.picard_rank() - 1)),
        _ => Err(CurveError::NotBlowUp(s.name.clone())),
    }
}

/// Builds a curve class on `space` from an atomic specification.
pub fn build_curve(tower: &Tower, space: SpaceId, label: &str, spec: AtomicCurveSpec) -> Result<CurveClass, CurveError> {
    let rank = tower.space(space).picard_rank();
    let mut vector = vec![ParamPoly::zero(); rank];
    let origin = match spec {
        AtomicCurveSpec::LineInProjFiber { generator } => {
            let not_taut = || CurveError::NotTautological {
                space: tower.name(space).to_string(),
                generator: generator.clone(),
            };
            let idx = tower.space(space).generator_index(&generator).ok_or_else(not_taut)?;
            let owner = tower
                .spaces()
                .iter()
                .find(|s| {
                    matches!(s.kind, SpaceKind::ProjBundle { .. })
                        && s.generators().last() == Some(&generator)
                        && tower.is_ancestor(s.id, space)
                })
                .ok_or_else(not_taut)?;
            if let SpaceKind::ProjBundle { bundle, .. } = &owner.kind {
                if sample_points().iter().any(|&k| bundle.rank.eval_int(k) < Rat::from_int(2)) {
                    return Err(CurveError::InvalidCurve(format!(
                        "the fibers of {} contain no lines (bundle rank {})",
                        owner.name, bundle.rank
                    )));
                }
            }
            vector[idx] = ParamPoly::one();
            CurveOrigin::LineInProjFiber { generator }
        }
        AtomicCurveSpec::ExceptionalFiberLine => {
            let (_, exc) = blow_up_parts(tower, space)?;
            vector[exc] = ParamPoly::int(-1);
            CurveOrigin::ExceptionalFiberLine
        }
        AtomicCurveSpec::LineInExceptionalFiber { direction } => {
            let (_, exc) = blow_up_parts(tower, space)?;
            let SpaceKind::BlowUp { center, .. } = &tower.space(space).kind else { unreachable!() };
            let restriction = center
                .exc_restriction_class
                .as_ref()
                .ok_or_else(|| CurveError::MissingRestrictionClass(tower.name(space).to_string()))?;
            vector[exc] = intersect(&direction, restriction)?;
            CurveOrigin::LineInExceptionalFiber { direction: direction.label }
        }
        AtomicCurveSpec::StrictTransform { ambient, mult_at_center } => {
            let (amb, exc) = blow_up_parts(tower, space)?;
            if ambient.space != amb {
                return Err(CurveError::SpaceMismatch(format!(
                    "{} does not live on the ambient of {}",
                    ambient.label,
                    tower.name(space)
                )));
            }
            // Projection formula: Γ̂·π*D = Γ·D, and Γ̂·e = multiplicity at the center.
            vector[..exc].clone_from_slice(&ambient.vector);
            vector[exc] = ParamPoly::int(mult_at_center as i64);
            CurveOrigin::StrictTransform { ambient: ambient.label, mult_at_center }
        }
        AtomicCurveSpec::DeclaredSection { vector: declared, note } => {
            if declared.len() != rank {
                return Err(CurveError::Length {
                    what: format!("declared curve {label}"),
                    expected: rank,
                    got: declared.len(),
                });
            }
            vector = declared;
            CurveOrigin::DeclaredSection { note }
        }
    };
    Ok(CurveClass { space, label: label.to_string(), vector, origin })
}

/// `c·D`.
pub fn intersect(c: &CurveClass, d: &DivClass) -> Result<ParamPoly, CurveError> {
    if c.space != d.space || c.vector.len() != d.coords.len() {
        return Err(CurveError::SpaceMismatch(format!("curve {} and the divisor live on different spaces", c.label)));
    }
    let mut acc = ParamPoly::zero();
    for (a, b) in c.vector.iter().zip(&d.coords) {
        acc = &acc + &a.checked_mul(b)?;
    }
    Ok(acc)
}

/// Rows = curves, columns = divisors.
pub fn pairing_table(curves: &[CurveClass], divisors: &[DivClass]) -> Result<PolyMatrix, CurveError> {
    let mut m = PolyMatrix::zeros(curves.len(), divisors.len());
    for (i, c) in curves.iter().enumerate() {
        for (j, d) in divisors.iter().enumerate() {
            m.set(i, j, intersect(c, d)?);
        }
    }
    Ok(m)
}

/// Pushforward `c_*Γ` along a morphism whose Picard pullback is `map`
/// (from the target of the morphism to the curve's space).
pub fn pushforward(curve: &CurveClass, map: &PullbackMap, label: &str) -> Result<CurveClass, CurveError> {
    if map.target != curve.space {
        return Err(CurveError::SpaceMismatch(format!("{} cannot push {} forward", map.name, curve.label)));
    }
    let vector = map.generator_matrix().transpose().mul_vec(&curve.vector)?;
    Ok(CurveClass {
        space: map.source,
        label: label.to_string(),
        vector,
        origin: CurveOrigin::Pushforward { curve: curve.label.clone(), map: map.name.clone() },
    })
}

/// Coordinates `y` with `tableᵀ·y = observed`: the combination of the
/// table's curves whose pairings are the observed ones.
pub fn solve_pushforward(observed: &[ParamPoly], table: &PolyMatrix) -> Result<Vec<ParamPoly>, CurveError> {
    if table.is_square() && inverse_poly(table).is_err() {
        return Err(CurveError::SingularTable);
    }
    solve_linear_poly(&table.transpose(), observed).map_err(|e| match e {
        KernelError::NoSolution => CurveError::Inconsistent,
        KernelError::Underdetermined { .. } | KernelError::Singular => CurveError::SingularTable,
        other => other.into(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct KNegEntry {
    pub curve: String,
    pub value: ParamPoly,
    /// Negative for every integer `n ≥ 3`.
    pub negative: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KNegReport {
    pub entries: Vec<KNegEntry>,
}

impl KNegReport {
    pub fn all_negative(&self) -> bool {
        self.entries.iter().all(|e| e.negative)
    }

    pub fn values(&self) -> Vec<ParamPoly> {
        self.entries.iter().map(|e| e.value.clone()).collect()
    }
}

/// `K·Γ` for each curve with a negativity verdict valid for all `n ≥ 3`.
pub fn kneg_check(k: &DivClass, curves: &[CurveClass]) -> Result<KNegReport, CurveError> {
    let entries = curves
        .iter()
        .map(|c| {
            let value = intersect(c, k)?;
            let negative = value.negative_for_all_from(3);
            Ok(KNegEntry { curve: c.label.clone(), value, negative })
        })
        .collect::<Result<Vec<_>, CurveError>>()?;
    Ok(KNegReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{CenterSpec, FormalBundle};

    fn plane_blow_up() -> (Tower, SpaceId, SpaceId) {
        let mut t = Tower::new();
        let pt = t.add_formal_base("pt", &[], Some(vec![]), ParamPoly::zero()).unwrap();
        let p2 = t.add_proj_bundle("P2", FormalBundle::trivial(&t, pt, ParamPoly::int(3)), "h").unwrap();
        let bl = t.add_blow_up("Bl", p2, CenterSpec::new(ParamPoly::int(2)), "e").unwrap();
        (t, p2, bl)
    }

    #[test]
    fn atomic_curves_on_a_blown_up_plane() {
        let (t, p2, bl) = plane_blow_up();
        let line = build_curve(&t, p2, "l", AtomicCurveSpec::LineInProjFiber { generator: "h".into() }).unwrap();
        let strict = build_curve(
            &t,
            bl,
            "l^",
            AtomicCurveSpec::StrictTransform { ambient: line.clone(), mult_at_center: 1 },
        )
        .unwrap();
        assert_eq!(strict.vector, vec![ParamPoly::one(), ParamPoly::one()]);
        let exc = build_curve(&t, bl, "f", AtomicCurveSpec::ExceptionalFiberLine).unwrap();
        assert_eq!(intersect(&exc, &t.generator(bl, "e").unwrap()).unwrap(), ParamPoly::int(-1));
        assert!(build_curve(&t, p2, "bad", AtomicCurveSpec::ExceptionalFiberLine).is_err());
        assert!(build_curve(&t, bl, "bad", AtomicCurveSpec::LineInProjFiber { generator: "e".into() }).is_err());
        assert!(matches!(
            build_curve(&t, bl, "f2", AtomicCurveSpec::LineInExceptionalFiber { direction: exc }),
            Err(CurveError::MissingRestrictionClass(_))
        ));
    }

    #[test]
    fn kneg_on_zero_class_is_not_negative() {
        let (t, _, bl) = plane_blow_up();
        let zero = build_curve(
            &t,
            bl,
            "0",
            AtomicCurveSpec::DeclaredSection { vector: vec![ParamPoly::zero(); 2], note: "zero".into() },
        )
        .unwrap();
        let k = t.class(bl, vec![ParamPoly::int(-3), ParamPoly::int(1)]).unwrap();
        let r = kneg_check(&k, &[zero]).unwrap();
        assert_eq!(r.entries[0].value, ParamPoly::zero());
        assert!(!r.all_negative());
    }

    #[test]
    fn pushforward_solving() {
        let t = PolyMatrix::from_rows(vec![
            vec![ParamPoly::int(0), ParamPoly::int(1)],
            vec![ParamPoly::int(1), ParamPoly::int(-1)],
        ])
        .unwrap();
        let y = solve_pushforward(&[ParamPoly::int(1), ParamPoly::int(0)], &t).unwrap();
        assert_eq!(y, vec![ParamPoly::int(1), ParamPoly::int(1)]);
        let singular = PolyMatrix::from_rows(vec![vec![ParamPoly::one(); 2]; 2]).unwrap();
        assert_eq!(solve_pushforward(&[ParamPoly::one(), ParamPoly::zero()], &singular), Err(CurveError::SingularTable));
        assert!(pairing_table(&[], &[]).unwrap().rows() == 0);
    }
}
