//! Evaluation of probes: what each check computes.

use super::interp::Interp;
use super::model::{ObservedDef, Po2Def, Probe, QuadricFamily};
use super::{RunN, ScenarioError, Value};
use crate::curves::{
    extremal_certificate, intersect, kneg_check, mori_propagate, pairing_table, pushforward, restriction_kernel,
    solve_pushforward, verify_certificate, Cone, CurveClass, ExtremalOutcome, DEFAULT_HEIGHT_BOUND,
};
use crate::kernel::{
    inverse_poly, kernel_basis, matrix_product_is_identity, rref, sample_points, PolyMatrix,
    PrimeFieldConfig, Rat, RatMatrix,
};
use crate::local::{
    fixed_locus_incidence, is_isotropic, normal_cone_quadric, pairing_quadric, po2_act, pullback_omega_quadrics,
    regular_sequence_check, stabilizer_class_omega, stabilizer_class_sigma, yoneda_omega, yoneda_sigma, ExtPair,
    HomWE, LocalModelError, Po2Element, QuadSpaceW, SymplecticSpace,
};
use crate::tower::{coh_dim_product_proj, Basis, SpaceKind};

type Result<T> = std::result::Result<T, ScenarioError>;

fn engine(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Engine(msg.into())
}

/// Evaluates `f` at `n`, or for symbolic runs at every sample point; the
/// sampled values must agree, since such values are reported without `n`.
pub(crate) fn per_n(n: &RunN, mut f: impl FnMut(&Rat) -> Result<Value>) -> Result<Value> {
    match n {
        RunN::At(k) => f(&Rat::from_int(*k)),
        RunN::Symbolic => {
            let mut first: Option<(i64, Value)> = None;
            for k in sample_points() {
                let v = f(&Rat::from_int(k))?;
                match &first {
                    None => first = Some((k, v)),
                    Some((k0, v0)) if !v0.matches(&v) => {
                        return Err(engine(format!(
                            "the value depends on n ({v0} at n = {k0}, {v} at n = {k}); run at a fixed n"
                        )))
                    }
                    Some(_) => {}
                }
            }
            Ok(first.expect("at least one sample point").1)
        }
    }
}

/// Nonzero rows of the reduced row echelon form.
pub(crate) fn row_reduced(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        return vec![];
    }
    let (r, pivots) = rref(&RatMatrix::from_rows(rows.to_vec()).expect("rectangular"));
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

fn needs_n(n: &RunN) -> Result<i64> {
    match n {
        RunN::At(k) => Ok(*k),
        RunN::Symbolic => Err(engine("this check needs a fixed n")),
    }
}

fn face_indices(curves: &[String], face: &[String]) -> Result<Vec<usize>> {
    face.iter()
        .map(|f| curves.iter().position(|c| c == f).ok_or_else(|| engine(format!("face curve {f} is not in the cone"))))
        .collect()
}

fn images3(images: &[Vec<Rat>]) -> Result<[Vec<Rat>; 3]> {
    <[Vec<Rat>; 3]>::try_from(images.to_vec()).map_err(|_| engine("φ needs exactly three images"))
}

fn local(e: LocalModelError) -> ScenarioError {
    ScenarioError::Engine(e.to_string())
}

fn po2(e: &Po2Def) -> Po2Element {
    match e {
        Po2Def::Scale(l) => Po2Element::Scale(l.clone()),
        Po2Def::Swap => Po2Element::Swap,
    }
}

fn extremal(me: &mut Interp<'_>, curves: &[String], face: &[String], bound: Option<u32>, at: &Rat) -> Result<(Cone, Vec<usize>, ExtremalOutcome)> {
    let cs = me.curve_list(curves)?;
    let cone = Cone::from_curves(&cs, at)?;
    let idx = face_indices(curves, face)?;
    let out = extremal_certificate(&cone, &idx, bound.unwrap_or(DEFAULT_HEIGHT_BOUND))?;
    Ok((cone, idx, out))
}

pub(crate) fn eval(me: &mut Interp<'_>, probe: &Probe, n: &RunN) -> Result<Value> {
    Ok(match probe {
        Probe::Class(c) => Value::Vector(me.class_expr(c)?.coords),
        Probe::ClassInBasis { basis, class } => {
            let b = me.basis(basis)?;
            Value::Vector(b.coordinates(&me.class_expr(class)?)?)
        }
        Probe::Pairing { curve, class } => {
            let c = me.curve(curve)?;
            Value::Poly(intersect(&c, &me.class_expr(class)?)?)
        }
        Probe::PairingTable { curves, divisors } => {
            let cs = me.curve_list(curves)?;
            let ds = divisors.iter().map(|d| me.class_expr(d)).collect::<Result<Vec<_>>>()?;
            Value::matrix(&pairing_table(&cs, &ds)?)
        }
        Probe::CurveVector(name) => Value::Vector(me.curve(name)?.vector),
        Probe::MapMatrix { map, source_basis, target_basis } => {
            let m = me.map(map)?;
            let sb = match source_basis {
                Some(b) => me.basis(b)?,
                None => Basis::generators(&me.tower, m.source),
            };
            let tb = match target_basis {
                Some(b) => me.basis(b)?,
                None => Basis::generators(&me.tower, m.target),
            };
            Value::matrix(&m.matrix_in_bases(&sb, &tb)?)
        }
        Probe::MapInvertible(map) => Value::Bool(me.map(map)?.is_invertible()),
        Probe::ProductIsIdentity { a, b } => {
            let (a, b) = (PolyMatrix::from_rows(a.clone())?, PolyMatrix::from_rows(b.clone())?);
            Value::Bool(matrix_product_is_identity(&a, &b)?)
        }
        Probe::MatrixInverse(m) => Value::matrix(&inverse_poly(&PolyMatrix::from_rows(m.clone())?)?),
        Probe::Transport(t) => Value::Vector(me.transport(t)?),
        Probe::SolvePushforward { observed, curves, divisors } => {
            let ds = divisors.iter().map(|d| me.class_expr(d)).collect::<Result<Vec<_>>>()?;
            let obs = match observed {
                ObservedDef::Literal(v) => v.clone(),
                ObservedDef::Curve { curve, map } => {
                    let c = me.curve(curve)?;
                    let m = me.map(map)?;
                    let pushed = pushforward(&c, &m, curve)?;
                    ds.iter().map(|d| intersect(&pushed, d)).collect::<std::result::Result<Vec<_>, _>>()?
                }
            };
            let cs = me.curve_list(curves)?;
            let table = pairing_table(&cs, &ds)?;
            Value::Vector(solve_pushforward(&obs, &table)?)
        }
        Probe::KPairings { canonical, curves } => {
            let k = me.class_expr(canonical)?;
            Value::Vector(kneg_check(&k, &me.curve_list(curves)?)?.values())
        }
        Probe::KNegative { canonical, curves } => {
            let k = me.class_expr(canonical)?;
            Value::Bool(kneg_check(&k, &me.curve_list(curves)?)?.all_negative())
        }
        Probe::Extremal { curves, face, bound } => per_n(n, |at| {
            let (_, _, out) = extremal(me, curves, face, *bound, at)?;
            Ok(match out.functional() {
                Some(f) => Value::ints(f),
                None => Value::Text("inconclusive".into()),
            })
        })?,
        Probe::ExtremalValues { curves, face, bound } => per_n(n, |at| {
            let (_, _, out) = extremal(me, curves, face, *bound, at)?;
            Ok(match out {
                ExtremalOutcome::Certified { values, .. } => Value::rats(&values),
                ExtremalOutcome::Inconclusive { .. } => Value::Text("inconclusive".into()),
            })
        })?,
        Probe::CertificateSound { curves, face, bound } => per_n(n, |at| {
            let (cone, idx, out) = extremal(me, curves, face, *bound, at)?;
            Ok(Value::Bool(out.functional().is_some_and(|f| verify_certificate(&cone, &idx, f))))
        })?,
        Probe::MoriChain(name) => per_n(n, |at| {
            let chain = me.chain(name, at)?;
            Ok(Value::names(&mori_propagate(&me.tower, &chain, at)?.cone.labels))
        })?,
        Probe::MoriHypotheses(name) => per_n(n, |at| {
            let chain = me.chain(name, at)?;
            Ok(Value::Bool(mori_propagate(&me.tower, &chain, at)?.all_hold()))
        })?,
        Probe::RestrictionKernel(map) => {
            let m = me.map(map)?;
            per_n(n, |at| Ok(Value::rat_rows(&row_reduced(&kernel_basis(&m.generator_matrix().eval(at))))))?
        }
        Probe::RestrictionPerp { map, curves } => {
            let m = me.map(map)?;
            let cs: Vec<CurveClass> = me.curve_list(curves)?;
            per_n(n, |at| Ok(Value::rat_rows(&row_reduced(&restriction_kernel(&m, &cs, at)?.perp))))?
        }
        Probe::Dimension(space) => {
            let id = me.space(space)?;
            Value::Poly(me.tower.space(id).dim().clone())
        }
        Probe::CenterCodim(space) => {
            let id = me.space(space)?;
            match &me.tower.space(id).kind {
                SpaceKind::BlowUp { center, .. } => Value::Poly(center.codim.clone()),
                _ => return Err(engine(format!("{space} is not a blow-up"))),
            }
        }
        Probe::PicardRank(space) => {
            let id = me.space(space)?;
            Value::int(me.tower.space(id).picard_rank() as i64)
        }
        Probe::BundleRank(b) => Value::Poly(me.bundle_expr(b)?.rank),
        Probe::BundleC1(b) => Value::Vector(me.bundle_expr(b)?.c1.coords),
        Probe::CohDim { a, b, q } => Value::int(coh_dim_product_proj(*a, *b, *q)? as i64),
        Probe::IsIsotropic { m, generators } => {
            Value::Bool(is_isotropic(generators, &SymplecticSpace::standard(*m)).map_err(local)?)
        }
        Probe::StabilizerOmega { m, images } => {
            let phi = HomWE::from_images(images3(images)?).map_err(local)?;
            let class = stabilizer_class_omega(&phi, &QuadSpaceW::default(), &SymplecticSpace::standard(*m))
                .map_err(local)?;
            Value::Text(class.as_str().into())
        }
        Probe::StabilizerSigma { e12, e21 } => {
            let pair = ExtPair::with_identity(e12.clone(), e21.clone()).map_err(local)?;
            Value::Text(stabilizer_class_sigma(&pair).as_str().into())
        }
        Probe::YonedaOmega { m, images } => {
            let phi = HomWE::from_images(images3(images)?).map_err(local)?;
            Value::rats(&yoneda_omega(&phi, &SymplecticSpace::standard(*m)).map_err(local)?)
        }
        Probe::YonedaSigma { e12, e21 } => {
            let pair = ExtPair::with_identity(e12.clone(), e21.clone()).map_err(local)?;
            let s = yoneda_sigma(&pair);
            Value::rats(&[s.alpha, s.beta])
        }
        Probe::Po2 { element, e12, e21 } => {
            let pair = ExtPair::with_identity(e12.clone(), e21.clone()).map_err(local)?;
            Value::Bool(po2_act(&po2(element), &pair).map_err(local)?.holds)
        }
        Probe::QuadricRank => Value::int(normal_cone_quadric(needs_n(n)?, None).map_err(local)?.rank as i64),
        Probe::QuadricVariables => {
            Value::int(normal_cone_quadric(needs_n(n)?, None).map_err(local)?.variables as i64)
        }
        Probe::QuadricSmooth => Value::Bool(normal_cone_quadric(needs_n(n)?, None).map_err(local)?.smooth),
        Probe::QuadricRejectsDegenerate => {
            let k = needs_n(n)?;
            let size = (2 * k - 2) as usize;
            let mut pairing = RatMatrix::zeros(size, size);
            pairing.set(0, 0, Rat::one());
            Value::Bool(matches!(normal_cone_quadric(k, Some(&pairing)), Err(LocalModelError::DegenerateModel)))
        }
        Probe::IncidenceCounts { m, p } => {
            let r = fixed_locus_incidence(*m, &field(*p)?).map_err(local)?;
            Value::ints(&[
                r.projective_points as i64,
                r.incidence_points as i64,
                r.fixed_points as i64,
                r.diagonal_points as i64,
            ])
        }
        Probe::FixedEqualsDiagonal { m, p } => {
            Value::Bool(fixed_locus_incidence(*m, &field(*p)?).map_err(local)?.fixed_equals_diagonal)
        }
        Probe::DiagonalInIncidence { m, p } => {
            Value::Bool(fixed_locus_incidence(*m, &field(*p)?).map_err(local)?.diagonal_in_incidence)
        }
        Probe::RegularSequence { family, dim, samples, seed } => {
            let quadrics = match family {
                QuadricFamily::PullbackOmega => pullback_omega_quadrics(&SymplecticSpace::standard(*dim)),
                QuadricFamily::Pairing => vec![pairing_quadric(&RatMatrix::identity(*dim)).map_err(local)?],
                QuadricFamily::DuplicatedPairing => {
                    let q = pairing_quadric(&RatMatrix::identity(*dim)).map_err(local)?;
                    vec![q.clone(), q]
                }
            };
            Value::Bool(regular_sequence_check(&quadrics, *samples, *seed).map_err(local)?)
        }
    })
}

fn field(p: u64) -> Result<PrimeFieldConfig> {
    Ok(PrimeFieldConfig::new(p)?)
}

/// Specializes a polynomial value at a numeric `n`; symbolic runs keep it.
pub(crate) fn specialize(v: Value, n: &RunN) -> Value {
    match n.rat() {
        Some(at) => v.at(&at),
        None => v,
    }
}
