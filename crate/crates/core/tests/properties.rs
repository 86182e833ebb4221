//! Property tests for the invariants of the exact kernel, the symplectic
//! local models, the bundle tower and the curve-cone engine.

use proptest::prelude::*;

use towercheck::curves::{
    build_curve, extremal_certificate, intersect, kneg_check, solve_pushforward, verify_certificate, AtomicCurveSpec,
    Cone, CurveClass, ExtremalOutcome,
};
use towercheck::kernel::{dot, inverse, solve_linear, KernelError, ParamPoly, PolyMatrix, PrimeFieldConfig, Rat, RatMatrix};
use towercheck::local::{
    fixed_locus_incidence, is_isotropic, po2_act, stabilizer_class_omega, stabilizer_class_sigma, yoneda_omega,
    yoneda_sigma, ExtPair, HomWE, Po2Element, QuadSpaceW, SymplecticSpace,
};
use towercheck::tower::{canonical_class, CenterSpec, DivClass, FormalBundle, PullbackMap, SpaceId, Tower};

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| Rat::new(p, q).expect("nonzero denominator"))
}

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_int(x)).collect()
}

/// Polynomials of degree at most two with small rational coefficients.
fn poly_strategy() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec(rat_strategy(), 3)
        .prop_map(|cs| ParamPoly::from_terms(cs.into_iter().enumerate().map(|(e, c)| (e as u32, c))).unwrap())
}

fn int_matrix(rows: usize, cols: usize, range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(prop::collection::vec(range, cols), rows)
        .prop_map(|rows| RatMatrix::from_rows(rows.iter().map(|r| ints(r)).collect()).unwrap())
}

// ---------------------------------------------------------------- kernel

proptest! {
    #[test]
    fn rational_inverse_is_two_sided(a in rat_strategy()) {
        prop_assume!(!a.is_zero());
        let inv = a.recip().unwrap();
        prop_assert_eq!(&a * &inv, Rat::one());
        prop_assert_eq!(&inv * &a, Rat::one());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in poly_strategy(), q in poly_strategy(), at in -20i64..=20) {
        let x = Rat::from_int(at);
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
        prop_assert_eq!((&p - &q).eval(&x), p.eval(&x) - q.eval(&x));
        prop_assert_eq!(p.checked_mul(&q).unwrap().eval(&x), p.eval(&x) * q.eval(&x));
    }

    #[test]
    fn solutions_resubstitute(a in int_matrix(3, 3, -4..=4), x in prop::collection::vec(rat_strategy(), 3)) {
        let b = a.mul_vec(&x).unwrap();
        match solve_linear(&a, &b) {
            Ok(y) => {
                prop_assert_eq!(a.mul_vec(&y).unwrap(), b);
                prop_assert_eq!(y, x);
            }
            Err(KernelError::Underdetermined { kernel }) => {
                prop_assert!(inverse(&a).is_err());
                for k in kernel {
                    prop_assert!(a.mul_vec(&k).unwrap().iter().all(Rat::is_zero));
                }
            }
            Err(e) => prop_assert!(false, "consistent system rejected: {e}"),
        }
    }

    #[test]
    fn prime_field_reduction_is_a_homomorphism(
        p in prop::sample::select(vec![2u64, 3, 5, 7, 101, 65_521]),
        a in rat_strategy(),
        b in rat_strategy(),
    ) {
        let cfg = PrimeFieldConfig::new(p).unwrap();
        if let (Some(ra), Some(rb)) = (cfg.reduce_rat(&a), cfg.reduce_rat(&b)) {
            if let Some(rs) = cfg.reduce_rat(&(&a + &b)) {
                prop_assert_eq!(rs, cfg.add(ra, rb));
            }
            if let Some(rd) = cfg.reduce_rat(&(&a - &b)) {
                prop_assert_eq!(rd, cfg.sub(ra, rb));
            }
            if let Some(rp) = cfg.reduce_rat(&(&a * &b)) {
                prop_assert_eq!(rp, cfg.mul(ra, rb));
            }
            if ra != 0 {
                prop_assert_eq!(cfg.mul(ra, cfg.inv(ra).unwrap()), 1);
            }
        }
    }
}

// ---------------------------------------------------------------- local models

/// Orthogonal transformations of the hyperbolic form `2ac + b²`: a torus
/// element, the reflection in the middle coordinate, the exchange of the
/// two isotropic lines, and a unipotent element.
fn orthogonal_strategy() -> impl Strategy<Value = RatMatrix> {
    let nonzero = rat_strategy().prop_filter("nonzero", |t| !t.is_zero());
    prop_oneof![
        nonzero.prop_map(|t| {
            let mut g = RatMatrix::identity(3);
            g.set(0, 0, t.clone());
            g.set(2, 2, t.recip().unwrap());
            g
        }),
        Just({
            let mut g = RatMatrix::identity(3);
            g.set(1, 1, Rat::from_int(-1));
            g
        }),
        Just(RatMatrix::from_rows(vec![ints(&[0, 0, 1]), ints(&[0, 1, 0]), ints(&[1, 0, 0])]).unwrap()),
        rat_strategy().prop_map(|s| {
            let half_sq = &(&s * &s) * &Rat::new(-1, 2).unwrap();
            RatMatrix::from_rows(vec![
                vec![Rat::one(), s.clone(), half_sq],
                vec![Rat::zero(), Rat::one(), -&s],
                vec![Rat::zero(), Rat::zero(), Rat::one()],
            ])
            .unwrap()
        }),
    ]
}

/// Homomorphisms `W → E` for `E` the standard symplectic space of
/// dimension 4, images in `{−1, 0, 1}⁴`.
fn hom_strategy() -> impl Strategy<Value = HomWE> {
    prop::collection::vec(prop::collection::vec(-1i64..=1, 4), 3)
        .prop_map(|cols| HomWE::from_images([ints(&cols[0]), ints(&cols[1]), ints(&cols[2])]).unwrap())
}

/// Homomorphisms with image in the Lagrangian spanned by `x₁, x₂`.
fn lagrangian_hom_strategy() -> impl Strategy<Value = HomWE> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 3).prop_map(|cols| {
        let img = |c: &Vec<i64>| ints(&[c[0], c[1], 0, 0]);
        HomWE::from_images([img(&cols[0]), img(&cols[1]), img(&cols[2])]).unwrap()
    })
}

fn ext_pair_strategy() -> impl Strategy<Value = ExtPair> {
    (prop::collection::vec(-3i64..=3, 2), prop::collection::vec(-3i64..=3, 2))
        .prop_map(|(a, b)| ExtPair::with_identity(ints(&a), ints(&b)).unwrap())
}

proptest! {
    #[test]
    fn omega_vanishes_exactly_on_isotropic_images(phi in prop_oneof![hom_strategy(), lagrangian_hom_strategy()]) {
        let e = SymplecticSpace::standard(2);
        let form = yoneda_omega(&phi, &e).unwrap();
        let vanishes = form.iter().all(Rat::is_zero);
        prop_assert_eq!(vanishes, is_isotropic(&phi.images(), &e).unwrap());
    }

    #[test]
    fn stabilizer_class_is_invariant_under_orthogonal_precomposition(
        phi in lagrangian_hom_strategy(),
        g in orthogonal_strategy(),
    ) {
        let e = SymplecticSpace::standard(2);
        let w = QuadSpaceW::default();
        prop_assert!(w.is_orthogonal(&g));
        let moved = phi.precompose(&g).unwrap();
        prop_assert_eq!(
            stabilizer_class_omega(&phi, &w, &e).unwrap(),
            stabilizer_class_omega(&moved, &w, &e).unwrap()
        );
    }

    #[test]
    fn sigma_components_are_opposite(pair in ext_pair_strategy()) {
        let s = yoneda_sigma(&pair);
        prop_assert!((&s.alpha + &s.beta).is_zero());
        prop_assert_eq!(s.in_zero_locus, s.beta.is_zero());
    }

    #[test]
    fn psi_is_equivariant(pair in ext_pair_strategy(), lambda in rat_strategy()) {
        prop_assume!(!lambda.is_zero());
        let scaled = po2_act(&Po2Element::Scale(lambda), &pair).unwrap();
        prop_assert!(scaled.holds);
        prop_assert_eq!(&scaled.psi_after, &pair.psi());
        let swapped = po2_act(&Po2Element::Swap, &pair).unwrap();
        prop_assert!(swapped.holds);
        prop_assert_eq!(swapped.psi_after, -&pair.psi());
    }

    #[test]
    fn sigma_classification_is_torus_invariant(pair in ext_pair_strategy(), lambda in rat_strategy()) {
        prop_assume!(!lambda.is_zero());
        let moved = po2_act(&Po2Element::Scale(lambda), &pair).unwrap().pair;
        prop_assert_eq!(stabilizer_class_sigma(&moved), stabilizer_class_sigma(&pair));
    }

    #[test]
    fn diagonal_lies_in_the_incidence(p in prop::sample::select(vec![2u64, 3, 5]), m in prop::sample::select(vec![2usize, 4])) {
        let cfg = PrimeFieldConfig::new(p).unwrap();
        let r = fixed_locus_incidence(m, &cfg).unwrap();
        prop_assert!(r.diagonal_in_incidence);
        prop_assert!(r.fixed_equals_diagonal);
        prop_assert_eq!(r.diagonal_points, r.projective_points);
    }
}

// ---------------------------------------------------------------- tower

/// A formal base with two generators and a known canonical class.
fn base_tower() -> (Tower, SpaceId) {
    let mut t = Tower::new();
    let b = t.add_formal_base("B", &["a", "b"], Some(vec![ParamPoly::int(-2), ParamPoly::int(1)]), ParamPoly::int(4)).unwrap();
    (t, b)
}

fn class_on(t: &Tower, s: SpaceId, coords: &[i64]) -> DivClass {
    t.class(s, coords.iter().map(|&c| ParamPoly::int(c)).collect()).unwrap()
}

#[derive(Clone, Debug)]
enum Step {
    Proj { rank: i64, twist: Vec<i64> },
    BlowUp { codim: i64 },
    Divisor { class: Vec<i64> },
}

fn step_strategy() -> impl Strategy<Value = Step> {
    prop_oneof![
        (1i64..=4, prop::collection::vec(-2i64..=2, 8)).prop_map(|(rank, twist)| Step::Proj { rank, twist }),
        (2i64..=4).prop_map(|codim| Step::BlowUp { codim }),
        prop::collection::vec(-2i64..=2, 8).prop_map(|class| Step::Divisor { class }),
    ]
}

/// Applies the steps to the top of the tower and returns the ids created.
fn grow(t: &mut Tower, start: SpaceId, steps: &[Step]) -> Vec<SpaceId> {
    let mut ids = vec![start];
    for (i, step) in steps.iter().enumerate() {
        let top = *ids.last().unwrap();
        let r = t.space(top).picard_rank();
        let name = format!("S{i}");
        let id = match step {
            Step::Proj { rank, twist } => {
                let c1 = class_on(t, top, &twist[..r]);
                let bundle = FormalBundle::new(t, ParamPoly::int(*rank), c1).unwrap();
                t.add_proj_bundle(&name, bundle, &format!("xi{i}")).unwrap()
            }
            Step::BlowUp { codim } => {
                t.add_blow_up(&name, top, CenterSpec::new(ParamPoly::int(*codim)), &format!("e{i}")).unwrap()
            }
            Step::Divisor { class } => {
                let c = class_on(t, top, &class[..r]);
                t.add_divisor_in(&name, top, c).unwrap()
            }
        };
        ids.push(id);
    }
    ids
}

proptest! {
    #[test]
    fn extension_arithmetic_is_additive(
        ra in 1i64..=5, rb in 1i64..=5,
        ca in prop::collection::vec(-4i64..=4, 2),
        cb in prop::collection::vec(-4i64..=4, 2),
    ) {
        let (t, b) = base_tower();
        let a_bundle = FormalBundle::new(&t, ParamPoly::int(ra), class_on(&t, b, &ca)).unwrap();
        let b_bundle = FormalBundle::new(&t, ParamPoly::int(rb), class_on(&t, b, &cb)).unwrap();
        let ext = FormalBundle::extension(&a_bundle, &b_bundle).unwrap();
        prop_assert_eq!(&ext.rank, &ParamPoly::int(ra + rb));
        prop_assert_eq!(&ext.c1, &a_bundle.c1.add(&b_bundle.c1).unwrap());
        prop_assert_eq!(&FormalBundle::quotient(&ext, &a_bundle).unwrap(), &b_bundle);
        prop_assert_eq!(&FormalBundle::kernel(&ext, &b_bundle).unwrap(), &a_bundle);
        prop_assert_eq!(&FormalBundle::dsum(&a_bundle, &b_bundle).unwrap(), &ext);
        // det(E ⊗ L) = det(E) + rk(E)·c₁(L)
        let line = FormalBundle::line(class_on(&t, b, &cb));
        let twisted = a_bundle.tensor_line(&line).unwrap();
        let expected = a_bundle.c1.add(&line.c1.scale(&ParamPoly::int(ra)).unwrap()).unwrap();
        prop_assert_eq!(twisted.c1, expected);
    }

    #[test]
    fn picard_rank_counts_projective_bundles_and_blow_ups(steps in prop::collection::vec(step_strategy(), 1..6)) {
        let (mut t, b) = base_tower();
        let ids = grow(&mut t, b, &steps);
        for (step, pair) in steps.iter().zip(ids.windows(2)) {
            let (before, after) = (t.space(pair[0]).picard_rank(), t.space(pair[1]).picard_rank());
            let added = match step {
                Step::Divisor { .. } => 0,
                _ => 1,
            };
            prop_assert_eq!(after, before + added);
        }
    }

    #[test]
    fn structure_pullbacks_compose(steps in prop::collection::vec(step_strategy(), 2..6), coords in prop::collection::vec(-3i64..=3, 2)) {
        let (mut t, b) = base_tower();
        let ids = grow(&mut t, b, &steps);
        let top = *ids.last().unwrap();
        let mid = ids[ids.len() / 2];
        let direct = PullbackMap::structure(&t, "direct", b, top).unwrap();
        let first = PullbackMap::structure(&t, "first", b, mid).unwrap();
        let second = PullbackMap::structure(&t, "second", mid, top).unwrap();
        let composed = first.compose(&second).unwrap();
        prop_assert_eq!(composed.generator_matrix(), direct.generator_matrix());
        let d = class_on(&t, b, &coords);
        prop_assert_eq!(composed.apply(&d).unwrap(), t.lift(&d, top).unwrap());
    }

    #[test]
    fn declared_pullbacks_compose(
        m1 in int_matrix(3, 2, -3..=3),
        m2 in int_matrix(2, 3, -3..=3),
        coords in prop::collection::vec(-3i64..=3, 2),
    ) {
        let mut t = Tower::new();
        let x = t.add_formal_base("X", &["x1", "x2"], None, ParamPoly::int(2)).unwrap();
        let y = t.add_formal_base("Y", &["y1", "y2", "y3"], None, ParamPoly::int(3)).unwrap();
        let z = t.add_formal_base("Z", &["z1", "z2"], None, ParamPoly::int(2)).unwrap();
        let f = PullbackMap::from_generator_matrix(&t, "f", x, y, m1.to_poly(), false).unwrap();
        let g = PullbackMap::from_generator_matrix(&t, "g", y, z, m2.to_poly(), false).unwrap();
        let gf = f.compose(&g).unwrap();
        let d = class_on(&t, x, &coords);
        prop_assert_eq!(gf.apply(&d).unwrap(), g.apply(&f.apply(&d).unwrap()).unwrap());
        prop_assert!(g.compose(&f).is_err());
    }

    #[test]
    fn adjunction_for_divisors(r in 2i64..=6, d in -3i64..=5) {
        let mut t = Tower::new();
        let pt = t.add_formal_base("pt", &[], Some(vec![]), ParamPoly::zero()).unwrap();
        let p = t.add_proj_bundle("P", FormalBundle::trivial(&t, pt, ParamPoly::int(r)), "h").unwrap();
        let hyp = t.add_divisor_in("D", p, class_on(&t, p, &[d])).unwrap();
        // K_D = (K_P + D)|_D with K_P = −r·h.
        prop_assert_eq!(canonical_class(&t, hyp).unwrap().coords, vec![ParamPoly::int(d - r)]);
    }
}

// ---------------------------------------------------------------- curves

fn plane_blow_up() -> (Tower, SpaceId, SpaceId) {
    let mut t = Tower::new();
    let pt = t.add_formal_base("pt", &[], Some(vec![]), ParamPoly::zero()).unwrap();
    let p2 = t.add_proj_bundle("P2", FormalBundle::trivial(&t, pt, ParamPoly::int(3)), "h").unwrap();
    let bl = t.add_blow_up("Bl", p2, CenterSpec::new(ParamPoly::int(2)), "e").unwrap();
    (t, p2, bl)
}

fn declared(t: &Tower, s: SpaceId, label: &str, v: &[i64]) -> CurveClass {
    let vector = v.iter().map(|&x| ParamPoly::int(x)).collect();
    build_curve(t, s, label, AtomicCurveSpec::DeclaredSection { vector, note: "test".into() }).unwrap()
}

fn nonzero_int_vec(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, dim).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

proptest! {
    #[test]
    fn intersection_is_bilinear(
        c1 in prop::collection::vec(-4i64..=4, 2), c2 in prop::collection::vec(-4i64..=4, 2),
        d1 in prop::collection::vec(-4i64..=4, 2), d2 in prop::collection::vec(-4i64..=4, 2),
        a in -3i64..=3, b in -3i64..=3,
    ) {
        let (t, _, bl) = plane_blow_up();
        let (g1, g2) = (declared(&t, bl, "g1", &c1), declared(&t, bl, "g2", &c2));
        let (e1, e2) = (class_on(&t, bl, &d1), class_on(&t, bl, &d2));
        let (pa, pb) = (ParamPoly::int(a), ParamPoly::int(b));
        let combo = CurveClass::combination("combo", &[(pa.clone(), &g1), (pb.clone(), &g2)]).unwrap();
        let lhs = intersect(&combo, &e1).unwrap();
        let rhs = &pa.checked_mul(&intersect(&g1, &e1).unwrap()).unwrap() + &pb.checked_mul(&intersect(&g2, &e1).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = e1.add(&e2).unwrap();
        prop_assert_eq!(intersect(&g1, &sum).unwrap(), &intersect(&g1, &e1).unwrap() + &intersect(&g1, &e2).unwrap());
    }

    #[test]
    fn strict_transforms_satisfy_the_projection_formula(deg in 1i64..=6, mult in 0u32..=3, dcoef in -4i64..=4) {
        let (t, p2, bl) = plane_blow_up();
        let gamma = declared(&t, p2, "Gamma", &[deg]);
        let strict = build_curve(&t, bl, "Gamma_hat", AtomicCurveSpec::StrictTransform { ambient: gamma.clone(), mult_at_center: mult }).unwrap();
        let d = class_on(&t, p2, &[dcoef]);
        prop_assert_eq!(intersect(&strict, &t.lift(&d, bl).unwrap()).unwrap(), intersect(&gamma, &d).unwrap());
        let e = t.generator(bl, "e").unwrap();
        prop_assert_eq!(intersect(&strict, &e).unwrap(), ParamPoly::int(mult as i64));
    }

    #[test]
    fn certificates_are_sound(gens in prop::collection::vec(nonzero_int_vec(3), 2..5), face in 0usize..4) {
        let face = face % gens.len();
        let labels = (0..gens.len()).map(|i| format!("g{i}")).collect();
        let cone = Cone::new(3, labels, gens.iter().map(|g| ints(g)).collect()).unwrap();
        match extremal_certificate(&cone, &[face], 3).unwrap() {
            ExtremalOutcome::Certified { functional, values, .. } => {
                prop_assert!(verify_certificate(&cone, &[face], &functional));
                let f = ints(&functional);
                for (g, v) in cone.generators.iter().zip(&values) {
                    prop_assert_eq!(&dot(&f, g), v);
                }
                prop_assert!(values[face].is_zero());
            }
            ExtremalOutcome::Inconclusive { witness, .. } => {
                // A witness, when present, must really be a dependency.
                if let Some(w) = witness {
                    let mut lhs = vec![Rat::zero(); 3];
                    for (label, l) in &w.lambda {
                        prop_assert!(!l.is_negative());
                        let i = cone.labels.iter().position(|x| x == label).unwrap();
                        for (acc, x) in lhs.iter_mut().zip(&cone.generators[i]) {
                            *acc += &(l * x);
                        }
                    }
                    let mut rhs = vec![Rat::zero(); 3];
                    for (label, m) in &w.mu {
                        let i = cone.labels.iter().position(|x| x == label).unwrap();
                        for (acc, x) in rhs.iter_mut().zip(&cone.generators[i]) {
                            *acc += &(m * x);
                        }
                    }
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn pushforward_solutions_round_trip(table in int_matrix(3, 3, -3..=3), y in prop::collection::vec(-5i64..=5, 3)) {
        prop_assume!(inverse(&table).is_ok());
        let poly_table: PolyMatrix = table.to_poly();
        let y_poly: Vec<ParamPoly> = y.iter().map(|&v| ParamPoly::int(v)).collect();
        let observed = poly_table.transpose().mul_vec(&y_poly).unwrap();
        prop_assert_eq!(solve_pushforward(&observed, &poly_table).unwrap(), y_poly);
    }

    #[test]
    fn negativity_survives_positive_rescaling(
        k in prop::collection::vec(-4i64..=4, 2),
        curves in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..4),
        factor in 1i64..=5,
    ) {
        let (t, _, bl) = plane_blow_up();
        let kd = class_on(&t, bl, &k);
        let cs: Vec<CurveClass> = curves.iter().enumerate().map(|(i, v)| declared(&t, bl, &format!("c{i}"), v)).collect();
        let scaled: Vec<CurveClass> = cs.iter().map(|c| c.scale(&ParamPoly::int(factor)).unwrap()).collect();
        let before = kneg_check(&kd, &cs).unwrap();
        let after = kneg_check(&kd, &scaled).unwrap();
        prop_assert_eq!(before.all_negative(), after.all_negative());
        for (a, b) in before.values().iter().zip(after.values()) {
            prop_assert_eq!(a.scale(&Rat::from_int(factor)), b);
        }
    }
}
