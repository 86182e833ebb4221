//! The built-in scenarios.
//!
//! Each scenario assembles the fragments it needs and lists its checks with
//! provenance and an anchor quoting the statement being reproduced.

mod dsl;
mod fragments;

use dsl::*;
use fragments::*;

use crate::kernel::Rat;
use crate::scenario::model::*;
use crate::scenario::Value;

use Provenance::{Derived, Paper, Trivial};

const CANONICAL_ANCHOR: &str = "Prop. (K-negative): \"(1-2n)x_1 + (3-2n)x_2\"";
const PSI_ANCHOR: &str = "Lemma: \"The matrix of Psi-hat^* in the bases\"";
const XI_ANCHOR: &str = "Lemma: \"The matrix of Xi^* in the bases\"";
const TRANSPORT_ANCHOR: &str = "Remark: \"corresponds to phi^*O_gamma(-1) (x) O_phi(-1,-1)\"";
const CHAIN_ANCHOR: &str = "Lemma (cone propagation) and Prop.: \"NE(Jhat_Z)\"";
const EZ_CHAIN_ANCHOR: &str = "Prop.: \"NE(E_Z)\"";
const PUSH_ANCHOR: &str = "Prop.: \"R+(e1_hat + gamma_hat) + R+(e2_hat + gamma_hat)\"";
const KERNEL_ANCHOR: &str = "Lemma (1-cycles), proof: \"the kernel is generated by x_2 - x_3\"";
const STAB_OMEGA_ANCHOR: &str = "eq. \"stabilisers in PGL(2)\": \"{1} if rk(phi) >= 2\"";
const STAB_SIGMA_ANCHOR: &str = "eq. \"stabilisers in C*\": \"if e_12 = e_21 = 0\"";
const QUADRIC_ANCHOR: &str = "Prop. (normal cone fibers): \"affine cone over a smooth quadric in P^{4n-5}\"";
const FIXED_ANCHOR: &str = "\"the blow-up of I along the fixed locus I^{mu_2}\"";
const EULER_ANCHOR: &str = "\"J|_{P(T_chi)} = Omega^1_kappa\"";

/// Every built-in scenario, in listing order.
pub fn all() -> Vec<ScenarioSpec> {
    vec![
        jz_intersection_table(),
        jz_canonical_class(),
        picard_matrices(),
        normal_bundle_transport(),
        mori_chain_jz(),
        mori_chain_ez(),
        pushforward_iz1z2(),
        extremal_sigma_ray(),
        ez_kernel_x2_x3(),
        local_model_stabilizers(),
        normal_cone_quadric(),
        incidence_fixed_locus(),
        contraction_numerics(),
        euler_convention(),
    ]
}

/// `J_Z`, `Ĵ_Z` and the exceptional models, with the dimension guards.
fn jhat_base(b: &mut B) {
    jz_tower(b);
    gr2_tower(b);
    jhat(b);
    jhat_guards(b);
}

/// Everything the chain scenarios refer to.
fn full_tower(b: &mut B) {
    jhat_base(b);
    canonical(b);
    chi_tower(b);
    picard(b);
    chains(b);
}

fn jz_intersection_table() -> ScenarioSpec {
    let mut b = B::new(
        "jz-intersection-table",
        "Intersection numbers of the curves e1_hat, e2_hat, sigma_hat, gamma_hat with x1..x4 on Jhat_Z",
        NPolicy::Symbolic,
    );
    jhat_base(&mut b);
    let expected: [(&str, [i64; 4]); 4] = [
        ("e1_hat", [0, 1, 0, 1]),
        ("e2_hat", [0, 0, 1, 1]),
        ("sigma_hat", [1, -1, -1, -1]),
        ("gamma_hat", [0, 0, 0, -1]),
    ];
    for (curve, row) in expected {
        for (g, v) in JHAT_GENERATORS.iter().zip(row) {
            b.expect(
                &format!("{curve} . {g}"),
                Probe::Pairing { curve: s(curve), class: gen("Jhat_Z", g) },
                Value::int(v),
                Paper,
                TABLE_ANCHOR,
            );
        }
    }
    b.table(table_display()).cone(ConeDisplay::Curves(strs(&BASIS_CURVES))).build()
}

fn jz_canonical_class() -> ScenarioSpec {
    let mut b = B::new(
        "jz-canonical-class",
        "Canonical class of the ambient blow-up restricted to Jhat_Z and its pairings with the four curves",
        NPolicy::Symbolic,
    );
    jhat_base(&mut b);
    canonical(&mut b);
    b.expect(
        "K_JZ",
        Probe::Class(cref("K_JZ")),
        Value::Vector(vec![lin(0, -2), lin(3, -2), lin(3, -2)]),
        Derived,
        "adjunction on the divisor J_Z of class x2 + x3 in the two-fold projective bundle",
    )
    .expect(
        "K_I restricted to J_Z",
        Probe::Class(cref("K_I_on_JZ")),
        Value::Vector(vec![lin(1, -2), lin(3, -2), lin(3, -2)]),
        Derived,
        "K_I|J_Z = K_JZ - c1(N_{J_Z/J}) - c1(N_{J/I})|, with c1(N_{J/I})| = -x1 and N_{J_Z/J} trivial",
    )
    .expect(
        "K_Ihat restricted to Jhat_Z",
        Probe::Class(cref("K_Ihat_on_Jhat")),
        Value::Vector(vec![lin(1, -2), lin(3, -2), lin(3, -2), lin(-4, 2)]),
        Paper,
        CANONICAL_ANCHOR,
    )
    .expect(
        "K pairings",
        Probe::KPairings { canonical: cref("K_Ihat_on_Jhat"), curves: strs(&BASIS_CURVES) },
        Value::Vector(vec![p(-1), p(-1), p(-1), lin(4, -2)]),
        Paper,
        CANONICAL_ANCHOR,
    )
    .expect(
        "K negative on the four curves",
        Probe::KNegative { canonical: cref("K_Ihat_on_Jhat"), curves: strs(&BASIS_CURVES) },
        Value::Bool(true),
        Paper,
        "Prop. (K-negative): the four rays are K-negative",
    )
    .build()
}

fn picard_base(b: &mut B) {
    jhat_base(b);
    chi_tower(b);
    picard(b);
}

const PSI_MATRIX: [&[i64]; 4] = [&[0, 0, 0, 1], &[1, 1, 1, -3], &[0, 1, 0, -1], &[0, 0, 1, -1]];
const XI_MATRIX: [&[i64]; 4] = [&[1, -1, -1, 1], &[0, 2, 2, -3], &[0, 1, 0, -1], &[0, 0, 1, -1]];
const XI_PRINTED_INVERSE: [&[i64]; 4] = [&[1, 1, -1, -1], &[0, 1, -1, -2], &[0, 1, -2, -1], &[0, 1, -2, -2]];

fn picard_matrices() -> ScenarioSpec {
    let mut b = B::new(
        "picard-matrices",
        "Matrices of the Picard comparison maps Psi-hat^* and Xi^* in the declared bases, and the printed inverse",
        NPolicy::Symbolic,
    );
    picard_base(&mut b);
    b.expect(
        "Psi-hat^* matrix",
        Probe::MapMatrix { map: s("PsiHat"), source_basis: Some(s("B1")), target_basis: Some(s("B2")) },
        Value::int_matrix(&PSI_MATRIX),
        Paper,
        PSI_ANCHOR,
    )
    .expect(
        "Xi^* matrix",
        Probe::MapMatrix { map: s("Xi"), source_basis: Some(s("B3")), target_basis: Some(s("B2")) },
        Value::int_matrix(&XI_MATRIX),
        Paper,
        XI_ANCHOR,
    )
    .expect(
        "Xi^* times printed inverse",
        Probe::ProductIsIdentity { a: imat(&XI_MATRIX), b: imat(&XI_PRINTED_INVERSE) },
        Value::Bool(true),
        Paper,
        XI_ANCHOR,
    )
    .expect(
        "inverse of Xi^* computed",
        Probe::MapMatrix { map: s("Xi_inv"), source_basis: Some(s("B2")), target_basis: Some(s("B3")) },
        Value::int_matrix(&XI_PRINTED_INVERSE),
        Derived,
        "exact inversion of the Xi^* matrix",
    )
    .expect(
        "inverse of the printed Xi^*",
        Probe::MatrixInverse(imat(&XI_MATRIX)),
        Value::int_matrix(&XI_PRINTED_INVERSE),
        Paper,
        XI_ANCHOR,
    )
    .expect("Psi-hat^* invertible", Probe::MapInvertible(s("PsiHat")), Value::Bool(true), Paper, PSI_ANCHOR)
    .expect("Xi^* invertible", Probe::MapInvertible(s("Xi")), Value::Bool(true), Paper, XI_ANCHOR)
    .expect(
        "g pulled back by the inverse of Psi-hat^*",
        Probe::Class(pullback("PsiHat_inv", gen("P2", "g"))),
        Value::ints(&[1, 1, 1, -1]),
        Derived,
        "first row of the inverse of the Psi-hat^* matrix",
    )
    .build()
}

fn normal_transport() -> TransportDef {
    TransportDef {
        class: scale(-1, gen("Jhat_Z", "x1")),
        via: vec![
            TransportStepDef { map: s("PsiHat"), inverted: false },
            TransportStepDef { map: s("Xi"), inverted: true },
        ],
        basis: s("B3"),
        drop: strs(&["O(-D)"]),
    }
}

fn normal_bundle_transport() -> ScenarioSpec {
    let mut b = B::new(
        "normal-bundle-transport",
        "The restricted normal bundle -x1 transported through Psi-hat^* and the inverse of Xi^*",
        NPolicy::Symbolic,
    );
    picard_base(&mut b);
    let on_p2 = pullback("PsiHat", scale(-1, gen("Jhat_Z", "x1")));
    b.expect(
        "transported class",
        Probe::Transport(normal_transport()),
        Value::ints(&[-1, -1, -1]),
        Paper,
        TRANSPORT_ANCHOR,
    )
    .expect(
        "-x1 pulled back by Psi-hat^*",
        Probe::Class(on_p2.clone()),
        Value::ints(&[0, -1, 0, 0]),
        Derived,
        "first column of the Psi-hat^* matrix, negated",
    )
    .expect(
        "then pulled back by the inverse of Xi^*",
        Probe::ClassInBasis { basis: s("B3"), class: pullback("Xi_inv", on_p2) },
        Value::ints(&[-1, -1, -1, -1]),
        Derived,
        "second column of the printed inverse, negated",
    )
    .expect(
        "read back on the ambient",
        Probe::Class(ClassExpr::Transported { transport: Box::new(normal_transport()), onto: s("S") }),
        Value::ints(&[-1, -1, -1]),
        Derived,
        "-g - f10 - f01 on P(B^dual) x P(B^dual)",
    )
    .build()
}

fn mori_chain_jz() -> ScenarioSpec {
    let mut b = B::new(
        "mori-chain-jz",
        "Propagation of the cone of curves from P(T_Z) through P(F) and J_Z to Jhat_Z",
        NPolicy::Symbolic,
    );
    full_tower(&mut b);
    b.expect(
        "cone of Jhat_Z",
        Probe::MoriChain(s("jz")),
        Value::names(&BASIS_CURVES),
        Paper,
        CHAIN_ANCHOR,
    )
    .expect("hypotheses at every step", Probe::MoriHypotheses(s("jz")), Value::Bool(true), Paper, CHAIN_ANCHOR)
    .expect(
        "gamma_hat from the exceptional divisor",
        Probe::CurveVector(s("gamma_from_EJ")),
        Value::ints(&[0, 0, 0, -1]),
        Derived,
        "a P(G')-line pushed into Jhat_Z pairs -1 with the exceptional class",
    )
    .curve("gamma_from_EJ", push("s_line_EJ", "restrict_EJ"))
    .cone(ConeDisplay::Chain(s("jz")))
    .build()
}

fn mori_chain_ez() -> ScenarioSpec {
    let mut b = B::new(
        "mori-chain-ez",
        "Propagation of the cone of curves from P(F) to the exceptional divisor E_Z",
        NPolicy::Symbolic,
    );
    full_tower(&mut b);
    b.expect(
        "cone of E_Z",
        Probe::MoriChain(s("ez")),
        Value::names(&["gamma_E", "sigma_E", "eps_E"]),
        Paper,
        EZ_CHAIN_ANCHOR,
    )
    .expect("hypotheses at every step", Probe::MoriHypotheses(s("ez")), Value::Bool(true), Paper, EZ_CHAIN_ANCHOR)
    .curve("eps_E_in_Jhat", push("eps_E", "restrict_EZ"))
    .curve("sigma_E_in_Jhat", push("sigma_E", "restrict_EZ"))
    .curve("gamma_E_in_Jhat", push("gamma_E", "restrict_EZ"))
    .expect(
        "eps_E pushed into Jhat_Z",
        Probe::CurveVector(s("eps_E_in_Jhat")),
        Value::ints(&[0, 1, 1, 2]),
        Paper,
        "Lemma (1-cycles): the image is R(e1_hat + e2_hat) + R sigma_hat + R gamma_hat",
    )
    .expect(
        "sigma_E pushed into Jhat_Z",
        Probe::CurveVector(s("sigma_E_in_Jhat")),
        Value::ints(&[1, -1, -1, -1]),
        Derived,
        "a P(A)-line of E_Z is a sigma_hat-line",
    )
    .expect(
        "gamma_E pushed into Jhat_Z",
        Probe::CurveVector(s("gamma_E_in_Jhat")),
        Value::ints(&[0, 0, 0, -1]),
        Derived,
        "a P(G)-line of E_Z is a gamma_hat-line",
    )
    .note(
        "scenario file",
        "This scenario is shipped as scenarios/ez-tower.json and reproduces the E_Z tower from a file.",
    )
    .cone(ConeDisplay::Chain(s("ez")))
    .build()
}

fn pushforward_iz1z2() -> ScenarioSpec {
    let mut b = B::new(
        "pushforward-iz1z2",
        "Pushforward of the two rulings of the incidence divisor in P^{2n-3} x P^{2n-3} into Jhat_Z",
        NPolicy::Symbolic,
    );
    jhat_base(&mut b);
    canonical(&mut b);
    b.proj("Pa", trivial("pt", lin(-2, 2)), "h1")
        .proj("Pb", trivial("pt", lin(-2, 2)), "h2")
        .fiber_product("PaPb", "Pa", "Pb", "pt")
        .divisor("IZ12", "PaPb", combo("PaPb", &[("h1", 1), ("h2", 1)]))
        .map(
            "i12",
            images("Jhat_Z", None, "IZ12", vec![coords("IZ12", vec![p(0), p(0)]), gen("IZ12", "h1"), gen("IZ12", "h2"), coords("IZ12", vec![p(0), p(0)])], false),
        )
        .curve("tau1", fiber_line("IZ12", "h1"))
        .curve("tau2", fiber_line("IZ12", "h2"))
        .curve("tau1_pushed", push("tau1", "i12"))
        .curve("tau2_pushed", push("tau2", "i12"))
        .note(
            "the inclusion",
            "The incidence divisor I_{Z1,Z2} meets the center in neither factor; x2 and x3 restrict to the two \
             hyperplane classes, while x1 and the exceptional class restrict trivially.",
        );
    let solve = |tau: &str| Probe::SolvePushforward {
        observed: ObservedDef::Curve { curve: s(tau), map: s("i12") },
        curves: strs(&BASIS_CURVES),
        divisors: jhat_divisors(),
    };
    b.expect("tau1 in terms of the four curves", solve("tau1"), Value::ints(&[1, 0, 0, 1]), Paper, PUSH_ANCHOR)
        .expect("tau2 in terms of the four curves", solve("tau2"), Value::ints(&[0, 1, 0, 1]), Paper, PUSH_ANCHOR)
        .expect(
            "zero pairings solve to zero",
            Probe::SolvePushforward {
                observed: ObservedDef::Literal(vec![p(0); 4]),
                curves: strs(&BASIS_CURVES),
                divisors: jhat_divisors(),
            },
            Value::ints(&[0, 0, 0, 0]),
            Trivial,
            "the four curves are independent",
        )
        .expect(
            "K pairings of the pushed rulings",
            Probe::KPairings { canonical: cref("K_Ihat_on_Jhat"), curves: strs(&["tau1_pushed", "tau2_pushed"]) },
            Value::Vector(vec![lin(3, -2), lin(3, -2)]),
            Derived,
            "(e1_hat + gamma_hat) . K = -1 + (4 - 2n)",
        )
        .expect(
            "pushed rulings K negative",
            Probe::KNegative { canonical: cref("K_Ihat_on_Jhat"), curves: strs(&["tau1_pushed", "tau2_pushed"]) },
            Value::Bool(true),
            Derived,
            "3 - 2n < 0 for n >= 3",
        )
        .build()
}

fn extremal_sigma_ray() -> ScenarioSpec {
    let mut b = B::new(
        "extremal-sigma-ray",
        "Certificate that R+ sigma_hat is an extremal ray of the cone spanned by the four curves",
        NPolicy::Symbolic,
    );
    jhat_base(&mut b);
    let curves = strs(&BASIS_CURVES);
    let face = strs(&["sigma_hat"]);
    b.expect(
        "supporting functional",
        Probe::Extremal { curves: curves.clone(), face: face.clone(), bound: None },
        Value::ints(&[3, 2, 2, -1]),
        Paper,
        "\"3x_1 + 2x_2 + 2x_3 - x_4\" is nef on the cone and vanishes exactly on sigma_hat",
    )
    .expect(
        "values on the generators",
        Probe::ExtremalValues { curves: curves.clone(), face: face.clone(), bound: None },
        Value::ints(&[1, 1, 0, 1]),
        Derived,
        "pairing of 3x1 + 2x2 + 2x3 - x4 with the rows of the table",
    )
    .expect(
        "certificate sound",
        Probe::CertificateSound { curves: curves.clone(), face: face.clone(), bound: None },
        Value::Bool(true),
        Derived,
        "re-verification against every generator",
    )
    .expect(
        "search with coefficient bound 2",
        Probe::Extremal { curves, face, bound: Some(2) },
        Value::Text(s("inconclusive")),
        Derived,
        "every certificate needs a coefficient of absolute value 3",
    )
    .note(
        "scope",
        "Extremality is certified inside the cone spanned by the four listed curves; extremality in the full \
         cone of curves of the ambient blow-up is not machine-checked.",
    )
    .build()
}

fn ez_kernel_x2_x3() -> ScenarioSpec {
    let mut b = B::new(
        "ez-kernel-x2-x3",
        "Kernel of the restriction from Pic(Jhat_Z) to Pic(E_Z) and its annihilator among 1-cycles",
        NPolicy::Symbolic,
    );
    jhat_base(&mut b);
    b.expect(
        "kernel of the restriction",
        Probe::RestrictionKernel(s("restrict_EZ")),
        Value::int_matrix(&[&[0, 1, -1, 0]]),
        Paper,
        KERNEL_ANCHOR,
    )
    .expect(
        "annihilator of the kernel",
        Probe::RestrictionPerp { map: s("restrict_EZ"), curves: strs(&BASIS_CURVES) },
        Value::int_matrix(&[&[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
        Derived,
        "e1_hat + e2_hat, sigma_hat, gamma_hat are orthogonal to x2 - x3",
    )
    .table(TableDisplay::Kernel { map: s("restrict_EZ"), curves: strs(&BASIS_CURVES) })
    .build()
}

fn rv(v: &[i64]) -> Vec<Rat> {
    rats(v)
}

fn local_model_stabilizers() -> ScenarioSpec {
    let mut b = B::new(
        "local-model-stabilizers",
        "Isotropy, stabilizer classes, Yoneda square maps and the PO(2) action on the local models",
        NPolicy::Independent,
    );
    let zero = rv(&[0, 0, 0, 0]);
    let x1 = rv(&[1, 0, 0, 0]);
    let x2 = rv(&[0, 1, 0, 0]);
    let y1 = rv(&[0, 0, 1, 0]);
    let omega = |images: Vec<Vec<Rat>>| Probe::StabilizerOmega { m: 2, images };
    b.expect("empty span isotropic", Probe::IsIsotropic { m: 2, generators: vec![] }, Value::Bool(true), Trivial, "zero subspace")
        .expect(
            "span{x1, x2} isotropic",
            Probe::IsIsotropic { m: 2, generators: vec![x1.clone(), x2.clone()] },
            Value::Bool(true),
            Trivial,
            "Lagrangian coordinate plane",
        )
        .expect(
            "span{x1, y1} not isotropic",
            Probe::IsIsotropic { m: 2, generators: vec![x1.clone(), y1.clone()] },
            Value::Bool(false),
            Trivial,
            "omega(x1, y1) = 1",
        )
        .expect(
            "stabilizer of phi = 0",
            omega(vec![zero.clone(), zero.clone(), zero.clone()]),
            Value::Text(s("FULL_SO_W")),
            Paper,
            "\"SO(W) if phi = 0\"",
        )
        .expect(
            "stabilizer with kernel span{w2, w3}",
            omega(vec![x1.clone(), zero.clone(), zero.clone()]),
            Value::Text(s("ADDITIVE")),
            Derived,
            "ker^perp = span{w3} with kappa(w3, w3) = 0",
        )
        .expect(
            "stabilizer with kernel span{w1, w3}",
            omega(vec![zero.clone(), x1.clone(), zero.clone()]),
            Value::Text(s("MULTIPLICATIVE")),
            Derived,
            "ker^perp = span{w2} with kappa(w2, w2) = 1",
        )
        .expect(
            "stabilizer of a rank-2 phi",
            omega(vec![x1.clone(), x2.clone(), zero.clone()]),
            Value::Text(s("TRIVIAL")),
            Paper,
            STAB_OMEGA_ANCHOR,
        )
        .expect(
            "Yoneda square of phi = (x1, y1, 0)",
            Probe::YonedaOmega { m: 2, images: vec![x1.clone(), y1.clone(), zero.clone()] },
            Value::ints(&[1, 0, 0]),
            Derived,
            "omega(phi w_i, phi w_j) for i < j",
        )
        .expect(
            "Yoneda square of an isotropic phi",
            Probe::YonedaOmega { m: 2, images: vec![x1.clone(), x2.clone(), zero.clone()] },
            Value::ints(&[0, 0, 0]),
            Trivial,
            "definition of Hom^omega",
        )
        .expect(
            "stabilizer of e12 = e21 = 0",
            Probe::StabilizerSigma { e12: rv(&[0, 0]), e21: rv(&[0, 0]) },
            Value::Text(s("MULTIPLICATIVE")),
            Paper,
            STAB_SIGMA_ANCHOR,
        )
        .expect(
            "stabilizer of e12 = 0, e21 != 0",
            Probe::StabilizerSigma { e12: rv(&[0, 0]), e21: rv(&[0, 1]) },
            Value::Text(s("TRIVIAL")),
            Paper,
            "eq. \"stabilisers in C*\": \"{1} otherwise\"",
        )
        .expect(
            "stabilizer of a pair with both parts nonzero",
            Probe::StabilizerSigma { e12: rv(&[1, 0]), e21: rv(&[0, 1]) },
            Value::Text(s("TRIVIAL")),
            Paper,
            STAB_SIGMA_ANCHOR,
        )
        .expect(
            "Yoneda square of e12 = 0",
            Probe::YonedaSigma { e12: rv(&[0, 0]), e21: rv(&[1, 0]) },
            Value::ints(&[0, 0]),
            Trivial,
            "bilinearity",
        )
        .expect(
            "Yoneda square of an orthogonal pair",
            Probe::YonedaSigma { e12: rv(&[1, 0]), e21: rv(&[0, 1]) },
            Value::ints(&[0, 0]),
            Derived,
            "<(1,0), (0,1)> = 0",
        )
        .expect(
            "Yoneda square of ((1,0), (1,0))",
            Probe::YonedaSigma { e12: rv(&[1, 0]), e21: rv(&[1, 0]) },
            Value::ints(&[-1, 1]),
            Derived,
            "<e12, e21> = 1 and Tr o cup is anticommutative",
        )
        .expect(
            "scaling by 2 preserves the pairing",
            Probe::Po2 { element: Po2Def::Scale(Rat::from_int(2)), e12: rv(&[1, 0]), e21: rv(&[0, 1]) },
            Value::Bool(true),
            Derived,
            "\"(lambda e_12, lambda^{-1} e_21\"",
        )
        .expect(
            "swap flips the sign of the pairing",
            Probe::Po2 { element: Po2Def::Swap, e12: rv(&[1, 0]), e21: rv(&[1, 0]) },
            Value::Bool(true),
            Derived,
            "\"Tr o cup is anticommutative\"",
        )
        .expect(
            "single pairing quadric regular",
            Probe::RegularSequence { family: QuadricFamily::Pairing, dim: 4, samples: 8, seed: 7 },
            Value::Bool(true),
            Trivial,
            "a nonzero quadric cuts codimension 1",
        )
        .expect(
            "components of phi^* omega regular",
            Probe::RegularSequence { family: QuadricFamily::PullbackOmega, dim: 3, samples: 8, seed: 7 },
            Value::Bool(true),
            Derived,
            "Jacobian rank 3 at a random rational point of Hom(W, Q^6)",
        )
        .expect(
            "duplicated quadric not regular",
            Probe::RegularSequence { family: QuadricFamily::DuplicatedPairing, dim: 4, samples: 8, seed: 7 },
            Value::Bool(false),
            Trivial,
            "dependent system",
        )
        .build()
}

fn normal_cone_quadric() -> ScenarioSpec {
    let mut b = B::new(
        "normal-cone-quadric",
        "The pairing quadric on Ext^1(I_Z1, I_Z2) + Ext^1(I_Z2, I_Z1) has full rank 4n - 4",
        NPolicy::Numeric,
    );
    b.expect("rank", Probe::QuadricRank, Value::Poly(lin(-4, 4)), Derived, QUADRIC_ANCHOR)
        .expect("variables", Probe::QuadricVariables, Value::Poly(lin(-4, 4)), Trivial, "dim Ext^1 = 2n - 2 for each factor")
        .expect("smooth projectivization", Probe::QuadricSmooth, Value::Bool(true), Paper, QUADRIC_ANCHOR)
        .expect(
            "rank-one pairing rejected",
            Probe::QuadricRejectsDegenerate,
            Value::Bool(true),
            Trivial,
            "a degenerate pairing is not a valid model",
        )
        .build()
}

fn incidence_fixed_locus() -> ScenarioSpec {
    let mut b = B::new(
        "incidence-fixed-locus",
        "Fixed points of the swap on the incidence locus of P^{m-1} x P^{m-1} over F_3",
        NPolicy::Independent,
    );
    for (m, counts) in [(2usize, [4i64, 4, 4, 4]), (4, [40, 520, 40, 40])] {
        b.expect(
            &format!("m = {m}: projective, incidence, fixed, diagonal points"),
            Probe::IncidenceCounts { m, p: 3 },
            Value::ints(&counts),
            Derived,
            "brute enumeration over F_3",
        )
        .expect(
            &format!("m = {m}: fixed locus is the diagonal"),
            Probe::FixedEqualsDiagonal { m, p: 3 },
            Value::Bool(true),
            Paper,
            FIXED_ANCHOR,
        )
        .expect(
            &format!("m = {m}: diagonal lies in the incidence"),
            Probe::DiagonalInIncidence { m, p: 3 },
            Value::Bool(true),
            Trivial,
            "omega(v, v) = 0 for an alternating form",
        );
    }
    b.build()
}

fn contraction_numerics() -> ScenarioSpec {
    let mut b = B::new(
        "contraction-numerics",
        "Restriction degrees of O(E-hat) and O(J-bar), cohomology of P^2 x P^2, conormal and graded-piece ranks",
        NPolicy::Symbolic,
    );
    full_tower(&mut b);
    b.proj("Q1", trivial("pt", p(3)), "u1")
        .proj("Q2", trivial("pt", p(3)), "u2")
        .fiber_product("Q", "Q1", "Q2", "pt")
        .class(
            "Jbar_restricted",
            ClassExpr::Transported { transport: Box::new(normal_transport()), onto: s("S") },
        )
        .curve("ruling_10", fiber_line("S", "f10"))
        .curve("ruling_01", fiber_line("S", "f01"))
        .note(
            "conormal bundle",
            "The conormal bundle of a point of the fixed locus splits as O(1,1) + O^d on the P^2 x P^2 fiber, \
             with d = 2n + (6n - 12); its rank is the codimension of the P^2 x P^2 fiber in J-bar, of dimension \
             8n - 7.",
        );
    b.expect(
        "O(E-hat) on a P(A)-line",
        Probe::Pairing { curve: s("sigma_hat"), class: gen("Jhat_Z", "x4") },
        Value::int(-1),
        Paper,
        "Claim: \"O(E-hat)|_{P^1} = O_{P^1}(-1)\"",
    )
    .expect(
        "O(-theta - s) on a P(A)-line of E_Z",
        Probe::Pairing { curve: s("sigma_E"), class: combo("EZ", &[("theta", -1), ("s", -1)]) },
        Value::int(-1),
        Derived,
        "the normal bundle of E_Z restricted to a theta-line",
    );
    for ruling in ["ruling_10", "ruling_01"] {
        b.expect(
            &format!("O(J-bar) on {ruling}"),
            Probe::Pairing { curve: s(ruling), class: cref("Jbar_restricted") },
            Value::int(-1),
            Paper,
            "eq.: \"O_phi(-1,-1) (x) phi^*O_gamma(-1)\"",
        );
    }
    for k in 0..=3i64 {
        let h0 = ((k + 1) * (k + 2) / 2).pow(2);
        for q in 0..=4u32 {
            let (value, prov, anchor) = if q == 0 {
                (h0, Derived, "Kunneth and h^0(P^2, O(k)) = (k+1)(k+2)/2")
            } else {
                (0, Paper, "h^q(P^2 x P^2, O(k,k)) = 0 for q > 0")
            };
            b.expect(&format!("h^{q}(O({k},{k}))"), Probe::CohDim { a: k, b: k, q }, Value::int(value), prov, anchor);
        }
        b.expect(
            &format!("rank of (S^{k} B)^2"),
            Probe::BundleRank(BundleExpr::Tensor(
                Box::new(BundleExpr::SymPower { bundle: Box::new(bref("Bt")), k: k as u32 }),
                Box::new(BundleExpr::SymPower { bundle: Box::new(bref("Bt")), k: k as u32 }),
            )),
            Value::int(h0),
            Paper,
            "\"(S^k B)^{(x)2} (x) O_gamma(k)\"",
        );
    }
    let conormal = BundleExpr::Dsum(
        Box::new(line(combo("Q", &[("u1", 1), ("u2", 1)]))),
        Box::new(trivial("Q", lin(-12, 8))),
    );
    b.expect(
        "conormal rank",
        Probe::BundleRank(conormal.clone()),
        Value::Poly(lin(-11, 8)),
        Paper,
        "eq.: \"I_y/I_y^2 = O(1,1) + O^{(+)d}\"",
    )
    .expect("conormal c1", Probe::BundleC1(conormal), Value::ints(&[1, 1]), Derived, "only the O(1,1) summand contributes")
    .build()
}

fn euler_convention() -> ScenarioSpec {
    let mut b = B::new(
        "euler-convention",
        "Relative cotangent classes from the Euler sequence alone",
        NPolicy::Symbolic,
    );
    jz_tower(&mut b);
    chi_tower(&mut b);
    b.expect("Omega on P(T_chi)", Probe::Class(cref("Omega_PT1")), Value::ints(&[1, -3, -2]), Paper, EULER_ANCHOR)
        .expect(
            "rank of T_chi",
            Probe::BundleRank(bref("T_chi")),
            Value::int(2),
            Trivial,
            "relative tangent of a P^2-bundle",
        )
        .expect(
            "c1 of T_chi",
            Probe::BundleC1(bref("T_chi")),
            Value::ints(&[-1, 3]),
            Derived,
            "Euler sequence: c1 = 3h + c1(B) = 3h - g",
        )
        .expect(
            "canonical class of P^{2n-1}",
            Probe::Class(ClassExpr::Canonical(s("PT_Z"))),
            Value::Vector(vec![lin(0, -2)]),
            Trivial,
            "K of P^{2n-1} is O(-2n)",
        )
        .build()
}
