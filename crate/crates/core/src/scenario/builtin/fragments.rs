//! Shared pieces of the built-in scenarios. Each fragment adds a
//! self-contained group of definitions; fragments may refer to each other's
//! names, and every scenario includes the fragments it needs.

use super::dsl::*;
use crate::scenario::model::*;

pub const TABLE_ANCHOR: &str = "Lemma: \"The intersection matrix of\"";
pub const BASIS_CURVES: [&str; 4] = ["e1_hat", "e2_hat", "sigma_hat", "gamma_hat"];
pub const JHAT_GENERATORS: [&str; 4] = ["x1", "x2", "x3", "x4"];

/// The tower `pt ← ℙ(T_Z) ← ℙ(F) ×_{ℙ(T_Z)} ℙ(F) ⊃ J_Z`.
///
/// `T_Z` is the trivial symplectic bundle of rank `2n`, `L = O(−1)` its
/// tautological line, and `F = L^⊥/L` of rank `2n − 2`.
pub fn jz_tower(b: &mut B) {
    b.base("pt", &[], Some(vec![]), p(0))
        .proj("PT_Z", trivial("pt", lin(0, 2)), "x1")
        .bundle("L", BundleExpr::TautologicalSub(s("PT_Z")))
        .bundle("T_Z", trivial("PT_Z", lin(0, 2)))
        .bundle("L_perp", kernel(bref("T_Z"), dual(bref("L"))))
        .bundle("F", quotient(bref("L_perp"), bref("L")))
        .proj("PF1", bref("F"), "x2")
        .proj("PF2", bref("F"), "x3")
        .fiber_product("Y", "PF1", "PF2", "PT_Z")
        .divisor("J_Z", "Y", combo("Y", &[("x2", 1), ("x3", 1)]))
        .note(
            "J_Z",
            "J_Z is the incidence divisor of class O(1,1) inside P(F) x P(F) over P(T_Z); its Picard group is \
             generated by x1 = c1 L^dual and the two relative hyperplane classes x2, x3.",
        );
}

/// The projective bundles over `Gr₂ = IGr(2, 2n)` modelling the exceptional
/// divisors `Ê ∩ Ĵ_Z` and `Ê_Z`.
pub fn gr2_tower(b: &mut B) {
    b.base("Gr2", &["a"], None, lin(-5, 4))
        .bundle("A", BundleExpr::Formal { rank: p(2), c1: Box::new(scale(-1, gen("Gr2", "a"))) })
        .bundle("A_perp", kernel(trivial("Gr2", lin(0, 2)), dual(bref("A"))))
        .bundle("A_quot", quotient(bref("A_perp"), bref("A")))
        .bundle("G_prime", tensor_line(bref("A_quot"), wedge_top(dual(bref("A")))))
        .bundle("G", extension(trivial("Gr2", p(1)), bref("G_prime")))
        .proj("PA", bref("A"), "theta")
        .proj("PG_prime", bref("G_prime"), "s")
        .fiber_product("EJ", "PA", "PG_prime", "Gr2")
        .proj("PG", bref("G"), "s")
        .fiber_product("EZ", "PA", "PG", "Gr2")
        .note(
            "exceptional models",
            "Gr2 carries the tautological rank-2 isotropic subbundle A with c1(A) = -a. The exceptional divisor \
             of the blow-up of J_Z is P(A) x P(G'), G' = (A^perp/A) (x) det A^dual; the exceptional divisor E_Z \
             is P(A) x P(G) with G an extension of G' by O.",
        );
}

/// `Ĵ_Z`, its curves, and the restriction to the exceptional divisor.
pub fn jhat(b: &mut B) {
    b.blow_up("Jhat_Z", "J_Z", lin(-4, 2), "x4", Some(scale(-1, combo("EJ", &[("theta", 1), ("s", 1)]))))
        .map("Lambda1", images("PF1", None, "PA", vec![gen("PA", "theta"), combo("PA", &[("a", 1), ("theta", -1)])], true))
        .map("Lambda2", images("PF2", None, "PA", vec![gen("PA", "theta"), combo("PA", &[("a", 1), ("theta", -1)])], true))
        .map(
            "restrict_EJ",
            images(
                "Jhat_Z",
                None,
                "EJ",
                vec![
                    gen("EJ", "theta"),
                    combo("EJ", &[("a", 1), ("theta", -1)]),
                    combo("EJ", &[("a", 1), ("theta", -1)]),
                    ClassExpr::ExcRestriction(s("Jhat_Z")),
                ],
                false,
            ),
        )
        .map("EZ_to_EJ", MapRule::Identity { source: s("EZ"), target: s("EJ"), identification: true })
        .map("EJ_to_EZ", MapRule::Inverse(s("EZ_to_EJ")))
        .map("restrict_EZ", compose(&["restrict_EJ", "EJ_to_EZ"]))
        .curve("eps1", fiber_line("J_Z", "x2"))
        .curve("eps2", fiber_line("J_Z", "x3"))
        .curve("e1_hat", CurveExpr::StrictTransform { space: s("Jhat_Z"), curve: s("eps1"), mult: 1 })
        .curve("e2_hat", CurveExpr::StrictTransform { space: s("Jhat_Z"), curve: s("eps2"), mult: 1 })
        .curve("s_line_EJ", fiber_line("EJ", "s"))
        .curve("theta_line_EJ", fiber_line("EJ", "theta"))
        .curve("gamma_hat", CurveExpr::LineInExceptionalFiber { space: s("Jhat_Z"), direction: s("s_line_EJ") })
        .curve("sigma_hat", push("theta_line_EJ", "restrict_EJ"))
        .note(
            "curves of Jhat_Z",
            "e1_hat, e2_hat are strict transforms of lines in the fibers of P(F) meeting the center once; \
             gamma_hat is a line in a P(G')-fiber of the exceptional divisor, whose normal bundle restricts to \
             O(-theta - s); sigma_hat is a line in a P(A)-fiber of the exceptional divisor, pushed forward.",
        );
}

/// Canonical classes of `J_Z` and the restriction of `K_Î` to `Ĵ_Z`.
pub fn canonical(b: &mut B) {
    b.class("K_JZ", ClassExpr::Canonical(s("J_Z")))
        .class(
            "K_I_on_JZ",
            ClassExpr::AdjointRestriction {
                canonical: Box::new(cref("K_JZ")),
                normals: vec![coords("J_Z", vec![p(0), p(0), p(0)]), scale(-1, gen("J_Z", "x1"))],
            },
        )
        .class(
            "K_Ihat_on_Jhat",
            ClassExpr::BlowupRestriction {
                space: s("Jhat_Z"),
                restricted: Box::new(cref("K_I_on_JZ")),
                ambient_codim: lin(-3, 2),
            },
        )
        .note(
            "normal bundles",
            "J_Z sits in the incidence divisor over J, whose normal bundle restricts trivially, and that sits in \
             the ambient with normal bundle L; so K_I|J_Z = K_JZ + x1. The ambient center has codimension 2n-3 \
             and meets J_Z in the center of Jhat_Z.",
        );
}

/// The symplectic Grassmannian `Gr₃` with `ℙ(ℬ)` and `ℙ(T_χ) ×_{ℙ(ℬ)} ℙ(T_χ)`.
pub fn chi_tower(b: &mut B) {
    b.base("Gr3", &["g"], None, lin(-12, 6))
        .bundle("Bt", BundleExpr::Formal { rank: p(3), c1: Box::new(scale(-1, gen("Gr3", "g"))) })
        .proj("PB", bref("Bt"), "h")
        .bundle("T_chi", BundleExpr::RelativeTangent(s("PB")))
        .proj("PT1", bref("T_chi"), "k10")
        .proj("PT2", bref("T_chi"), "k01")
        .fiber_product("P2", "PT1", "PT2", "PB")
        .class("Omega_PT1", scale(-1, c1(BundleExpr::RelativeTangent(s("PT1")))))
        .note(
            "Gr3 tower",
            "Gr3 carries the tautological rank-3 isotropic subbundle B with c1(B) = -g; P(B) has relative \
             hyperplane class h and relative tangent bundle T_chi; P(T_chi) has relative hyperplane class xi.",
        );
}

/// The Picard comparison maps `Ψ̂*` and `Ξ*` with their declared bases.
/// Needs [`jz_tower`], [`gr2_tower`], [`jhat`] and [`chi_tower`].
pub fn picard(b: &mut B) {
    b.map("diag_P2", MapRule::Diagonal(s("P2")))
        .class(
            "O_minus_E_image",
            ClassExpr::SymmetricPreimage { map: s("diag_P2"), class: Box::new(cref("Omega_PT1")) },
        )
        .basis(
            "B1",
            "Jhat_Z",
            vec![
                ("Ldual", gen("Jhat_Z", "x1")),
                ("O_rho(1,0)", gen("Jhat_Z", "x2")),
                ("O_rho(0,1)", gen("Jhat_Z", "x3")),
                ("O(-E)", scale(-1, gen("Jhat_Z", "x4"))),
            ],
        )
        .basis(
            "B2",
            "P2",
            vec![
                ("g", gen("P2", "g")),
                ("h", gen("P2", "h")),
                ("O_chi(1,0)", gen("P2", "k10")),
                ("O_chi(0,1)", gen("P2", "k01")),
            ],
        )
        .map(
            "PsiHat",
            images(
                "Jhat_Z",
                Some("B1"),
                "P2",
                vec![
                    gen("P2", "h"),
                    sum(vec![gen("P2", "k10"), gen("P2", "h")]),
                    sum(vec![gen("P2", "k01"), gen("P2", "h")]),
                    cref("O_minus_E_image"),
                ],
                true,
            ),
        )
        .map("PsiHat_inv", MapRule::Inverse(s("PsiHat")))
        .bundle("Bt_dual", dual(bref("Bt")))
        .proj("PBd1", bref("Bt_dual"), "f10")
        .proj("PBd2", bref("Bt_dual"), "f01")
        .fiber_product("S", "PBd1", "PBd2", "Gr3")
        .blow_up("Shat", "S", p(2), "d", None)
        .basis(
            "B3",
            "Shat",
            vec![
                ("g", gen("Shat", "g")),
                ("O_phi(1,0)", gen("Shat", "f10")),
                ("O_phi(0,1)", gen("Shat", "f01")),
                ("O(-D)", scale(-1, gen("Shat", "d"))),
            ],
        )
        .class("f10_image", lift(c1(twisted_quotient("PT1")), "P2"))
        .class("f01_image", lift(c1(twisted_quotient("PT2")), "P2"))
        .map(
            "Xi",
            images(
                "Shat",
                Some("B3"),
                "P2",
                vec![gen("P2", "g"), cref("f10_image"), cref("f01_image"), cref("O_minus_E_image")],
                true,
            ),
        )
        .map("Xi_inv", MapRule::Inverse(s("Xi")))
        .note(
            "Psi-hat images",
            "L^dual pulls back to O_chi(0,0) twisted by h; O_rho(1,0) and O_rho(0,1) pull back to the relative \
             hyperplane classes twisted by h; O(-E) pulls back to the class whose restriction to the diagonal \
             is the cotangent class Omega = g - 3h - 2 xi, taken symmetric in the two factors.",
        )
        .note(
            "Xi images",
            "O_phi(1,0) pulls back to c1 of (T_chi lifted to P(T_chi) / O(-1)) (x) O_chi(-1) = -g + 2h + k10, \
             and O(-D) to the same class as O(-E).",
        );
}

/// `(π*T_χ / O(−1)) ⊗ O_χ(−1)` on one factor.
fn twisted_quotient(factor: &str) -> BundleExpr {
    tensor_line(
        quotient(blift(bref("T_chi"), factor), BundleExpr::TautologicalSub(s(factor))),
        line(scale(-1, lift(gen("PB", "h"), factor))),
    )
}

/// The Mori-cone chains ending at `Ĵ_Z` and at `Ê_Z`.
pub fn chains(b: &mut B) {
    b.map("PT_Z_to_PF1", structure("PT_Z", "PF1"))
        .map("Gr2_to_PA", structure("Gr2", "PA"))
        .map("Lambda1_inv", MapRule::Inverse(s("Lambda1")))
        .map("Lambda2_inv", MapRule::Inverse(s("Lambda2")))
        .map("Gr2_to_PF1", compose(&["Gr2_to_PA", "Lambda1_inv"]))
        .curve("e_F", fiber_line("PF1", "x2"))
        .curve("theta_line_PA", fiber_line("PA", "theta"))
        .curve("s_F", push("theta_line_PA", "Lambda1"))
        .map("PF1_to_JZ", structure("PF1", "J_Z"))
        .map("PF2_to_JZ", structure("PF2", "J_Z"))
        .map("Gr2_to_JZ", compose(&["Gr2_to_PA", "Lambda2_inv", "PF2_to_JZ"]))
        .map("JZ_to_Jhat", structure("J_Z", "Jhat_Z"))
        .curve("sigma_J", push("sigma_hat", "JZ_to_Jhat"))
        .map("Gr3_to_P2", structure("Gr3", "P2"))
        .map("Gr3_to_Jhat", compose(&["Gr3_to_P2", "PsiHat_inv"]))
        .curve("gamma_E", fiber_line("EZ", "s"))
        .curve("sigma_E", fiber_line("EZ", "theta"))
        .curve(
            "eps_E",
            CurveExpr::Declared {
                space: s("EZ"),
                vector: vec![p(1), p(0), p(-2)],
                note: s("section of P(G) over a theta-line given by the trivial summand of G"),
            },
        )
        .map("PA_to_EZ", structure("PA", "EZ"))
        .map("PF1_to_EZ", compose(&["Lambda1", "PA_to_EZ"]))
        .base("D_tilde", &["g"], None, lin(-9, 6))
        .class(
            "D_tilde_pullback",
            c1(dual(wedge_top(extension(
                blift(bref("A"), "EZ"),
                tensor_line(
                    blift(BundleExpr::TautologicalSub(s("PG")), "EZ"),
                    wedge_top(blift(bref("A"), "EZ")),
                ),
            )))),
        )
        .map("D_tilde_to_EZ", images("D_tilde", None, "EZ", vec![cref("D_tilde_pullback")], false))
        .chain(
            "jz",
            ChainDef {
                base_space: s("PT_Z"),
                base_cone: vec![ConeGenerator { label: s("line"), vector: vec![p(1)] }],
                steps: vec![
                    pf1_step(),
                    ChainStepDef {
                        space: s("J_Z"),
                        curves: strs(&["eps2", "eps1", "sigma_J"]),
                        contraction_one: s("PF1_to_JZ"),
                        contraction_rest: s("Gr2_to_JZ"),
                    },
                    ChainStepDef {
                        space: s("Jhat_Z"),
                        curves: strs(&["gamma_hat", "e1_hat", "e2_hat", "sigma_hat"]),
                        contraction_one: s("JZ_to_Jhat"),
                        contraction_rest: s("Gr3_to_Jhat"),
                    },
                ],
            },
        )
        .chain(
            "ez",
            ChainDef {
                base_space: s("PT_Z"),
                base_cone: vec![ConeGenerator { label: s("line"), vector: vec![p(1)] }],
                steps: vec![
                    pf1_step(),
                    ChainStepDef {
                        space: s("EZ"),
                        curves: strs(&["gamma_E", "sigma_E", "eps_E"]),
                        contraction_one: s("PF1_to_EZ"),
                        contraction_rest: s("D_tilde_to_EZ"),
                    },
                ],
            },
        )
        .note(
            "eps_E",
            "eps_E is the section of P(G) -> P(A) over a line in a P(A)-fiber cut out by the trivial summand O \
             of G; along it O_PG(1) has degree -2 (the splitting type of G' over the line) and a has degree 1.",
        )
        .note(
            "D_tilde",
            "The contraction of E_Z onto D_tilde pulls back the generator of D_tilde to the first Chern class \
             of det(A + O_PG(-1) (x) det A)^dual = 2a + s. The dimension declared for D_tilde is not used by \
             any check.",
        );
}

fn pf1_step() -> ChainStepDef {
    ChainStepDef {
        space: s("PF1"),
        curves: strs(&["e_F", "s_F"]),
        contraction_one: s("PT_Z_to_PF1"),
        contraction_rest: s("Gr2_to_PF1"),
    }
}

/// Dimension bookkeeping run before any class computation on `Ĵ_Z`.
pub fn jhat_guards(b: &mut B) {
    b.guard(
        "dim J_Z",
        Probe::Dimension(s("J_Z")),
        crate::scenario::Value::Poly(lin(-8, 6)),
        Provenance::Derived,
        "J_Z: two P^{2n-3}-bundles over P^{2n-1}, cut by one divisor",
    )
    .guard(
        "codim of the center of Jhat_Z",
        Probe::CenterCodim(s("Jhat_Z")),
        crate::scenario::Value::Poly(lin(-4, 2)),
        Provenance::Paper,
        "blow-up center of Jhat_Z of codimension 2n-4",
    )
    .guard(
        "dim of the center P(A)",
        Probe::Dimension(s("PA")),
        crate::scenario::Value::Poly(lin(-4, 4)),
        Provenance::Derived,
        "the center of Jhat_Z is P(A) over Gr2, of dimension (6n-8) - (2n-4)",
    )
    .guard(
        "dim of the exceptional divisor",
        Probe::Dimension(s("EJ")),
        crate::scenario::Value::Poly(lin(-9, 6)),
        Provenance::Derived,
        "exceptional divisor of Jhat_Z has dimension dim Jhat_Z - 1",
    );
}

pub fn jhat_divisors() -> Vec<ClassExpr> {
    JHAT_GENERATORS.iter().map(|g| gen("Jhat_Z", g)).collect()
}

pub fn table_display() -> TableDisplay {
    TableDisplay::Pairing {
        curves: strs(&BASIS_CURVES),
        divisors: JHAT_GENERATORS
            .iter()
            .map(|g| LabelledClass { label: s(g), class: gen("Jhat_Z", g) })
            .collect(),
    }
}
