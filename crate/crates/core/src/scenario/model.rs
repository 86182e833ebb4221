//! The declarative scenario document.
//!
//! Every built-in scenario is a value of [`ScenarioSpec`]; scenario files are
//! its JSON serialization. Named definitions (spaces, bundles, classes,
//! bases, maps, curves, chains) may refer to each other in any order; they
//! are resolved on demand by the interpreter.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Value;
use crate::kernel::{ParamPoly, Rat};

/// How a scenario treats the parameter `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NPolicy {
    /// Runs symbolically in `n` or at any integer `n ≥ 3`.
    Symbolic,
    /// Needs a concrete integer `n ≥ 3`.
    Numeric,
    /// Does not depend on `n`.
    Independent,
}

impl NPolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            NPolicy::Symbolic => "symbolic",
            NPolicy::Numeric => "numeric",
            NPolicy::Independent => "independent",
        }
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Stated in the source text being verified.
    #[serde(rename = "PAPER")]
    Paper,
    /// A standard fact or a contract of the tool.
    #[serde(rename = "TRIVIAL")]
    Trivial,
    /// Computed independently by hand.
    #[serde(rename = "DERIVED")]
    Derived,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Paper => "PAPER",
            Provenance::Trivial => "TRIVIAL",
            Provenance::Derived => "DERIVED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub name: String,
    pub description: String,
    pub n_policy: NPolicy,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<Note>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub spaces: Vec<SpaceDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bundles: Vec<Named<BundleExpr>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<Named<ClassExpr>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bases: Vec<BasisDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<Named<MapRule>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub curves: Vec<Named<CurveExpr>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chains: Vec<Named<ChainDef>>,
    /// Sanity checks (mostly dimension bookkeeping) run before `expect`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub guards: Vec<Expectation>,
    pub expect: Vec<Expectation>,
    #[serde(default, skip_serializing_if = "Display::is_empty")]
    pub display: Display,
}

/// A documentation entry, e.g. the derivation behind a declared vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Note {
    pub title: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Named<T> {
    pub name: String,
    #[serde(flatten)]
    pub def: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDef {
    pub name: String,
    pub kind: SpaceKindDef,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceKindDef {
    FormalBase {
        generators: Vec<String>,
        #[serde(default)]
        canonical: Option<Vec<ParamPoly>>,
        dim: ParamPoly,
    },
    ProjBundle {
        bundle: BundleExpr,
        taut: String,
    },
    BlowUp {
        ambient: String,
        codim: ParamPoly,
        exc: String,
        /// Class of `O(exceptional)` on the space modelling the exceptional
        /// divisor, when known.
        #[serde(default)]
        exc_restriction: Option<ClassExpr>,
    },
    FiberProduct {
        left: String,
        right: String,
        over: String,
    },
    DivisorIn {
        ambient: String,
        class: ClassExpr,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BundleExpr {
    Ref(String),
    Trivial { space: String, rank: ParamPoly },
    Line(Box<ClassExpr>),
    Formal { rank: ParamPoly, c1: Box<ClassExpr> },
    Dual(Box<BundleExpr>),
    Quotient { total: Box<BundleExpr>, sub: Box<BundleExpr> },
    Kernel { total: Box<BundleExpr>, target: Box<BundleExpr> },
    Extension { sub: Box<BundleExpr>, quot: Box<BundleExpr> },
    Dsum(Box<BundleExpr>, Box<BundleExpr>),
    TensorLine { bundle: Box<BundleExpr>, line: Box<BundleExpr> },
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    SymPower { bundle: Box<BundleExpr>, k: u32 },
    WedgeTop(Box<BundleExpr>),
    Lift { bundle: Box<BundleExpr>, to: String },
    /// Relative tangent bundle of a projective bundle.
    RelativeTangent(String),
    /// Tautological sub line `O(−1)` of a projective bundle.
    TautologicalSub(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ClassExpr {
    Ref(String),
    Coords { space: String, values: Vec<ParamPoly> },
    /// `Σ c·g` over named generators.
    Combo { space: String, terms: BTreeMap<String, ParamPoly> },
    C1(Box<BundleExpr>),
    Canonical(String),
    Lift { class: Box<ClassExpr>, to: String },
    Sum(Vec<ClassExpr>),
    Scale { by: ParamPoly, class: Box<ClassExpr> },
    Pullback { map: String, class: Box<ClassExpr> },
    /// `K_X − Σ c₁(Nᵢ)`: an ambient canonical class restricted to `X`.
    AdjointRestriction { canonical: Box<ClassExpr>, normals: Vec<ClassExpr> },
    /// Restriction of a blown-up ambient canonical class to the strict
    /// transform `space` of a subvariety, given the restriction before the
    /// blow-up and the codimension of the ambient center.
    BlowupRestriction { space: String, restricted: Box<ClassExpr>, ambient_codim: ParamPoly },
    /// The declared class of `O(exceptional)` on the exceptional model of a
    /// blow-up.
    ExcRestriction(String),
    /// The unique preimage under `map` whose coordinates are symmetric under
    /// exchanging the two factors of the fiber-product source.
    SymmetricPreimage { map: String, class: Box<ClassExpr> },
    /// A class transported through maps, expressed in `basis` with
    /// exceptional coordinates dropped, and read back on `onto` (the ambient
    /// of the blow-up carrying `basis`).
    Transported { transport: Box<TransportDef>, onto: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransportDef {
    pub class: ClassExpr,
    pub via: Vec<TransportStepDef>,
    pub basis: String,
    #[serde(default)]
    pub drop: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransportStepDef {
    pub map: String,
    #[serde(default)]
    pub inverted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDef {
    pub name: String,
    pub space: String,
    pub elements: Vec<BasisElement>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisElement {
    pub label: String,
    pub class: ClassExpr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MapRule {
    /// Pullback along structure morphisms from `from` to its descendant `to`.
    Structure { from: String, to: String },
    /// Restriction from a fiber product to its diagonal.
    Diagonal(String),
    /// Images of the elements of a source basis (the Picard generators of
    /// `source` when `basis` is omitted).
    Images {
        source: String,
        #[serde(default)]
        basis: Option<String>,
        target: String,
        images: Vec<ClassExpr>,
        #[serde(default)]
        identification: bool,
    },
    /// A matrix written against declared bases (column j = image of source
    /// basis element j in target basis coordinates).
    Declared { source_basis: String, target_basis: String, matrix: Vec<Vec<ParamPoly>>, #[serde(default)] identification: bool },
    /// Identity on generator coordinates between spaces of equal Picard rank.
    Identity { source: String, target: String, #[serde(default)] identification: bool },
    /// Apply the maps in the listed order.
    Compose(Vec<String>),
    Inverse(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveExpr {
    LineInProjFiber { space: String, generator: String },
    ExceptionalFiberLine(String),
    LineInExceptionalFiber { space: String, direction: String },
    StrictTransform { space: String, curve: String, #[serde(default = "one")] mult: u32 },
    Declared { space: String, vector: Vec<ParamPoly>, note: String },
    Pushforward { curve: String, map: String },
    /// `Σ c·Γ` over named curves.
    Combo(BTreeMap<String, ParamPoly>),
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDef {
    pub base_space: String,
    pub base_cone: Vec<ConeGenerator>,
    pub steps: Vec<ChainStepDef>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeGenerator {
    pub label: String,
    pub vector: Vec<ParamPoly>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainStepDef {
    pub space: String,
    /// `Γ₁` first.
    pub curves: Vec<String>,
    pub contraction_one: String,
    pub contraction_rest: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub check: String,
    pub probe: Probe,
    pub value: Value,
    pub provenance: Provenance,
    pub anchor: String,
}

/// Labelled divisor for tables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelledClass {
    pub label: String,
    pub class: ClassExpr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ObservedDef {
    /// Pairings of a curve with the images of the source generators of
    /// `map` (i.e. the pushforward of the curve along the morphism).
    Curve { curve: String, map: String },
    Literal(Vec<ParamPoly>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Po2Def {
    Scale(Rat),
    Swap,
}

/// What a check computes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Probe {
    /// Generator coordinates of a class.
    Class(ClassExpr),
    ClassInBasis { basis: String, class: ClassExpr },
    Pairing { curve: String, class: ClassExpr },
    PairingTable { curves: Vec<String>, divisors: Vec<ClassExpr> },
    CurveVector(String),
    /// Matrix of a map, against declared bases when given.
    MapMatrix {
        map: String,
        #[serde(default)]
        source_basis: Option<String>,
        #[serde(default)]
        target_basis: Option<String>,
    },
    MapInvertible(String),
    ProductIsIdentity { a: Vec<Vec<ParamPoly>>, b: Vec<Vec<ParamPoly>> },
    MatrixInverse(Vec<Vec<ParamPoly>>),
    Transport(TransportDef),
    SolvePushforward { observed: ObservedDef, curves: Vec<String>, divisors: Vec<ClassExpr> },
    KPairings { canonical: ClassExpr, curves: Vec<String> },
    KNegative { canonical: ClassExpr, curves: Vec<String> },
    /// Supporting functional of `face` in the cone of `curves`, or the text
    /// `inconclusive`.
    Extremal {
        curves: Vec<String>,
        face: Vec<String>,
        #[serde(default)]
        bound: Option<u32>,
    },
    /// Values of the found functional on all generators.
    ExtremalValues {
        curves: Vec<String>,
        face: Vec<String>,
        #[serde(default)]
        bound: Option<u32>,
    },
    /// The found functional re-verified against every generator.
    CertificateSound {
        curves: Vec<String>,
        face: Vec<String>,
        #[serde(default)]
        bound: Option<u32>,
    },
    /// Labels of the certified cone of the chain's last space.
    MoriChain(String),
    /// All hypotheses of every step hold.
    MoriHypotheses(String),
    /// Row-reduced basis of the kernel of a map.
    RestrictionKernel(String),
    /// Row-reduced basis of the annihilator of the kernel, in coordinates of
    /// the listed curves.
    RestrictionPerp { map: String, curves: Vec<String> },
    Dimension(String),
    CenterCodim(String),
    PicardRank(String),
    BundleRank(BundleExpr),
    BundleC1(BundleExpr),
    CohDim { a: i64, b: i64, q: u32 },
    IsIsotropic { m: usize, generators: Vec<Vec<Rat>> },
    StabilizerOmega { m: usize, images: Vec<Vec<Rat>> },
    StabilizerSigma { e12: Vec<Rat>, e21: Vec<Rat> },
    YonedaOmega { m: usize, images: Vec<Vec<Rat>> },
    /// `(α, β)` for an Ext pair with the identity pairing.
    YonedaSigma { e12: Vec<Rat>, e21: Vec<Rat> },
    Po2 { element: Po2Def, e12: Vec<Rat>, e21: Vec<Rat> },
    /// Rank of the normal-cone quadric at the run's `n`.
    QuadricRank,
    QuadricVariables,
    QuadricSmooth,
    /// True iff a pairing of rank one is rejected as a degenerate model.
    QuadricRejectsDegenerate,
    /// `[projective points, incidence points, fixed points, diagonal points]`.
    IncidenceCounts { m: usize, p: u64 },
    FixedEqualsDiagonal { m: usize, p: u64 },
    DiagonalInIncidence { m: usize, p: u64 },
    /// Expected-codimension certificate for a named quadric family.
    RegularSequence { family: QuadricFamily, dim: usize, samples: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadricFamily {
    /// The three components of `φ*ω` on `Hom(W, ℚ^{2·dim})`.
    PullbackOmega,
    /// The pairing quadric on `ℚ^dim ⊕ ℚ^dim`.
    Pairing,
    /// The pairing quadric listed twice.
    DuplicatedPairing,
}

/// What the `table` and `cone` commands print.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Display {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableDisplay>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeDisplay>,
}

impl Display {
    pub fn is_empty(&self) -> bool {
        self.table.is_none() && self.cone.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TableDisplay {
    Pairing { curves: Vec<String>, divisors: Vec<LabelledClass> },
    Kernel { map: String, curves: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ConeDisplay {
    Chain(String),
    Curves(Vec<String>),
}
