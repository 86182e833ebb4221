//! Shorthand for writing scenario documents in Rust.

use std::collections::BTreeMap;

use crate::kernel::{ParamPoly, Rat};
use crate::scenario::model::*;
use crate::scenario::Value;

pub fn p(c: i64) -> ParamPoly {
    ParamPoly::int(c)
}

/// `c0 + c1·n`.
pub fn lin(c0: i64, c1: i64) -> ParamPoly {
    ParamPoly::lin(c0, c1)
}

pub fn rats(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_int(x)).collect()
}

pub fn s(x: &str) -> String {
    x.to_string()
}

pub fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

// Classes.

pub fn cref(name: &str) -> ClassExpr {
    ClassExpr::Ref(s(name))
}

pub fn combo(space: &str, terms: &[(&str, i64)]) -> ClassExpr {
    ClassExpr::Combo { space: s(space), terms: terms.iter().map(|(g, c)| (s(g), p(*c))).collect::<BTreeMap<_, _>>() }
}

pub fn gen(space: &str, g: &str) -> ClassExpr {
    combo(space, &[(g, 1)])
}

pub fn coords(space: &str, values: Vec<ParamPoly>) -> ClassExpr {
    ClassExpr::Coords { space: s(space), values }
}

pub fn c1(b: BundleExpr) -> ClassExpr {
    ClassExpr::C1(Box::new(b))
}

pub fn lift(class: ClassExpr, to: &str) -> ClassExpr {
    ClassExpr::Lift { class: Box::new(class), to: s(to) }
}

pub fn scale(by: i64, class: ClassExpr) -> ClassExpr {
    ClassExpr::Scale { by: p(by), class: Box::new(class) }
}

pub fn sum(terms: Vec<ClassExpr>) -> ClassExpr {
    ClassExpr::Sum(terms)
}

pub fn pullback(map: &str, class: ClassExpr) -> ClassExpr {
    ClassExpr::Pullback { map: s(map), class: Box::new(class) }
}

// Bundles.

pub fn bref(name: &str) -> BundleExpr {
    BundleExpr::Ref(s(name))
}

pub fn trivial(space: &str, rank: ParamPoly) -> BundleExpr {
    BundleExpr::Trivial { space: s(space), rank }
}

pub fn line(c: ClassExpr) -> BundleExpr {
    BundleExpr::Line(Box::new(c))
}

pub fn dual(b: BundleExpr) -> BundleExpr {
    BundleExpr::Dual(Box::new(b))
}

pub fn blift(b: BundleExpr, to: &str) -> BundleExpr {
    BundleExpr::Lift { bundle: Box::new(b), to: s(to) }
}

pub fn wedge_top(b: BundleExpr) -> BundleExpr {
    BundleExpr::WedgeTop(Box::new(b))
}

pub fn tensor_line(b: BundleExpr, l: BundleExpr) -> BundleExpr {
    BundleExpr::TensorLine { bundle: Box::new(b), line: Box::new(l) }
}

pub fn quotient(total: BundleExpr, sub: BundleExpr) -> BundleExpr {
    BundleExpr::Quotient { total: Box::new(total), sub: Box::new(sub) }
}

pub fn kernel(total: BundleExpr, target: BundleExpr) -> BundleExpr {
    BundleExpr::Kernel { total: Box::new(total), target: Box::new(target) }
}

pub fn extension(sub: BundleExpr, quot: BundleExpr) -> BundleExpr {
    BundleExpr::Extension { sub: Box::new(sub), quot: Box::new(quot) }
}

// Curves.

pub fn fiber_line(space: &str, generator: &str) -> CurveExpr {
    CurveExpr::LineInProjFiber { space: s(space), generator: s(generator) }
}

pub fn push(curve: &str, map: &str) -> CurveExpr {
    CurveExpr::Pushforward { curve: s(curve), map: s(map) }
}

// Maps.

pub fn structure(from: &str, to: &str) -> MapRule {
    MapRule::Structure { from: s(from), to: s(to) }
}

pub fn compose(names: &[&str]) -> MapRule {
    MapRule::Compose(strs(names))
}

pub fn images(source: &str, basis: Option<&str>, target: &str, images: Vec<ClassExpr>, identification: bool) -> MapRule {
    MapRule::Images { source: s(source), basis: basis.map(s), target: s(target), images, identification }
}

/// Row-major integer matrix.
pub fn imat(rows: &[&[i64]]) -> Vec<Vec<ParamPoly>> {
    rows.iter().map(|r| r.iter().map(|&x| p(x)).collect()).collect()
}

/// Accumulates a scenario document.
pub struct B {
    spec: ScenarioSpec,
}

impl B {
    pub fn new(name: &str, description: &str, n_policy: NPolicy) -> Self {
        B {
            spec: ScenarioSpec {
                name: s(name),
                description: s(description),
                n_policy,
                notes: vec![],
                spaces: vec![],
                bundles: vec![],
                classes: vec![],
                bases: vec![],
                maps: vec![],
                curves: vec![],
                chains: vec![],
                guards: vec![],
                expect: vec![],
                display: Display::default(),
            },
        }
    }

    pub fn note(&mut self, title: &str, text: &str) -> &mut Self {
        self.spec.notes.push(Note { title: s(title), text: s(text) });
        self
    }

    pub fn space(&mut self, name: &str, kind: SpaceKindDef) -> &mut Self {
        self.spec.spaces.push(SpaceDef { name: s(name), kind });
        self
    }

    pub fn base(&mut self, name: &str, generators: &[&str], canonical: Option<Vec<ParamPoly>>, dim: ParamPoly) -> &mut Self {
        self.space(name, SpaceKindDef::FormalBase { generators: strs(generators), canonical, dim })
    }

    pub fn proj(&mut self, name: &str, bundle: BundleExpr, taut: &str) -> &mut Self {
        self.space(name, SpaceKindDef::ProjBundle { bundle, taut: s(taut) })
    }

    pub fn blow_up(&mut self, name: &str, ambient: &str, codim: ParamPoly, exc: &str, restriction: Option<ClassExpr>) -> &mut Self {
        self.space(
            name,
            SpaceKindDef::BlowUp { ambient: s(ambient), codim, exc: s(exc), exc_restriction: restriction },
        )
    }

    pub fn fiber_product(&mut self, name: &str, left: &str, right: &str, over: &str) -> &mut Self {
        self.space(name, SpaceKindDef::FiberProduct { left: s(left), right: s(right), over: s(over) })
    }

    pub fn divisor(&mut self, name: &str, ambient: &str, class: ClassExpr) -> &mut Self {
        self.space(name, SpaceKindDef::DivisorIn { ambient: s(ambient), class })
    }

    pub fn bundle(&mut self, name: &str, def: BundleExpr) -> &mut Self {
        self.spec.bundles.push(Named { name: s(name), def });
        self
    }

    pub fn class(&mut self, name: &str, def: ClassExpr) -> &mut Self {
        self.spec.classes.push(Named { name: s(name), def });
        self
    }

    pub fn basis(&mut self, name: &str, space: &str, elements: Vec<(&str, ClassExpr)>) -> &mut Self {
        self.spec.bases.push(BasisDef {
            name: s(name),
            space: s(space),
            elements: elements.into_iter().map(|(label, class)| BasisElement { label: s(label), class }).collect(),
        });
        self
    }

    pub fn map(&mut self, name: &str, def: MapRule) -> &mut Self {
        self.spec.maps.push(Named { name: s(name), def });
        self
    }

    pub fn curve(&mut self, name: &str, def: CurveExpr) -> &mut Self {
        self.spec.curves.push(Named { name: s(name), def });
        self
    }

    pub fn chain(&mut self, name: &str, def: ChainDef) -> &mut Self {
        self.spec.chains.push(Named { name: s(name), def });
        self
    }

    pub fn guard(&mut self, check: &str, probe: Probe, value: Value, provenance: Provenance, anchor: &str) -> &mut Self {
        self.spec.guards.push(Expectation { check: s(check), probe, value, provenance, anchor: s(anchor) });
        self
    }

    pub fn expect(&mut self, check: &str, probe: Probe, value: Value, provenance: Provenance, anchor: &str) -> &mut Self {
        self.spec.expect.push(Expectation { check: s(check), probe, value, provenance, anchor: s(anchor) });
        self
    }

    pub fn table(&mut self, t: TableDisplay) -> &mut Self {
        self.spec.display.table = Some(t);
        self
    }

    pub fn cone(&mut self, c: ConeDisplay) -> &mut Self {
        self.spec.display.cone = Some(c);
        self
    }

    pub fn build(&mut self) -> ScenarioSpec {
        self.spec.clone()
    }
}
