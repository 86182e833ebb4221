//! Resolution of scenario definitions into tower nodes, classes, maps and
//! curves.
//!
//! Definitions are resolved on first use, so they may appear in any order;
//! a definition that (indirectly) depends on itself is reported as circular.

use std::collections::HashMap;

use super::model::*;
use super::ScenarioError;
use crate::curves::{build_curve, pushforward, AtomicCurveSpec, ChainSpec, ChainStep, Cone, CurveClass};
use crate::kernel::{ParamPoly, PolyMatrix, Rat};
use crate::tower::{
    ambient_canonical_restriction, blowup_restricted_canonical, canonical_class, relative_tangent, tautological_sub,
    transport_class, Basis, CenterSpec, DivClass, FormalBundle, PullbackMap, SpaceId, SpaceKind, Tower, TransportStep,
};

type Result<T> = std::result::Result<T, ScenarioError>;

pub(crate) struct Interp<'s> {
    spec: &'s ScenarioSpec,
    pub tower: Tower,
    bundles: HashMap<String, FormalBundle>,
    classes: HashMap<String, DivClass>,
    bases: HashMap<String, Basis>,
    maps: HashMap<String, PullbackMap>,
    curves: HashMap<String, CurveClass>,
    active: Vec<String>,
}

fn find<'a, T>(list: &'a [Named<T>], name: &str) -> Option<&'a T> {
    list.iter().find(|d| d.name == name).map(|d| &d.def)
}

fn duplicates<'a>(kind: &str, names: impl Iterator<Item = &'a String>) -> Result<()> {
    let mut seen: Vec<&String> = Vec::new();
    for n in names {
        if seen.contains(&n) {
            return Err(ScenarioError::Semantic { object: format!("{kind} {n}"), message: "defined twice".into() });
        }
        seen.push(n);
    }
    Ok(())
}

impl<'s> Interp<'s> {
    pub fn new(spec: &'s ScenarioSpec) -> Self {
        Interp {
            spec,
            tower: Tower::new(),
            bundles: HashMap::new(),
            classes: HashMap::new(),
            bases: HashMap::new(),
            maps: HashMap::new(),
            curves: HashMap::new(),
            active: Vec::new(),
        }
    }

    /// Resolves every definition once, so that ill-formed scenarios are
    /// rejected before anything runs.
    pub fn resolve_all(&mut self) -> Result<()> {
        let s = self.spec;
        duplicates("space", s.spaces.iter().map(|d| &d.name))?;
        duplicates("bundle", s.bundles.iter().map(|d| &d.name))?;
        duplicates("class", s.classes.iter().map(|d| &d.name))?;
        duplicates("basis", s.bases.iter().map(|d| &d.name))?;
        duplicates("map", s.maps.iter().map(|d| &d.name))?;
        duplicates("curve", s.curves.iter().map(|d| &d.name))?;
        duplicates("chain", s.chains.iter().map(|d| &d.name))?;
        duplicates("check", s.guards.iter().chain(&s.expect).map(|e| &e.check))?;
        for d in &s.spaces {
            self.space(&d.name)?;
        }
        for d in &s.bundles {
            self.bundle(&d.name)?;
        }
        for d in &s.classes {
            self.class(&d.name)?;
        }
        for d in &s.bases {
            self.basis(&d.name)?;
        }
        for d in &s.maps {
            self.map(&d.name)?;
        }
        for d in &s.curves {
            self.curve(&d.name)?;
        }
        for d in &s.chains {
            self.chain(&d.name, &Rat::from_int(3))?;
        }
        Ok(())
    }

    /// Runs `f` as the resolution of `key`, detecting cycles and attaching
    /// the object name to errors that do not carry one yet.
    fn guarded<T>(&mut self, key: String, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        if self.active.contains(&key) {
            return Err(ScenarioError::Semantic { object: key, message: "circular definition".into() });
        }
        self.active.push(key.clone());
        let out = f(self);
        self.active.pop();
        out.map_err(|e| match e {
            ScenarioError::Semantic { .. } => e,
            other => ScenarioError::Semantic { object: key, message: other.to_string() },
        })
    }

    fn unknown(kind: &str, name: &str) -> ScenarioError {
        ScenarioError::Semantic { object: format!("{kind} {name}"), message: "not defined".into() }
    }

    pub fn space(&mut self, name: &str) -> Result<SpaceId> {
        if let Ok(id) = self.tower.id(name) {
            return Ok(id);
        }
        let def = self.spec.spaces.iter().find(|d| d.name == name).ok_or_else(|| Self::unknown("space", name))?;
        self.guarded(format!("space {name}"), |me| me.build_space(name, &def.kind))
    }

    fn build_space(&mut self, name: &str, kind: &SpaceKindDef) -> Result<SpaceId> {
        Ok(match kind {
            SpaceKindDef::FormalBase { generators, canonical, dim } => {
                let gens: Vec<&str> = generators.iter().map(String::as_str).collect();
                self.tower.add_formal_base(name, &gens, canonical.clone(), dim.clone())?
            }
            SpaceKindDef::ProjBundle { bundle, taut } => {
                let b = self.bundle_expr(bundle)?;
                self.tower.add_proj_bundle(name, b, taut)?
            }
            SpaceKindDef::BlowUp { ambient, codim, exc, exc_restriction } => {
                let amb = self.space(ambient)?;
                let restriction = exc_restriction.as_ref().map(|c| self.class_expr(c)).transpose()?;
                let center = CenterSpec { codim: codim.clone(), exc_restriction_class: restriction };
                self.tower.add_blow_up(name, amb, center, exc)?
            }
            SpaceKindDef::FiberProduct { left, right, over } => {
                let (l, r, o) = (self.space(left)?, self.space(right)?, self.space(over)?);
                self.tower.add_fiber_product(name, l, r, o)?
            }
            SpaceKindDef::DivisorIn { ambient, class } => {
                let amb = self.space(ambient)?;
                let c = self.class_expr(class)?;
                self.tower.add_divisor_in(name, amb, c)?
            }
        })
    }

    pub fn bundle(&mut self, name: &str) -> Result<FormalBundle> {
        if let Some(b) = self.bundles.get(name) {
            return Ok(b.clone());
        }
        let def = find(&self.spec.bundles, name).ok_or_else(|| Self::unknown("bundle", name))?;
        let b = self.guarded(format!("bundle {name}"), |me| me.bundle_expr(def))?;
        self.bundles.insert(name.to_string(), b.clone());
        Ok(b)
    }

    pub fn bundle_expr(&mut self, e: &BundleExpr) -> Result<FormalBundle> {
        Ok(match e {
            BundleExpr::Ref(name) => self.bundle(name)?,
            BundleExpr::Trivial { space, rank } => {
                let id = self.space(space)?;
                FormalBundle::trivial(&self.tower, id, rank.clone())
            }
            BundleExpr::Line(c) => FormalBundle::line(self.class_expr(c)?),
            BundleExpr::Formal { rank, c1 } => {
                let c = self.class_expr(c1)?;
                FormalBundle::new(&self.tower, rank.clone(), c)?
            }
            BundleExpr::Dual(b) => self.bundle_expr(b)?.dual(),
            BundleExpr::Quotient { total, sub } => {
                FormalBundle::quotient(&self.bundle_expr(total)?, &self.bundle_expr(sub)?)?
            }
            BundleExpr::Kernel { total, target } => {
                FormalBundle::kernel(&self.bundle_expr(total)?, &self.bundle_expr(target)?)?
            }
            BundleExpr::Extension { sub, quot } => {
                FormalBundle::extension(&self.bundle_expr(sub)?, &self.bundle_expr(quot)?)?
            }
            BundleExpr::Dsum(a, b) => FormalBundle::dsum(&self.bundle_expr(a)?, &self.bundle_expr(b)?)?,
            BundleExpr::TensorLine { bundle, line } => self.bundle_expr(bundle)?.tensor_line(&self.bundle_expr(line)?)?,
            BundleExpr::Tensor(a, b) => self.bundle_expr(a)?.tensor(&self.bundle_expr(b)?)?,
            BundleExpr::SymPower { bundle, k } => self.bundle_expr(bundle)?.sym_power(*k)?,
            BundleExpr::WedgeTop(b) => self.bundle_expr(b)?.wedge_top(),
            BundleExpr::Lift { bundle, to } => {
                let b = self.bundle_expr(bundle)?;
                let id = self.space(to)?;
                b.lift(&self.tower, id)?
            }
            BundleExpr::RelativeTangent(space) => {
                let id = self.space(space)?;
                relative_tangent(&self.tower, id)?
            }
            BundleExpr::TautologicalSub(space) => {
                let id = self.space(space)?;
                tautological_sub(&self.tower, id)?
            }
        })
    }

    pub fn class(&mut self, name: &str) -> Result<DivClass> {
        if let Some(c) = self.classes.get(name) {
            return Ok(c.clone());
        }
        let def = find(&self.spec.classes, name).ok_or_else(|| Self::unknown("class", name))?;
        let c = self.guarded(format!("class {name}"), |me| me.class_expr(def))?;
        self.classes.insert(name.to_string(), c.clone());
        Ok(c)
    }

    pub fn class_expr(&mut self, e: &ClassExpr) -> Result<DivClass> {
        Ok(match e {
            ClassExpr::Ref(name) => self.class(name)?,
            ClassExpr::Coords { space, values } => {
                let id = self.space(space)?;
                self.tower.class(id, values.clone())?
            }
            ClassExpr::Combo { space, terms } => {
                let id = self.space(space)?;
                let terms: Vec<(&str, ParamPoly)> = terms.iter().map(|(g, c)| (g.as_str(), c.clone())).collect();
                self.tower.combination(id, &terms)?
            }
            ClassExpr::C1(b) => self.bundle_expr(b)?.c1,
            ClassExpr::Canonical(space) => {
                let id = self.space(space)?;
                canonical_class(&self.tower, id)?
            }
            ClassExpr::Lift { class, to } => {
                let c = self.class_expr(class)?;
                let id = self.space(to)?;
                self.tower.lift(&c, id)?
            }
            ClassExpr::Sum(terms) => {
                let (first, rest) = terms.split_first().ok_or_else(|| ScenarioError::Engine("empty sum".into()))?;
                let mut acc = self.class_expr(first)?;
                for t in rest {
                    acc = acc.add(&self.class_expr(t)?)?;
                }
                acc
            }
            ClassExpr::Scale { by, class } => self.class_expr(class)?.scale(by)?,
            ClassExpr::Pullback { map, class } => {
                let m = self.map(map)?;
                m.apply(&self.class_expr(class)?)?
            }
            ClassExpr::AdjointRestriction { canonical, normals } => {
                let k = self.class_expr(canonical)?;
                let normals = normals.iter().map(|c| self.class_expr(c)).collect::<Result<Vec<_>>>()?;
                ambient_canonical_restriction(&k, &normals)?
            }
            ClassExpr::BlowupRestriction { space, restricted, ambient_codim } => {
                let id = self.space(space)?;
                let r = self.class_expr(restricted)?;
                blowup_restricted_canonical(&self.tower, id, &r, ambient_codim)?
            }
            ClassExpr::ExcRestriction(space) => {
                let id = self.space(space)?;
                match &self.tower.space(id).kind {
                    SpaceKind::BlowUp { center, .. } => center.exc_restriction_class.clone().ok_or_else(|| {
                        ScenarioError::Engine(format!("the center of {space} declares no restriction class"))
                    })?,
                    _ => return Err(ScenarioError::Engine(format!("{space} is not a blow-up"))),
                }
            }
            ClassExpr::SymmetricPreimage { map, class } => {
                let m = self.map(map)?;
                let c = self.class_expr(class)?;
                self.symmetric_preimage(&m, &c)?
            }
            ClassExpr::Transported { transport, onto } => {
                let coords = self.transport(transport)?;
                let basis = self.basis(&transport.basis)?;
                let onto_id = self.space(onto)?;
                self.read_back(&basis, &transport.drop, &coords, onto_id)?
            }
        })
    }

    /// Solves `M·v = c` with the coordinates of the two factors' own
    /// generators forced equal.
    fn symmetric_preimage(&self, m: &PullbackMap, c: &DivClass) -> Result<DivClass> {
        let space = self.tower.space(m.source);
        let SpaceKind::FiberProduct { left, over, .. } = space.kind else {
            return Err(ScenarioError::Engine(format!("{} is not a fiber product", space.name)));
        };
        if c.space != m.target {
            return Err(ScenarioError::Engine(format!("the class does not live on the target of {}", m.name)));
        }
        let k = self.tower.space(over).picard_rank();
        let l = self.tower.space(left).picard_rank();
        let cols = space.picard_rank();
        let mut rows = m.generator_matrix().to_rows();
        let mut rhs = c.coords.clone();
        for i in 0..(l - k) {
            let mut row = vec![ParamPoly::zero(); cols];
            row[k + i] = ParamPoly::one();
            row[l + i] = ParamPoly::int(-1);
            rows.push(row);
            rhs.push(ParamPoly::zero());
        }
        let a = PolyMatrix::from_rows(rows)?;
        let v = crate::kernel::solve_linear_poly(&a, &rhs)?;
        Ok(DivClass { space: m.source, coords: v })
    }

    pub fn transport(&mut self, t: &TransportDef) -> Result<Vec<ParamPoly>> {
        let d = self.class_expr(&t.class)?;
        let maps = t.via.iter().map(|s| self.map(&s.map)).collect::<Result<Vec<_>>>()?;
        let steps: Vec<TransportStep<'_>> =
            maps.iter().zip(&t.via).map(|(m, s)| TransportStep { map: m, inverted: s.inverted }).collect();
        let basis = self.basis(&t.basis)?;
        Ok(transport_class(&self.tower, &d, &steps, &basis, &t.drop)?)
    }

    /// Reads coordinates relative to the non-dropped elements of a basis on
    /// a blow-up back on its ambient; those elements must be pulled back
    /// from the ambient.
    fn read_back(&self, basis: &Basis, drop: &[String], coords: &[ParamPoly], onto: SpaceId) -> Result<DivClass> {
        let blow = self.tower.space(basis.space);
        match blow.kind {
            SpaceKind::BlowUp { ambient, .. } if ambient == onto => {}
            _ => {
                return Err(ScenarioError::Engine(format!(
                    "{} is not the ambient of the blow-up {}",
                    self.tower.name(onto),
                    blow.name
                )))
            }
        }
        let rank = self.tower.space(onto).picard_rank();
        let kept: Vec<&DivClass> =
            basis.labels.iter().zip(&basis.classes).filter(|(l, _)| !drop.contains(l)).map(|(_, c)| c).collect();
        if kept.len() != coords.len() {
            return Err(ScenarioError::Engine("transported coordinates do not match the kept basis elements".into()));
        }
        let mut acc = self.tower.zero_class(onto);
        for (c, class) in coords.iter().zip(kept) {
            if !class.coords[rank].is_zero() {
                return Err(ScenarioError::Engine("a kept basis element involves the exceptional class".into()));
            }
            let down = DivClass { space: onto, coords: class.coords[..rank].to_vec() };
            acc = acc.add(&down.scale(c)?)?;
        }
        Ok(acc)
    }

    pub fn basis(&mut self, name: &str) -> Result<Basis> {
        if let Some(b) = self.bases.get(name) {
            return Ok(b.clone());
        }
        let def = self.spec.bases.iter().find(|d| d.name == name).ok_or_else(|| Self::unknown("basis", name))?;
        let b = self.guarded(format!("basis {name}"), |me| {
            let id = me.space(&def.space)?;
            let labels = def.elements.iter().map(|e| e.label.clone()).collect();
            let classes = def.elements.iter().map(|e| me.class_expr(&e.class)).collect::<Result<Vec<_>>>()?;
            Ok(Basis::new(&me.tower, id, labels, classes)?)
        })?;
        self.bases.insert(name.to_string(), b.clone());
        Ok(b)
    }

    pub fn map(&mut self, name: &str) -> Result<PullbackMap> {
        if let Some(m) = self.maps.get(name) {
            return Ok(m.clone());
        }
        let def = find(&self.spec.maps, name).ok_or_else(|| Self::unknown("map", name))?;
        let mut m = self.guarded(format!("map {name}"), |me| me.build_map(name, def))?;
        m.name = name.to_string();
        self.maps.insert(name.to_string(), m.clone());
        Ok(m)
    }

    fn build_map(&mut self, name: &str, rule: &MapRule) -> Result<PullbackMap> {
        Ok(match rule {
            MapRule::Structure { from, to } => {
                let (f, t) = (self.space(from)?, self.space(to)?);
                PullbackMap::structure(&self.tower, name, f, t)?
            }
            MapRule::Diagonal(product) => {
                let p = self.space(product)?;
                PullbackMap::diagonal(&self.tower, name, p)?
            }
            MapRule::Images { source, basis, target, images, identification } => {
                let src = self.space(source)?;
                let tgt = self.space(target)?;
                let b = match basis {
                    Some(b) => self.basis(b)?,
                    None => Basis::generators(&self.tower, src),
                };
                if b.space != src {
                    return Err(ScenarioError::Engine(format!("basis of {name} does not live on {source}")));
                }
                let imgs = images.iter().map(|c| self.class_expr(c)).collect::<Result<Vec<_>>>()?;
                PullbackMap::from_basis_images(&self.tower, name, &b, tgt, &imgs, *identification)?
            }
            MapRule::Declared { source_basis, target_basis, matrix, identification } => {
                let sb = self.basis(source_basis)?;
                let tb = self.basis(target_basis)?;
                let m = PolyMatrix::from_rows(matrix.clone())?;
                PullbackMap::from_declared_matrix(&self.tower, name, &sb, &tb, &m, *identification)?
            }
            MapRule::Identity { source, target, identification } => {
                let (s, t) = (self.space(source)?, self.space(target)?);
                let size = self.tower.space(s).picard_rank();
                PullbackMap::from_generator_matrix(&self.tower, name, s, t, PolyMatrix::identity(size), *identification)?
            }
            MapRule::Compose(names) => {
                let (first, rest) =
                    names.split_first().ok_or_else(|| ScenarioError::Engine("empty composition".into()))?;
                let mut acc = self.map(first)?;
                for n in rest {
                    acc = acc.compose(&self.map(n)?)?;
                }
                acc
            }
            MapRule::Inverse(of) => self.map(of)?.inverse()?,
        })
    }

    pub fn curve(&mut self, name: &str) -> Result<CurveClass> {
        if let Some(c) = self.curves.get(name) {
            return Ok(c.clone());
        }
        let def = find(&self.spec.curves, name).ok_or_else(|| Self::unknown("curve", name))?;
        let c = self.guarded(format!("curve {name}"), |me| me.build_curve(name, def))?;
        self.curves.insert(name.to_string(), c.clone());
        Ok(c)
    }

    fn build_curve(&mut self, name: &str, e: &CurveExpr) -> Result<CurveClass> {
        let atomic = |me: &mut Self, space: &str, spec: AtomicCurveSpec| -> Result<CurveClass> {
            let id = me.space(space)?;
            Ok(build_curve(&me.tower, id, name, spec)?)
        };
        match e {
            CurveExpr::LineInProjFiber { space, generator } => {
                atomic(self, space, AtomicCurveSpec::LineInProjFiber { generator: generator.clone() })
            }
            CurveExpr::ExceptionalFiberLine(space) => atomic(self, space, AtomicCurveSpec::ExceptionalFiberLine),
            CurveExpr::LineInExceptionalFiber { space, direction } => {
                let direction = self.curve(direction)?;
                atomic(self, space, AtomicCurveSpec::LineInExceptionalFiber { direction })
            }
            CurveExpr::StrictTransform { space, curve, mult } => {
                let ambient = self.curve(curve)?;
                atomic(self, space, AtomicCurveSpec::StrictTransform { ambient, mult_at_center: *mult })
            }
            CurveExpr::Declared { space, vector, note } => {
                atomic(self, space, AtomicCurveSpec::DeclaredSection { vector: vector.clone(), note: note.clone() })
            }
            CurveExpr::Pushforward { curve, map } => {
                let c = self.curve(curve)?;
                let m = self.map(map)?;
                Ok(pushforward(&c, &m, name)?)
            }
            CurveExpr::Combo(terms) => {
                let resolved = terms
                    .iter()
                    .map(|(c, coeff)| Ok((coeff.clone(), self.curve(c)?)))
                    .collect::<Result<Vec<_>>>()?;
                let refs: Vec<(ParamPoly, &CurveClass)> = resolved.iter().map(|(c, k)| (c.clone(), k)).collect();
                Ok(CurveClass::combination(name, &refs)?)
            }
        }
    }

    pub fn curve_list(&mut self, names: &[String]) -> Result<Vec<CurveClass>> {
        names.iter().map(|n| self.curve(n)).collect()
    }

    /// The chain with its base cone evaluated at `n`.
    pub fn chain(&mut self, name: &str, n: &Rat) -> Result<ChainSpec> {
        let def = find(&self.spec.chains, name).ok_or_else(|| Self::unknown("chain", name))?;
        self.guarded(format!("chain {name}"), |me| {
            let base = me.space(&def.base_space)?;
            let base_cone = Cone::new(
                me.tower.space(base).picard_rank(),
                def.base_cone.iter().map(|g| g.label.clone()).collect(),
                def.base_cone.iter().map(|g| g.vector.iter().map(|p| p.eval(n)).collect()).collect(),
            )?;
            let steps = def
                .steps
                .iter()
                .map(|s| {
                    Ok(ChainStep {
                        name: s.space.clone(),
                        space: me.space(&s.space)?,
                        curves: me.curve_list(&s.curves)?,
                        contraction_one: me.map(&s.contraction_one)?,
                        contraction_rest: me.map(&s.contraction_rest)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ChainSpec { base_space: base, base_cone, steps })
        })
    }
}
