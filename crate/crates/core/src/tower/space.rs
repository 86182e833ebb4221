//! The construction DAG of spaces and their divisor classes.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{FormalBundle, TowerError};
use crate::kernel::{sample_points, ParamPoly, Rat};

/// Index of a space inside its [`Tower`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceId(pub usize);

/// Data of a blow-up center.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterSpec {
    pub codim: ParamPoly,
    /// Class of `O(exceptional)` restricted to the exceptional divisor, when
    /// the exceptional divisor is modelled as a space of its own.
    pub exc_restriction_class: Option<DivClass>,
}

impl CenterSpec {
    pub fn new(codim: ParamPoly) -> Self {
        CenterSpec { codim, exc_restriction_class: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpaceKind {
    /// A base whose Picard generators are declared; base classes of
    /// hyperkähler-type bases are carried as inert generators.
    FormalBase { canonical: Option<Vec<ParamPoly>> },
    /// `ℙ(F)`, lines in `F`, with `O(−1) ⊂ π*F` and generator `ξ = c₁ O(1)`.
    ProjBundle { base: SpaceId, bundle: FormalBundle },
    BlowUp { ambient: SpaceId, center: CenterSpec },
    /// `left ×_over right`; both factors are built on top of `over`.
    FiberProduct { left: SpaceId, right: SpaceId, over: SpaceId },
    /// A divisor of the given class; its Picard basis is the ambient one.
    DivisorIn { ambient: SpaceId, class: DivClass },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Space {
    pub id: SpaceId,
    pub name: String,
    pub kind: SpaceKind,
    generators: Vec<String>,
    dim: ParamPoly,
}

impl Space {
    /// Names of the Picard generators, base generators first.
    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn picard_rank(&self) -> usize {
        self.generators.len()
    }

    pub fn dim(&self) -> &ParamPoly {
        &self.dim
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Structural parents, i.e. the spaces this one maps to or sits in.
    pub fn parents(&self) -> Vec<SpaceId> {
        match &self.kind {
            SpaceKind::FormalBase { .. } => vec![],
            SpaceKind::ProjBundle { base, .. } => vec![*base],
            SpaceKind::BlowUp { ambient, .. } | SpaceKind::DivisorIn { ambient, .. } => vec![*ambient],
            SpaceKind::FiberProduct { left, right, .. } => vec![*left, *right],
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            SpaceKind::FormalBase { .. } => "base",
            SpaceKind::ProjBundle { .. } => "proj_bundle",
            SpaceKind::BlowUp { .. } => "blow_up",
            SpaceKind::FiberProduct { .. } => "fiber_product",
            SpaceKind::DivisorIn { .. } => "divisor_in",
        }
    }
}

/// A divisor class: coordinates over the Picard generators of a space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivClass {
    pub space: SpaceId,
    pub coords: Vec<ParamPoly>,
}

impl DivClass {
    fn same_space(&self, other: &DivClass) -> Result<(), TowerError> {
        if self.space != other.space || self.coords.len() != other.coords.len() {
            return Err(TowerError::SpaceMismatch(format!(
                "classes live on spaces #{} and #{}",
                self.space.0, other.space.0
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &DivClass) -> Result<DivClass, TowerError> {
        self.same_space(other)?;
        Ok(DivClass {
            space: self.space,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &DivClass) -> Result<DivClass, TowerError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DivClass {
        DivClass { space: self.space, coords: self.coords.iter().map(|c| -c).collect() }
    }

    /// Multiplication by a polynomial in `n`.
    pub fn scale(&self, factor: &ParamPoly) -> Result<DivClass, TowerError> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.checked_mul(factor))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DivClass { space: self.space, coords })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(ParamPoly::is_zero)
    }

    pub fn eval(&self, n: &Rat) -> Vec<Rat> {
        self.coords.iter().map(|c| c.eval(n)).collect()
    }
}

/// An append-only arena of spaces; every construction refers only to spaces
/// already present, so the DAG is acyclic by construction.
#[derive(Clone, Debug, Default)]
pub struct Tower {
    spaces: Vec<Space>,
    names: HashMap<String, SpaceId>,
}

fn check_positive_at_samples(p: &ParamPoly, what: &str) -> Result<(), TowerError> {
    for k in sample_points() {
        if p.eval_int(k) < Rat::one() {
            return Err(TowerError::InvalidRank(format!("{what} = {p} is below 1 at n = {k}")));
        }
    }
    Ok(())
}

impl Tower {
    pub fn new() -> Self {
        Tower::default()
    }

    pub fn space(&self, id: SpaceId) -> &Space {
        &self.spaces[id.0]
    }

    pub fn spaces(&self) -> &[Space] {
        &self.spaces
    }

    pub fn id(&self, name: &str) -> Result<SpaceId, TowerError> {
        self.names.get(name).copied().ok_or_else(|| TowerError::UnknownSpace(name.to_string()))
    }

    pub fn name(&self, id: SpaceId) -> &str {
        &self.space(id).name
    }

    fn push(&mut self, name: &str, kind: SpaceKind, generators: Vec<String>, dim: ParamPoly) -> Result<SpaceId, TowerError> {
        if self.names.contains_key(name) {
            return Err(TowerError::DuplicateSpace(name.to_string()));
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(TowerError::DuplicateGenerator { space: name.to_string(), generator: g.clone() });
            }
        }
        let id = SpaceId(self.spaces.len());
        self.spaces.push(Space { id, name: name.to_string(), kind, generators, dim });
        self.names.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_formal_base(
        &mut self,
        name: &str,
        generators: &[&str],
        canonical: Option<Vec<ParamPoly>>,
        dim: ParamPoly,
    ) -> Result<SpaceId, TowerError> {
        if let Some(k) = &canonical {
            if k.len() != generators.len() {
                return Err(TowerError::Length {
                    what: format!("canonical class of {name}"),
                    expected: generators.len(),
                    got: k.len(),
                });
            }
        }
        let gens = generators.iter().map(|g| g.to_string()).collect();
        self.push(name, SpaceKind::FormalBase { canonical }, gens, dim)
    }

    /// `ℙ(bundle)` over the bundle's space, with tautological generator `taut`.
    pub fn add_proj_bundle(&mut self, name: &str, bundle: FormalBundle, taut: &str) -> Result<SpaceId, TowerError> {
        check_positive_at_samples(&bundle.rank, &format!("rank of the bundle under {name}"))?;
        let base = self.space(bundle.space).clone();
        let mut gens = base.generators.clone();
        gens.push(taut.to_string());
        let dim = &base.dim + &(&bundle.rank - &ParamPoly::one());
        self.push(name, SpaceKind::ProjBundle { base: base.id, bundle }, gens, dim)
    }

    pub fn add_blow_up(&mut self, name: &str, ambient: SpaceId, center: CenterSpec, exc: &str) -> Result<SpaceId, TowerError> {
        check_positive_at_samples(&center.codim, &format!("codimension of the center of {name}"))?;
        let amb = self.space(ambient).clone();
        let mut gens = amb.generators.clone();
        gens.push(exc.to_string());
        self.push(name, SpaceKind::BlowUp { ambient, center }, gens, amb.dim.clone())
    }

    pub fn add_fiber_product(&mut self, name: &str, left: SpaceId, right: SpaceId, over: SpaceId) -> Result<SpaceId, TowerError> {
        for side in [left, right] {
            if !self.is_ancestor(over, side) {
                return Err(TowerError::NotAncestor {
                    ancestor: self.name(over).to_string(),
                    descendant: self.name(side).to_string(),
                });
            }
        }
        let (l, r, o) = (self.space(left), self.space(right), self.space(over));
        let k = o.generators.len();
        if l.generators[..k] != o.generators[..] || r.generators[..k] != o.generators[..] {
            return Err(TowerError::Invalid(format!(
                "{name}: the generators of {} must be a common prefix of both factors",
                o.name
            )));
        }
        let mut gens = l.generators.clone();
        gens.extend(r.generators[k..].iter().cloned());
        let dim = &(&l.dim + &r.dim) - &o.dim;
        self.push(name, SpaceKind::FiberProduct { left, right, over }, gens, dim)
    }

    pub fn add_divisor_in(&mut self, name: &str, ambient: SpaceId, class: DivClass) -> Result<SpaceId, TowerError> {
        self.check_class(&class, ambient)?;
        let amb = self.space(ambient).clone();
        let dim = &amb.dim - &ParamPoly::one();
        self.push(name, SpaceKind::DivisorIn { ambient, class }, amb.generators.clone(), dim)
    }

    /// True iff `ancestor` is reachable from `descendant` through parents
    /// (a space counts as its own ancestor).
    pub fn is_ancestor(&self, ancestor: SpaceId, descendant: SpaceId) -> bool {
        self.path_up(descendant, ancestor).is_some()
    }

    /// A chain `descendant = s₀ → s₁ → … → ancestor` of parent links.
    fn path_up(&self, from: SpaceId, to: SpaceId) -> Option<Vec<SpaceId>> {
        if from == to {
            return Some(vec![from]);
        }
        for p in self.space(from).parents() {
            if let Some(mut rest) = self.path_up(p, to) {
                rest.insert(0, from);
                return Some(rest);
            }
        }
        None
    }

    /// Index in `child` of each Picard generator of its parent `parent`.
    fn embedding(&self, parent: SpaceId, child: SpaceId) -> Vec<usize> {
        let c = self.space(child);
        let p = self.space(parent);
        match &c.kind {
            SpaceKind::FiberProduct { left, right, over } => {
                let k = self.space(*over).generators.len();
                if parent == *left {
                    (0..p.generators.len()).collect()
                } else {
                    debug_assert_eq!(parent, *right);
                    let offset = self.space(*left).generators.len();
                    (0..p.generators.len()).map(|i| if i < k { i } else { offset + i - k }).collect()
                }
            }
            _ => (0..p.generators.len()).collect(),
        }
    }

    /// Pulls a class back along the structure morphisms to a descendant.
    pub fn lift(&self, d: &DivClass, to: SpaceId) -> Result<DivClass, TowerError> {
        self.check_class(d, d.space)?;
        let path = self.path_up(to, d.space).ok_or_else(|| TowerError::NotAncestor {
            ancestor: self.name(d.space).to_string(),
            descendant: self.name(to).to_string(),
        })?;
        let mut cur = d.clone();
        for w in path.windows(2).rev() {
            let (child, parent) = (w[0], w[1]);
            let emb = self.embedding(parent, child);
            let mut coords = vec![ParamPoly::zero(); self.space(child).picard_rank()];
            for (i, c) in cur.coords.iter().enumerate() {
                coords[emb[i]] = &coords[emb[i]] + c;
            }
            cur = DivClass { space: child, coords };
        }
        Ok(cur)
    }

    pub fn check_class(&self, d: &DivClass, space: SpaceId) -> Result<(), TowerError> {
        if d.space != space {
            return Err(TowerError::SpaceMismatch(format!(
                "class lives on {} but {} was expected",
                self.name(d.space),
                self.name(space)
            )));
        }
        let rank = self.space(space).picard_rank();
        if d.coords.len() != rank {
            return Err(TowerError::Length {
                what: format!("divisor class on {}", self.name(space)),
                expected: rank,
                got: d.coords.len(),
            });
        }
        Ok(())
    }

    /// A class from explicit coordinates, with a length check.
    pub fn class(&self, space: SpaceId, coords: Vec<ParamPoly>) -> Result<DivClass, TowerError> {
        let d = DivClass { space, coords };
        self.check_class(&d, space)?;
        Ok(d)
    }

    pub fn zero_class(&self, space: SpaceId) -> DivClass {
        DivClass { space, coords: vec![ParamPoly::zero(); self.space(space).picard_rank()] }
    }

    /// The class of a single named generator.
    pub fn generator(&self, space: SpaceId, name: &str) -> Result<DivClass, TowerError> {
        let idx = self.space(space).generator_index(name).ok_or_else(|| TowerError::UnknownGenerator {
            space: self.name(space).to_string(),
            generator: name.to_string(),
        })?;
        let mut d = self.zero_class(space);
        d.coords[idx] = ParamPoly::one();
        Ok(d)
    }

    /// `Σ cᵢ·gᵢ` over named generators.
    pub fn combination(&self, space: SpaceId, terms: &[(&str, ParamPoly)]) -> Result<DivClass, TowerError> {
        let mut d = self.zero_class(space);
        for (name, c) in terms {
            d = d.add(&self.generator(space, name)?.scale(c)?)?;
        }
        Ok(d)
    }

    /// Zeroes the coordinates of generators inherited from the named base,
    /// restricting a class to the fiber over a closed point of that base.
    pub fn specialize_to_fiber(&self, d: &DivClass, base: SpaceId) -> Result<DivClass, TowerError> {
        if !self.is_ancestor(base, d.space) {
            return Err(TowerError::NotAncestor {
                ancestor: self.name(base).to_string(),
                descendant: self.name(d.space).to_string(),
            });
        }
        let base_gens = self.space(base).generators().to_vec();
        let gens = self.space(d.space).generators();
        let coords = d
            .coords
            .iter()
            .zip(gens)
            .map(|(c, g)| if base_gens.contains(g) { ParamPoly::zero() } else { c.clone() })
            .collect();
        Ok(DivClass { space: d.space, coords })
    }

    /// Readable form such as `(-2n + 1)x1 + x4`.
    pub fn format_class(&self, d: &DivClass) -> String {
        let gens = self.space(d.space).generators();
        let terms: Vec<String> = d
            .coords
            .iter()
            .zip(gens)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, g)| {
                if c.is_constant() {
                    let v = c.coeff(0);
                    if v.is_one() {
                        g.clone()
                    } else if v == -Rat::one() {
                        format!("-{g}")
                    } else {
                        format!("{v}{g}")
                    }
                } else {
                    format!("({c}){g}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point_tower() -> (Tower, SpaceId) {
        let mut t = Tower::new();
        let pt = t.add_formal_base("pt", &[], Some(vec![]), ParamPoly::zero()).unwrap();
        (t, pt)
    }

    #[test]
    fn duplicate_names_rejected() {
        let (mut t, _) = point_tower();
        assert!(matches!(
            t.add_formal_base("pt", &[], None, ParamPoly::zero()),
            Err(TowerError::DuplicateSpace(_))
        ));
        assert!(matches!(
            t.add_formal_base("b", &["a", "a"], None, ParamPoly::zero()),
            Err(TowerError::DuplicateGenerator { .. })
        ));
    }

    #[test]
    fn fiber_product_bookkeeping() {
        let (mut t, pt) = point_tower();
        let f = FormalBundle::trivial(&t, pt, ParamPoly::int(3));
        let p1 = t.add_proj_bundle("P1", f.clone(), "u").unwrap();
        let p2 = t.add_proj_bundle("P2", f, "v").unwrap();
        let prod = t.add_fiber_product("P1xP2", p1, p2, pt).unwrap();
        assert_eq!(t.space(prod).generators(), &["u".to_string(), "v".to_string()]);
        assert_eq!(t.space(prod).dim(), &ParamPoly::int(4));
        let v = t.generator(p2, "v").unwrap();
        assert_eq!(t.lift(&v, prod).unwrap().coords, vec![ParamPoly::zero(), ParamPoly::one()]);
        assert!(t.lift(&v, p1).is_err());
    }

    #[test]
    fn wrong_length_class() {
        let (mut t, pt) = point_tower();
        let p = t.add_proj_bundle("P", FormalBundle::trivial(&t, pt, ParamPoly::int(2)), "h").unwrap();
        assert!(matches!(t.class(p, vec![]), Err(TowerError::Length { .. })));
    }

    #[test]
    fn rank_must_be_positive() {
        let (mut t, pt) = point_tower();
        let bad = FormalBundle::trivial(&t, pt, ParamPoly::lin(3, -1));
        assert!(matches!(t.add_proj_bundle("P", bad, "h"), Err(TowerError::InvalidRank(_))));
    }

    #[test]
    fn fiber_specialization_zeroes_base() {
        let mut t = Tower::new();
        let base = t.add_formal_base("X", &["hX"], Some(vec![ParamPoly::zero()]), ParamPoly::int(4)).unwrap();
        let p = t.add_proj_bundle("P", FormalBundle::trivial(&t, base, ParamPoly::int(2)), "h").unwrap();
        let d = t.class(p, vec![ParamPoly::int(5), ParamPoly::int(-1)]).unwrap();
        assert_eq!(t.specialize_to_fiber(&d, base).unwrap().coords, vec![ParamPoly::zero(), ParamPoly::int(-1)]);
        assert_eq!(t.format_class(&d), "5hX - h");
    }
}
