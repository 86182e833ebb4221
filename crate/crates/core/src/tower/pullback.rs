//! Pullback homomorphisms between Picard groups of tower nodes.
//!
//! A [`PullbackMap`] stores its matrix against the Picard generators of its
//! source and target (one column per source generator). Declared bases such
//! as `(L^∨, O(1,0), O(0,1), O(−E))` are handled by [`Basis`], and matrices
//! can be read off or supplied relative to them.

use super::{DivClass, SpaceId, SpaceKind, Tower, TowerError};
use crate::kernel::{inverse_poly, solve_linear_poly, KernelError, ParamPoly, PolyMatrix};

/// A named basis of the Picard group of a space (after tensoring with `ℚ`).
#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    pub space: SpaceId,
    pub labels: Vec<String>,
    pub classes: Vec<DivClass>,
}

impl Basis {
    /// Validates that the classes live on one space and form a basis.
    pub fn new(tower: &Tower, space: SpaceId, labels: Vec<String>, classes: Vec<DivClass>) -> Result<Self, TowerError> {
        if labels.len() != classes.len() {
            return Err(TowerError::Length { what: "basis labels".into(), expected: classes.len(), got: labels.len() });
        }
        let rank = tower.space(space).picard_rank();
        if classes.len() != rank {
            return Err(TowerError::Length {
                what: format!("basis of {}", tower.name(space)),
                expected: rank,
                got: classes.len(),
            });
        }
        for c in &classes {
            tower.check_class(c, space)?;
        }
        let b = Basis { space, labels, classes };
        inverse_poly(&b.matrix()).map_err(|_| {
            TowerError::NonInvertible(format!("the declared basis of {} is not a basis", tower.name(space)))
        })?;
        Ok(b)
    }

    /// The basis of Picard generators.
    pub fn generators(tower: &Tower, space: SpaceId) -> Self {
        let labels = tower.space(space).generators().to_vec();
        let classes = labels.iter().map(|g| tower.generator(space, g).expect("own generator")).collect();
        Basis { space, labels, classes }
    }

    /// Columns = basis classes in generator coordinates.
    pub fn matrix(&self) -> PolyMatrix {
        let rows = self.classes.first().map_or(0, |c| c.coords.len());
        PolyMatrix::from_cols_with_height(rows, self.classes.iter().map(|c| c.coords.clone()).collect())
            .expect("validated lengths")
    }

    /// Coordinates of a class relative to this basis.
    pub fn coordinates(&self, d: &DivClass) -> Result<Vec<ParamPoly>, TowerError> {
        if d.space != self.space {
            return Err(TowerError::SpaceMismatch("class and basis live on different spaces".into()));
        }
        Ok(solve_linear_poly(&self.matrix(), &d.coords)?)
    }

    /// The class with the given coordinates relative to this basis.
    pub fn class(&self, coords: &[ParamPoly]) -> Result<DivClass, TowerError> {
        let v = self.matrix().mul_vec(coords)?;
        Ok(DivClass { space: self.space, coords: v })
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A homomorphism `Pic(source) → Pic(target)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PullbackMap {
    pub name: String,
    pub source: SpaceId,
    pub target: SpaceId,
    matrix: PolyMatrix,
    pub identification: bool,
}

impl PullbackMap {
    /// Builds from a generator-level matrix (rows = target generators,
    /// columns = source generators).
    pub fn from_generator_matrix(
        tower: &Tower,
        name: &str,
        source: SpaceId,
        target: SpaceId,
        matrix: PolyMatrix,
        identification: bool,
    ) -> Result<Self, TowerError> {
        let (sr, tr) = (tower.space(source).picard_rank(), tower.space(target).picard_rank());
        if matrix.cols() != sr || matrix.rows() != tr {
            return Err(TowerError::Length {
                what: format!("matrix of {name} ({}x{})", matrix.rows(), matrix.cols()),
                expected: tr * sr,
                got: matrix.rows() * matrix.cols(),
            });
        }
        if identification && (sr != tr || inverse_poly(&matrix).is_err()) {
            return Err(TowerError::NonInvertible(format!("{name} is flagged as an identification but is not invertible")));
        }
        Ok(PullbackMap { name: name.to_string(), source, target, matrix, identification })
    }

    /// Builds from the images of the elements of a source basis.
    pub fn from_basis_images(
        tower: &Tower,
        name: &str,
        source_basis: &Basis,
        target: SpaceId,
        images: &[DivClass],
        identification: bool,
    ) -> Result<Self, TowerError> {
        if images.len() != source_basis.classes.len() {
            return Err(TowerError::Length {
                what: format!("images for {name}"),
                expected: source_basis.classes.len(),
                got: images.len(),
            });
        }
        for img in images {
            tower.check_class(img, target)?;
        }
        let rows = tower.space(target).picard_rank();
        let img = PolyMatrix::from_cols_with_height(rows, images.iter().map(|d| d.coords.clone()).collect())?;
        let s_inv = inverse_poly(&source_basis.matrix())?;
        let matrix = img.mul(&s_inv)?;
        PullbackMap::from_generator_matrix(tower, name, source_basis.space, target, matrix, identification)
    }

    /// Builds from a matrix written against declared bases:
    /// column `j` is the target-basis expansion of the image of source-basis
    /// element `j`.
    pub fn from_declared_matrix(
        tower: &Tower,
        name: &str,
        source_basis: &Basis,
        target_basis: &Basis,
        declared: &PolyMatrix,
        identification: bool,
    ) -> Result<Self, TowerError> {
        let matrix = target_basis.matrix().mul(declared)?.mul(&inverse_poly(&source_basis.matrix())?)?;
        PullbackMap::from_generator_matrix(tower, name, source_basis.space, target_basis.space, matrix, identification)
    }

    /// Pullback along the structure morphisms from `parent` to a descendant.
    pub fn structure(tower: &Tower, name: &str, parent: SpaceId, child: SpaceId) -> Result<Self, TowerError> {
        let images = Basis::generators(tower, parent)
            .classes
            .iter()
            .map(|g| tower.lift(g, child))
            .collect::<Result<Vec<_>, _>>()?;
        PullbackMap::from_basis_images(tower, name, &Basis::generators(tower, parent), child, &images, false)
    }

    /// Restriction from `left ×_over right` to its diagonal, identified with
    /// `left`: each generator of the right factor goes to its counterpart in
    /// the left factor.
    pub fn diagonal(tower: &Tower, name: &str, product: SpaceId) -> Result<Self, TowerError> {
        let space = tower.space(product);
        let SpaceKind::FiberProduct { left, right, over } = space.kind else {
            return Err(TowerError::NotFiberProduct(space.name.clone()));
        };
        let k = tower.space(over).picard_rank();
        let l = tower.space(left).picard_rank();
        let r = tower.space(right).picard_rank();
        if l != r {
            return Err(TowerError::Invalid(format!("{}: the two factors have different Picard ranks", space.name)));
        }
        let mut m = PolyMatrix::zeros(l, space.picard_rank());
        for j in 0..space.picard_rank() {
            let target = if j < l { j } else { k + (j - l) };
            m.set(target, j, ParamPoly::one());
        }
        PullbackMap::from_generator_matrix(tower, name, product, left, m, false)
    }

    pub fn generator_matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// The matrix relative to declared bases (`T⁻¹·M·S`).
    pub fn matrix_in_bases(&self, source_basis: &Basis, target_basis: &Basis) -> Result<PolyMatrix, TowerError> {
        if source_basis.space != self.source || target_basis.space != self.target {
            return Err(TowerError::SpaceMismatch(format!("bases do not match the spaces of {}", self.name)));
        }
        Ok(inverse_poly(&target_basis.matrix())?.mul(&self.matrix)?.mul(&source_basis.matrix())?)
    }

    pub fn apply(&self, d: &DivClass) -> Result<DivClass, TowerError> {
        if d.space != self.source {
            return Err(TowerError::SpaceMismatch(format!("{} cannot be applied to a class on another space", self.name)));
        }
        Ok(DivClass { space: self.target, coords: self.matrix.mul_vec(&d.coords)? })
    }

    /// `then ∘ self`: first apply `self`, then `then`.
    pub fn compose(&self, then: &PullbackMap) -> Result<PullbackMap, TowerError> {
        if self.target != then.source {
            return Err(TowerError::SpaceMismatch(format!("{} cannot be followed by {}", self.name, then.name)));
        }
        Ok(PullbackMap {
            name: format!("{}∘{}", then.name, self.name),
            source: self.source,
            target: then.target,
            matrix: then.matrix.mul(&self.matrix)?,
            identification: self.identification && then.identification,
        })
    }

    pub fn inverse(&self) -> Result<PullbackMap, TowerError> {
        let inv = inverse_poly(&self.matrix).map_err(|e| match e {
            KernelError::Singular | KernelError::Shape(_) => {
                TowerError::NonInvertible(format!("{} is not invertible", self.name))
            }
            other => other.into(),
        })?;
        Ok(PullbackMap {
            name: format!("({})^-1", self.name),
            source: self.target,
            target: self.source,
            matrix: inv,
            identification: self.identification,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_square() && inverse_poly(&self.matrix).is_ok()
    }
}

/// One step of a transport: a map, possibly used in the inverse direction.
#[derive(Clone, Debug)]
pub struct TransportStep<'a> {
    pub map: &'a PullbackMap,
    pub inverted: bool,
}

/// Transports a class through a chain of maps, then reports its coordinates
/// relative to `final_basis` with the named exceptional coordinates removed.
///
/// Inverted steps must be identifications; dropped labels must name
/// `±` the exceptional generator of a blow-up.
pub fn transport_class(
    tower: &Tower,
    d: &DivClass,
    via: &[TransportStep<'_>],
    final_basis: &Basis,
    drop: &[String],
) -> Result<Vec<ParamPoly>, TowerError> {
    let mut cur = d.clone();
    for step in via {
        let map = if step.inverted {
            if !step.map.identification {
                return Err(TowerError::NonInvertible(format!(
                    "{} is not flagged as an identification and cannot be inverted",
                    step.map.name
                )));
            }
            step.map.inverse()?
        } else {
            step.map.clone()
        };
        cur = map.apply(&cur)?;
    }
    let coords = final_basis.coordinates(&cur)?;
    let space = tower.space(final_basis.space);
    let exc_index = match space.kind {
        SpaceKind::BlowUp { .. } => Some(space.picard_rank() - 1),
        _ => None,
    };
    let mut dropped = Vec::new();
    for label in drop {
        let idx = final_basis
            .index(label)
            .ok_or_else(|| TowerError::BadDrop(format!("{label} is not a label of the final basis")))?;
        let class = &final_basis.classes[idx];
        let is_exceptional = exc_index.is_some_and(|e| {
            class.coords.iter().enumerate().all(|(i, c)| {
                if i == e {
                    *c == ParamPoly::one() || *c == ParamPoly::int(-1)
                } else {
                    c.is_zero()
                }
            })
        });
        if !is_exceptional {
            return Err(TowerError::BadDrop(format!("{label} is not an exceptional class of {}", space.name)));
        }
        dropped.push(idx);
    }
    Ok(coords.into_iter().enumerate().filter(|(i, _)| !dropped.contains(i)).map(|(_, c)| c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::FormalBundle;

    fn two_factor() -> (Tower, SpaceId, SpaceId) {
        let mut t = Tower::new();
        let pt = t.add_formal_base("pt", &[], Some(vec![]), ParamPoly::zero()).unwrap();
        let f = FormalBundle::trivial(&t, pt, ParamPoly::int(3));
        let a = t.add_proj_bundle("A", f.clone(), "u").unwrap();
        let b = t.add_proj_bundle("B", f, "v").unwrap();
        let ab = t.add_fiber_product("AB", a, b, pt).unwrap();
        (t, a, ab)
    }

    #[test]
    fn diagonal_restriction() {
        let (t, a, ab) = two_factor();
        let d = PullbackMap::diagonal(&t, "diag", ab).unwrap();
        let v = t.generator(ab, "v").unwrap();
        assert_eq!(d.apply(&v).unwrap(), t.generator(a, "u").unwrap());
    }

    #[test]
    fn identification_must_invert() {
        let (t, _, ab) = two_factor();
        let m = PolyMatrix::zeros(2, 2);
        assert!(matches!(
            PullbackMap::from_generator_matrix(&t, "bad", ab, ab, m, true),
            Err(TowerError::NonInvertible(_))
        ));
    }

    #[test]
    fn basis_coordinates_round_trip() {
        let (t, _, ab) = two_factor();
        let u = t.generator(ab, "u").unwrap();
        let v = t.generator(ab, "v").unwrap();
        let b = Basis::new(&t, ab, vec!["p".into(), "q".into()], vec![u.add(&v).unwrap(), v.neg()]).unwrap();
        let coords = b.coordinates(&u).unwrap();
        assert_eq!(coords, vec![ParamPoly::one(), ParamPoly::one()]);
        assert_eq!(b.class(&coords).unwrap(), u);
        assert!(Basis::new(&t, ab, vec!["p".into(), "q".into()], vec![u.clone(), u]).is_err());
    }

    #[test]
    fn inverting_a_plain_map_in_transport_fails() {
        let (t, _, ab) = two_factor();
        let id = PullbackMap::from_generator_matrix(&t, "id", ab, ab, PolyMatrix::identity(2), false).unwrap();
        let d = t.generator(ab, "u").unwrap();
        let step = TransportStep { map: &id, inverted: true };
        assert!(matches!(
            transport_class(&t, &d, &[step], &Basis::generators(&t, ab), &[]),
            Err(TowerError::NonInvertible(_))
        ));
        let step = TransportStep { map: &id, inverted: false };
        assert!(matches!(
            transport_class(&t, &d, &[step], &Basis::generators(&t, ab), &["u".into()]),
            Err(TowerError::BadDrop(_))
        ));
    }
}
