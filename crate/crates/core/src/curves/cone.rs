//! Finitely generated cones and exact supporting-functional search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use serde::{Deserialize, Serialize};

use super::{CurveClass, CurveError};
use crate::kernel::{dot, kernel_basis, rank, Rat, RatMatrix};

/// Height bound used when none is given.
pub const DEFAULT_HEIGHT_BOUND: u32 = 8;

/// A cone `ℝ⁺g₁ + … + ℝ⁺g_k` in a lattice of dimension `dim`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cone {
    pub dim: usize,
    pub labels: Vec<String>,
    pub generators: Vec<Vec<Rat>>,
}

impl Cone {
    pub fn new(dim: usize, labels: Vec<String>, generators: Vec<Vec<Rat>>) -> Result<Self, CurveError> {
        if labels.len() != generators.len() {
            return Err(CurveError::InvalidCone("one label per generator is required".into()));
        }
        for (l, g) in labels.iter().zip(&generators) {
            if g.len() != dim {
                return Err(CurveError::Length { what: format!("cone generator {l}"), expected: dim, got: g.len() });
            }
            if g.iter().all(Rat::is_zero) {
                return Err(CurveError::InvalidCone(format!("generator {l} is zero")));
            }
        }
        Ok(Cone { dim, labels, generators })
    }

    /// The cone spanned by curve classes evaluated at `n`.
    pub fn from_curves(curves: &[CurveClass], n: &Rat) -> Result<Self, CurveError> {
        let dim = curves.first().map_or(0, |c| c.vector.len());
        Cone::new(dim, curves.iter().map(|c| c.label.clone()).collect(), curves.iter().map(|c| c.eval(n)).collect())
    }

    /// True iff both cones have the same rays (generators up to positive
    /// rescaling), ignoring labels and order.
    pub fn same_rays(&self, other: &Cone) -> bool {
        let mut used = vec![false; other.generators.len()];
        if self.dim != other.dim || self.generators.len() != other.generators.len() {
            return false;
        }
        for g in &self.generators {
            match other.generators.iter().enumerate().find(|(i, h)| !used[*i] && positively_proportional(g, h)) {
                Some((i, _)) => used[i] = true,
                None => return false,
            }
        }
        true
    }

    /// Rank of the generator set.
    pub fn span_rank(&self) -> usize {
        if self.generators.is_empty() {
            return 0;
        }
        rank(&RatMatrix::from_rows(self.generators.clone()).expect("rectangular"))
    }
}

/// `a = t·b` for some `t > 0`.
pub fn positively_proportional(a: &[Rat], b: &[Rat]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut ratio: Option<Rat> = None;
    for (x, y) in a.iter().zip(b) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (false, false) => {
                let t = x.checked_div(y).expect("nonzero");
                if !t.is_positive() {
                    return false;
                }
                match &ratio {
                    Some(r) if *r != t => return false,
                    _ => ratio = Some(t),
                }
            }
            _ => return false,
        }
    }
    ratio.is_some()
}

/// A nonnegative combination of the non-face generators that lies in the
/// span of the face: `Σ λ_g·g = Σ μ_f·f` with `λ ≥ 0`, `λ ≠ 0`. Its
/// existence rules out any supporting functional (Gordan's alternative).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DependencyWitness {
    pub lambda: Vec<(String, Rat)>,
    pub mu: Vec<(String, Rat)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExtremalOutcome {
    /// An integral functional vanishing on the face and positive on every
    /// other generator.
    Certified { functional: Vec<i64>, values: Vec<Rat>, height: u32 },
    /// No functional of height at most `bound`; a dependency witness is
    /// attached when one exists.
    Inconclusive { bound: u32, witness: Option<DependencyWitness> },
}

impl ExtremalOutcome {
    pub fn functional(&self) -> Option<&[i64]> {
        match self {
            ExtremalOutcome::Certified { functional, .. } => Some(functional),
            ExtremalOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Clears denominators: a positive multiple of `v` with integer entries.
fn integral(v: &[Rat]) -> Vec<i128> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .map(|x| (x.numer() * (&lcm / x.denom())).to_i128().expect("small cone generators"))
        .collect()
}

fn pair(d: &[i64], g: &[i128]) -> i128 {
    d.iter().zip(g).map(|(a, b)| *a as i128 * b).sum()
}

fn check_face(cone: &Cone, face: &[usize]) -> Result<(), CurveError> {
    for (i, f) in face.iter().enumerate() {
        if *f >= cone.generators.len() {
            return Err(CurveError::InvalidCone(format!("face index {f} is not a generator")));
        }
        if face[..i].contains(f) {
            return Err(CurveError::InvalidCone(format!("face index {f} is repeated")));
        }
    }
    Ok(())
}

/// Re-evaluates a functional: zero on the face, positive elsewhere.
pub fn verify_certificate(cone: &Cone, face: &[usize], functional: &[i64]) -> bool {
    if functional.len() != cone.dim || check_face(cone, face).is_err() {
        return false;
    }
    cone.generators.iter().enumerate().all(|(i, g)| {
        let v = pair(functional, &integral(g));
        if face.contains(&i) {
            v == 0
        } else {
            v > 0
        }
    })
}

/// Advances `v` to the next vector of `[−h, h]^d` in lexicographic order.
fn next_in_box(v: &mut [i64], h: i64) -> bool {
    for i in (0..v.len()).rev() {
        if v[i] < h {
            v[i] += 1;
            for x in &mut v[i + 1..] {
                *x = -h;
            }
            return true;
        }
    }
    false
}

/// Exhaustive search for a supporting functional of `face`, by increasing
/// height (max-norm) and then lexicographically; the first hit is returned.
pub fn extremal_certificate(cone: &Cone, face: &[usize], bound: u32) -> Result<ExtremalOutcome, CurveError> {
    check_face(cone, face)?;
    let ints: Vec<Vec<i128>> = cone.generators.iter().map(|g| integral(g)).collect();
    let accepts = |d: &[i64]| {
        ints.iter().enumerate().all(|(i, g)| {
            let v = pair(d, g);
            if face.contains(&i) {
                v == 0
            } else {
                v > 0
            }
        })
    };
    for h in 0..=bound as i64 {
        let mut d = vec![-h; cone.dim];
        loop {
            if d.iter().any(|x| x.abs() == h)
                && accepts(&d) {
                    let dr: Vec<Rat> = d.iter().map(|&x| Rat::from_int(x)).collect();
                    let values = cone.generators.iter().map(|g| dot(&dr, g)).collect();
                    return Ok(ExtremalOutcome::Certified { functional: d, values, height: h as u32 });
                }
            if !next_in_box(&mut d, h) {
                break;
            }
        }
    }
    Ok(ExtremalOutcome::Inconclusive { bound, witness: dependency_witness(cone, face) })
}

/// Searches subsets of the non-face generators, smallest first, for a
/// minimal positive dependency modulo the span of the face.
fn dependency_witness(cone: &Cone, face: &[usize]) -> Option<DependencyWitness> {
    let others: Vec<usize> = (0..cone.generators.len()).filter(|i| !face.contains(i)).collect();
    let k = others.len();
    if k > 16 {
        return None;
    }
    let mut subsets: Vec<u32> = (1..(1u32 << k)).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    for mask in subsets {
        let chosen: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| others[b]).collect();
        let cols: Vec<Vec<Rat>> = chosen.iter().chain(face).map(|&i| cone.generators[i].clone()).collect();
        let m = RatMatrix::from_cols_with_height(cone.dim, cols).expect("consistent lengths");
        let ker = kernel_basis(&m);
        let projected: Vec<Vec<Rat>> = ker.iter().map(|v| v[..chosen.len()].to_vec()).collect();
        let nonzero: Vec<&Vec<Rat>> = ker.iter().filter(|v| v[..chosen.len()].iter().any(|x| !x.is_zero())).collect();
        if nonzero.is_empty() {
            continue;
        }
        let proj_rank = rank(&RatMatrix::from_rows(projected).expect("rectangular"));
        if proj_rank != 1 {
            continue;
        }
        let v = nonzero[0];
        let lam = &v[..chosen.len()];
        if !(lam.iter().all(Rat::is_positive) || lam.iter().all(Rat::is_negative)) {
            continue;
        }
        // Normalized so that the first coefficient is 1.
        let sign = lam[0].recip().expect("nonzero");
        let lambda = chosen.iter().zip(lam).map(|(&i, x)| (cone.labels[i].clone(), x * &sign)).collect();
        let mu = face
            .iter()
            .zip(&v[chosen.len()..])
            .map(|(&i, x)| (cone.labels[i].clone(), -(x * &sign)))
            .collect();
        return Some(DependencyWitness { lambda, mu });
    }
    None
}

impl std::fmt::Display for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .labels
            .iter()
            .zip(&self.generators)
            .map(|(l, g)| format!("R+{l}({})", g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_int(x)).collect()
    }

    fn table_cone() -> Cone {
        Cone::new(
            4,
            vec!["e1".into(), "e2".into(), "s".into(), "g".into()],
            vec![r(&[0, 1, 0, 1]), r(&[0, 0, 1, 1]), r(&[1, -1, -1, -1]), r(&[0, 0, 0, -1])],
        )
        .unwrap()
    }

    #[test]
    fn whole_cone_face_gets_zero_functional() {
        let c = table_cone();
        let out = extremal_certificate(&c, &[0, 1, 2, 3], 2).unwrap();
        assert_eq!(out.functional(), Some(&[0i64, 0, 0, 0][..]));
    }

    #[test]
    fn interior_generator_is_inconclusive_with_witness() {
        let c = Cone::new(2, vec!["a".into(), "b".into(), "c".into()], vec![r(&[1, 0]), r(&[1, 1]), r(&[1, -1])]).unwrap();
        match extremal_certificate(&c, &[0], 8).unwrap() {
            ExtremalOutcome::Inconclusive { witness: Some(w), .. } => {
                assert_eq!(w.lambda, vec![("b".to_string(), Rat::one()), ("c".to_string(), Rat::one())]);
                assert_eq!(w.mu, vec![("a".to_string(), Rat::from_int(2))]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ray_comparison() {
        let a = Cone::new(1, vec!["x".into()], vec![r(&[2])]).unwrap();
        let b = Cone::new(1, vec!["y".into()], vec![r(&[1])]).unwrap();
        let c = Cone::new(1, vec!["z".into()], vec![r(&[-1])]).unwrap();
        assert!(a.same_rays(&b));
        assert!(!a.same_rays(&c));
        assert!(Cone::new(1, vec!["0".into()], vec![r(&[0])]).is_err());
    }
}
