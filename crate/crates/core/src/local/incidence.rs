//! Brute-force enumerations over a small prime field: the incidence locus
//! with its swap involution, and the isotropy/Yoneda equivalence.

use serde::{Deserialize, Serialize};

use super::LocalModelError;
use crate::kernel::PrimeFieldConfig;

/// Largest number of projective points enumerated in one run.
const MAX_POINTS: usize = 5_000;

/// The standard symplectic form on `F_p^m`, coordinates `(x_1..x_h, y_1..y_h)`.
pub fn omega_fp(cfg: &PrimeFieldConfig, v: &[u64], w: &[u64]) -> u64 {
    let h = v.len() / 2;
    let mut acc = 0;
    for i in 0..h {
        acc = cfg.add(acc, cfg.mul(v[i], w[h + i]));
        acc = cfg.sub(acc, cfg.mul(v[h + i], w[i]));
    }
    acc
}

/// All vectors of `F_p^dim`, in lexicographic order.
fn all_vectors(cfg: &PrimeFieldConfig, dim: usize) -> Vec<Vec<u64>> {
    let p = cfg.modulus();
    let total = (p as usize).pow(dim as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0; dim];
            for slot in v.iter_mut().rev() {
                *slot = (idx % p as usize) as u64;
                idx /= p as usize;
            }
            v
        })
        .collect()
}

/// Normalized representatives (first nonzero coordinate 1) of `ℙ^{dim−1}(F_p)`.
pub fn projective_points(cfg: &PrimeFieldConfig, dim: usize) -> Vec<Vec<u64>> {
    all_vectors(cfg, dim)
        .into_iter()
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceReport {
    pub m: usize,
    pub p: u64,
    pub projective_points: usize,
    pub incidence_points: usize,
    pub fixed_points: usize,
    pub diagonal_points: usize,
    /// Every fixed point of the swap is diagonal and vice versa.
    pub fixed_equals_diagonal: bool,
    /// Every diagonal point satisfies the incidence condition.
    pub diagonal_in_incidence: bool,
}

/// Enumerates `{([v],[w]) : ω(v,w) = 0} ⊂ ℙ^{m−1} × ℙ^{m−1}` over `F_p` and
/// the fixed points of the involution `([v],[w]) ↦ ([w],[v])`.
pub fn fixed_locus_incidence(m: usize, cfg: &PrimeFieldConfig) -> Result<IncidenceReport, LocalModelError> {
    if !m.is_multiple_of(2) || m == 0 {
        return Err(LocalModelError::OddDimension(m));
    }
    if m > 6 {
        return Err(LocalModelError::TooLarge(format!("m = {m} exceeds the enumeration limit 6")));
    }
    let points = projective_points(cfg, m);
    if points.len() > MAX_POINTS {
        return Err(LocalModelError::TooLarge(format!(
            "{} projective points exceed the enumeration limit {MAX_POINTS}",
            points.len()
        )));
    }
    let mut incidence = 0;
    let mut fixed = 0;
    let mut fixed_on_diagonal = 0;
    for v in &points {
        for w in &points {
            if omega_fp(cfg, v, w) != 0 {
                continue;
            }
            incidence += 1;
            // The swap image stays in the locus because ω is alternating.
            debug_assert_eq!(omega_fp(cfg, w, v), 0);
            let swapped = (w, v);
            if swapped == (v, w) {
                fixed += 1;
                fixed_on_diagonal += usize::from(v == w);
            }
        }
    }
    let diagonal_in_incidence = points.iter().all(|v| omega_fp(cfg, v, v) == 0);
    let diagonal = points.len();
    Ok(IncidenceReport {
        m,
        p: cfg.modulus(),
        projective_points: points.len(),
        incidence_points: incidence,
        fixed_points: fixed,
        diagonal_points: diagonal,
        fixed_equals_diagonal: fixed_on_diagonal == fixed && fixed == diagonal,
        diagonal_in_incidence,
    })
}

/// Row-echelon basis of the span of `vectors` over `F_p`.
fn span_basis(cfg: &PrimeFieldConfig, vectors: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = vectors.to_vec();
    let Some(width) = rows.first().map(Vec::len) else {
        return rows;
    };
    let mut basis = Vec::new();
    for col in 0..width {
        let Some(pos) = rows.iter().position(|r| r[col] != 0) else {
            continue;
        };
        let pivot = rows.remove(pos);
        let inv = cfg.inv(pivot[col]).expect("pivot nonzero");
        let pivot: Vec<u64> = pivot.iter().map(|&x| cfg.mul(x, inv)).collect();
        for r in rows.iter_mut() {
            let f = r[col];
            if f != 0 {
                for (x, &y) in r.iter_mut().zip(&pivot) {
                    *x = cfg.sub(*x, cfg.mul(f, y));
                }
            }
        }
        basis.push(pivot);
    }
    basis
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub homomorphisms: usize,
    pub isotropic: usize,
    pub agreements: usize,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.agreements == self.homomorphisms
    }
}

/// Checks, for every `φ ∈ Hom(W, F_p^m)`, that the pulled-back form vanishes
/// exactly when the image of `φ` is isotropic. Isotropy is decided on an
/// echelon basis of the image, independently of the pulled-back form.
pub fn isotropy_equivalence_fp(m: usize, cfg: &PrimeFieldConfig) -> Result<EquivalenceReport, LocalModelError> {
    if !m.is_multiple_of(2) || m == 0 {
        return Err(LocalModelError::OddDimension(m));
    }
    let count = (cfg.modulus() as usize).checked_pow(3 * m as u32);
    if count.is_none_or(|c| c > 2_000_000) {
        return Err(LocalModelError::TooLarge(format!("Hom(W, F_{}^{m}) is too large", cfg.modulus())));
    }
    let vectors = all_vectors(cfg, m);
    let mut report = EquivalenceReport { homomorphisms: 0, isotropic: 0, agreements: 0 };
    for a in &vectors {
        for b in &vectors {
            for c in &vectors {
                let form_zero = omega_fp(cfg, a, b) == 0 && omega_fp(cfg, a, c) == 0 && omega_fp(cfg, b, c) == 0;
                let basis = span_basis(cfg, &[a.clone(), b.clone(), c.clone()]);
                let isotropic = basis
                    .iter()
                    .enumerate()
                    .all(|(i, u)| basis[i + 1..].iter().all(|v| omega_fp(cfg, u, v) == 0));
                report.homomorphisms += 1;
                report.isotropic += usize::from(isotropic);
                report.agreements += usize::from(isotropic == form_zero);
            }
        }
    }
    Ok(report)
}
