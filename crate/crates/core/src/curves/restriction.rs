//! Kernels of restriction maps on `N¹` and their annihilators in `N₁`.

use super::{pairing_table, CurveClass, CurveError};
use crate::kernel::{kernel_basis, Rat, RatMatrix};
use crate::tower::{DivClass, PullbackMap};

#[derive(Clone, Debug, PartialEq)]
pub struct RestrictionKernel {
    /// Basis of the kernel, in source generator coordinates.
    pub kernel: Vec<Vec<Rat>>,
    /// Basis of the annihilator of the kernel inside the span of
    /// `curve_basis`, in coordinates relative to that basis.
    pub perp: Vec<Vec<Rat>>,
}

/// Kernel of the restriction `N¹(source) → N¹(target)` evaluated at `n`,
/// and the curves (combinations of `curve_basis`) orthogonal to it.
pub fn restriction_kernel(map: &PullbackMap, curve_basis: &[CurveClass], n: &Rat) -> Result<RestrictionKernel, CurveError> {
    let m = map.generator_matrix().eval(n);
    let kernel = kernel_basis(&m);
    if let Some(c) = curve_basis.iter().find(|c| c.space != map.source) {
        return Err(CurveError::SpaceMismatch(format!("{} does not live on the source of {}", c.label, map.name)));
    }
    let divisors: Vec<DivClass> = kernel
        .iter()
        .map(|k| DivClass { space: map.source, coords: crate::kernel::to_poly_vec(k) })
        .collect();
    let table = pairing_table(curve_basis, &divisors)?.eval(n);
    // y ⟂ kernel  ⇔  Σ yᵢ (Γᵢ·k) = 0 for every kernel vector k.
    let perp = if kernel.is_empty() {
        (0..curve_basis.len())
            .map(|i| (0..curve_basis.len()).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect()
    } else {
        kernel_basis(&RatMatrix::from_rows(table.transpose().to_rows())?)
    };
    Ok(RestrictionKernel { kernel, perp })
}
