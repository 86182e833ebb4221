//! Line-bundle cohomology on `ℙ²` and `ℙ² × ℙ²`.

use num_traits::ToPrimitive;

use super::TowerError;
use crate::kernel::binomial;

/// `h^i(ℙ², O(d))`: `C(d+2, 2)` in degree 0 for `d ≥ 0`, `C(−d−1, 2)` in
/// degree 2 for `d ≤ −3`, and zero otherwise.
pub fn h_p2(d: i64, i: u32) -> u64 {
    let v = match i {
        0 if d >= 0 => binomial(d + 2, 2),
        2 if d <= -3 => binomial(-d - 1, 2),
        _ => 0.into(),
    };
    v.to_u64().expect("small binomial")
}

/// `h^q(ℙ² × ℙ², O(a, b))` by the Künneth formula.
pub fn coh_dim_product_proj(a: i64, b: i64, q: u32) -> Result<u64, TowerError> {
    if a.abs() > 10 || b.abs() > 10 {
        return Err(TowerError::OutOfRange(format!("degrees ({a}, {b}) must satisfy |a|, |b| <= 10")));
    }
    if q > 4 {
        return Err(TowerError::OutOfRange(format!("cohomological degree {q} exceeds 4")));
    }
    Ok((0..=q).map(|i| h_p2(a, i) * h_p2(b, q - i)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(coh_dim_product_proj(1, 1, 0).unwrap(), 9);
        for q in 1..=4 {
            assert_eq!(coh_dim_product_proj(1, 1, q).unwrap(), 0);
        }
        assert_eq!(coh_dim_product_proj(0, 0, 0).unwrap(), 1);
        assert_eq!(coh_dim_product_proj(-3, -3, 4).unwrap(), 1);
        assert_eq!(coh_dim_product_proj(2, -3, 2).unwrap(), 6);
        assert!(coh_dim_product_proj(11, 0, 0).is_err());
        assert!(coh_dim_product_proj(0, 0, 5).is_err());
    }
}
