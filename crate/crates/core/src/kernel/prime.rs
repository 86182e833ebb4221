//! Small prime fields, used by brute-force enumeration oracles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{KernelError, Rat};

/// Configuration of a prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFieldConfig {
    p: u64,
}

impl Default for PrimeFieldConfig {
    /// `F_3`: the smallest odd prime, so projective enumerations stay tiny.
    fn default() -> Self {
        PrimeFieldConfig { p: 3 }
    }
}

impl PrimeFieldConfig {
    /// Largest modulus accepted; keeps every product inside `u64`.
    pub const MAX_MODULUS: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self, KernelError> {
        if !(2..=Self::MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(KernelError::NotPrime(p));
        }
        Ok(PrimeFieldConfig { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_int(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    /// Inverse by Fermat's little theorem; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        Some(acc)
    }

    /// Reduction of a rational, or `None` when `p` divides the denominator.
    pub fn reduce_rat(&self, r: &Rat) -> Option<u64> {
        let p = BigInt::from(self.p);
        let num = r.numer().mod_floor(&p).to_u64()?;
        let den = r.denom().mod_floor(&p).to_u64()?;
        debug_assert!(!r.denom().is_negative());
        Some(self.mul(num, self.inv(den)?))
    }

    /// All elements `0..p`.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_three() {
        assert_eq!(PrimeFieldConfig::default().modulus(), 3);
    }

    #[test]
    fn rejects_composites() {
        assert!(PrimeFieldConfig::new(4).is_err());
        assert!(PrimeFieldConfig::new(1).is_err());
        assert!(PrimeFieldConfig::new(7).is_ok());
    }

    #[test]
    fn inverses() {
        let f = PrimeFieldConfig::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), None);
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeFieldConfig::default();
        assert_eq!(f.reduce_rat(&Rat::new(1, 2).unwrap()), Some(2));
        assert_eq!(f.reduce_rat(&Rat::new(-1, 1).unwrap()), Some(2));
        assert_eq!(f.reduce_rat(&Rat::new(1, 3).unwrap()), None);
    }
}
