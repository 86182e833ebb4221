//! Polynomials in the integer parameter `n`.
//!
//! Every coefficient that depends on the size of the symplectic space
//! (ranks like `2n - 2`, canonical coefficients like `1 - 2n`) is a
//! [`ParamPoly`]. Degrees are capped at [`DEGREE_CAP`]; anything larger
//! indicates runaway symbolic growth and is reported as an error.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{KernelError, Rat};

/// Largest degree in `n` any [`ParamPoly`] may reach.
pub const DEGREE_CAP: u32 = 4;

/// A polynomial in `n` with exact rational coefficients. Zero coefficients
/// are never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    coeffs: BTreeMap<u32, Rat>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        ParamPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = ParamPoly::zero();
        p.set(0, c);
        p
    }

    pub fn int(c: i64) -> Self {
        ParamPoly::constant(Rat::from_int(c))
    }

    /// The parameter `n` itself.
    pub fn n() -> Self {
        ParamPoly::lin(0, 1)
    }

    /// `c0 + c1·n` with integer coefficients.
    pub fn lin(c0: i64, c1: i64) -> Self {
        let mut p = ParamPoly::zero();
        p.set(0, Rat::from_int(c0));
        p.set(1, Rat::from_int(c1));
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(terms: I) -> Result<Self, KernelError>
    where
        I: IntoIterator<Item = (u32, Rat)>,
    {
        let mut p = ParamPoly::zero();
        for (e, c) in terms {
            if e > DEGREE_CAP {
                return Err(KernelError::DegreeCap { degree: e });
            }
            let cur = p.coeff(e);
            p.set(e, cur + c);
        }
        Ok(p)
    }

    fn set(&mut self, e: u32, c: Rat) {
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn coeff(&self, e: u32) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Iterates over the stored (nonzero) terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rat)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    /// The constant value when the polynomial does not depend on `n`.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        // Horner from the top degree down.
        let Some(deg) = self.degree() else {
            return Rat::zero();
        };
        let mut acc = Rat::zero();
        for e in (0..=deg).rev() {
            acc = &acc * at + self.coeff(e);
        }
        acc
    }

    pub fn eval_int(&self, at: i64) -> Rat {
        self.eval(&Rat::from_int(at))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut p = ParamPoly::zero();
        for (e, v) in self.terms() {
            p.set(e, v * c);
        }
        p
    }

    /// Product, failing if the result would exceed [`DEGREE_CAP`].
    pub fn checked_mul(&self, other: &ParamPoly) -> Result<Self, KernelError> {
        let mut p = ParamPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e = e1 + e2;
                if e > DEGREE_CAP {
                    return Err(KernelError::DegreeCap { degree: e });
                }
                let cur = p.coeff(e);
                p.set(e, cur + c1 * c2);
            }
        }
        Ok(p)
    }

    /// Lagrange interpolation through `(x, y)` points with distinct `x`.
    pub fn interpolate(points: &[(Rat, Rat)]) -> Result<Self, KernelError> {
        let mut result = vec![Rat::zero(); points.len()];
        for (i, (xi, yi)) in points.iter().enumerate() {
            // basis polynomial prod_{j != i} (n - xj) / (xi - xj), dense form
            let mut basis = vec![Rat::one()];
            let mut denom = Rat::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![Rat::zero(); basis.len() + 1];
                for (k, b) in basis.iter().enumerate() {
                    next[k + 1] += b;
                    next[k] -= &(b * xj);
                }
                basis = next;
                denom *= &(xi - xj);
            }
            let factor = yi.checked_div(&denom).map_err(|_| {
                KernelError::Interpolation("interpolation nodes must be distinct".into())
            })?;
            for (k, b) in basis.iter().enumerate() {
                result[k] += &(b * &factor);
            }
        }
        ParamPoly::from_terms(
            result
                .into_iter()
                .enumerate()
                .map(|(e, c)| (e as u32, c)),
        )
    }

    /// True iff `p(k) < 0` for every integer `k >= start`.
    ///
    /// Decided exactly: beyond the Cauchy root bound the sign is constant, so
    /// it suffices to test the finitely many integers up to that bound.
    pub fn negative_for_all_from(&self, start: i64) -> bool {
        let Some(deg) = self.degree() else {
            return false;
        };
        if deg == 0 {
            return self.coeff(0).is_negative();
        }
        let lead = self.coeff(deg);
        let mut bound = Rat::zero();
        for e in 0..deg {
            let ratio = (&self.coeff(e) / &lead).abs();
            if ratio > bound {
                bound = ratio;
            }
        }
        let bound = bound + Rat::one();
        let upper = bound.ceil().to_i64().unwrap_or(i64::MAX).max(start) + 1;
        (start..=upper).all(|k| self.eval_int(k).is_negative())
    }

    /// Human-readable form, highest degree first, e.g. `2n - 4`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var = match e {
                0 => String::new(),
                1 => "n".to_string(),
                k => format!("n^{k}"),
            };
            if *e == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&var);
            } else if mag.is_integer() {
                out.push_str(&format!("{mag}{var}"));
            } else {
                out.push_str(&format!("({mag}){var}"));
            }
        }
        out
    }
}

impl From<Rat> for ParamPoly {
    fn from(c: Rat) -> Self {
        ParamPoly::constant(c)
    }
}

impl From<i64> for ParamPoly {
    fn from(c: i64) -> Self {
        ParamPoly::int(c)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({})", self.pretty())
    }
}

impl Add<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut p = self.clone();
        for (e, c) in rhs.terms() {
            let cur = p.coeff(e);
            p.set(e, cur + c);
        }
        p
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: ParamPoly) -> ParamPoly {
        &self + &rhs
    }
}

impl Sub<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        self + &(-rhs)
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: ParamPoly) -> ParamPoly {
        &self - &rhs
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.scale(&Rat::from_int(-1))
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl Serialize for ParamPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            m.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for ParamPoly {
    /// Accepts the canonical coefficient map `{"0": "c0", "1": "c1"}` or, as a
    /// shorthand for constants, a bare rational string such as `"-3/2"`.
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = ParamPoly;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a coefficient map {\"exponent\": \"p/q\"} or a rational string")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ParamPoly, E> {
                let c: Rat = v.parse().map_err(E::custom)?;
                Ok(ParamPoly::constant(c))
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<ParamPoly, A::Error> {
                let mut terms = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, String>()? {
                    let e: u32 = k
                        .trim()
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad exponent {k:?}")))?;
                    let c: Rat = v.parse().map_err(de::Error::custom)?;
                    terms.push((e, c));
                }
                ParamPoly::from_terms(terms).map_err(de::Error::custom)
            }
        }

        d.deserialize_any(PolyVisitor)
    }
}

/// Decides `p == q` as polynomials.
///
/// The answer comes from coefficient comparison and is cross-validated by
/// evaluating at `degree_bound + 1` distinct integers `>= 3`; a disagreement
/// between the two methods is reported as an internal error.
pub fn poly_identity_check(
    p: &ParamPoly,
    q: &ParamPoly,
    degree_bound: u32,
) -> Result<bool, KernelError> {
    for poly in [p, q] {
        if let Some(d) = poly.degree() {
            if d > degree_bound {
                return Err(KernelError::DegreeBoundExceeded { degree: d, bound: degree_bound });
            }
        }
    }
    let by_coefficients = p == q;
    let by_evaluation = (0..=degree_bound as i64).all(|i| p.eval_int(3 + i) == q.eval_int(3 + i));
    if by_coefficients != by_evaluation {
        return Err(KernelError::CrossValidation(format!(
            "coefficient comparison and evaluation disagree on {p} vs {q}"
        )));
    }
    Ok(by_coefficients)
}

/// Exact value of `binomial(n, k)` for small arguments.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64) -> Rat {
        Rat::from_int(a)
    }

    #[test]
    fn identity_examples() {
        let p = &ParamPoly::n() + &ParamPoly::n();
        let q = ParamPoly::lin(0, 2);
        assert!(poly_identity_check(&p, &q, 1).unwrap());
        let p = ParamPoly::lin(1, -2);
        let q = ParamPoly::lin(3, -2);
        assert!(!poly_identity_check(&p, &q, 1).unwrap());
    }

    #[test]
    fn identity_bound_enforced() {
        let sq = ParamPoly::n().checked_mul(&ParamPoly::n()).unwrap();
        assert!(matches!(
            poly_identity_check(&sq, &sq, 1),
            Err(KernelError::DegreeBoundExceeded { .. })
        ));
    }

    #[test]
    fn evaluation_example() {
        let p = ParamPoly::lin(-4, 2);
        let vals: Vec<Rat> = (3..=5).map(|k| p.eval_int(k)).collect();
        assert_eq!(vals, vec![r(2), r(4), r(6)]);
    }

    #[test]
    fn degree_cap() {
        let n2 = ParamPoly::n().checked_mul(&ParamPoly::n()).unwrap();
        let n4 = n2.checked_mul(&n2).unwrap();
        assert_eq!(n4.degree(), Some(4));
        assert!(matches!(
            n4.checked_mul(&ParamPoly::n()),
            Err(KernelError::DegreeCap { degree: 5 })
        ));
        assert!(ParamPoly::from_terms([(5, r(1))]).is_err());
    }

    #[test]
    fn no_stored_zeros() {
        let p = &ParamPoly::lin(1, 2) - &ParamPoly::lin(1, 2);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        assert_eq!(p, ParamPoly::zero());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let target = ParamPoly::from_terms([(0, r(1)), (2, Rat::new(1, 2).unwrap())]).unwrap();
        let pts: Vec<(Rat, Rat)> = (3..6).map(|k| (r(k), target.eval_int(k))).collect();
        assert_eq!(ParamPoly::interpolate(&pts).unwrap(), target);
    }

    #[test]
    fn pretty_printing() {
        assert_eq!(ParamPoly::lin(-4, 2).pretty(), "2n - 4");
        assert_eq!(ParamPoly::lin(1, -2).pretty(), "-2n + 1");
        assert_eq!(ParamPoly::zero().pretty(), "0");
        assert_eq!(ParamPoly::int(-1).pretty(), "-1");
    }

    #[test]
    fn serde_coefficient_map() {
        let p = ParamPoly::lin(3, -2);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"0":"3","1":"-2"}"#);
        assert_eq!(serde_json::from_str::<ParamPoly>(&js).unwrap(), p);
        assert_eq!(serde_json::from_str::<ParamPoly>("\"5/2\"").unwrap(),
            ParamPoly::constant(Rat::new(5, 2).unwrap()));
        assert!(serde_json::from_str::<ParamPoly>(r#"{"7":"1"}"#).is_err());
    }

    #[test]
    fn negativity_verdicts() {
        assert!(ParamPoly::lin(4, -2).negative_for_all_from(3));
        assert!(ParamPoly::int(-1).negative_for_all_from(3));
        assert!(!ParamPoly::zero().negative_for_all_from(3));
        // 6 - 2n is zero at n = 3
        assert!(!ParamPoly::lin(6, -2).negative_for_all_from(3));
        // (n-4)(n-5) = n^2 - 9n + 20 dips below zero nowhere at integers
        let p = ParamPoly::from_terms([(0, r(20)), (1, r(-9)), (2, r(1))]).unwrap();
        assert!(!(-&p).negative_for_all_from(3));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(4, 0), BigInt::from(1));
        assert_eq!(binomial(2, 3), BigInt::from(0));
    }
}
