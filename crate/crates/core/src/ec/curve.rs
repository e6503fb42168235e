use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::finite::{count_cubic_points, FiniteCurve, MAX_COUNTING_PRIME};
use super::frobenius::FrobeniusData;
use crate::arith::{factor_big, factor_u64, is_prime, reduce_big};
use crate::error::{Error, Result};

/// Standard quantities b2, b4, b6, b8 of a Weierstrass model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BInvariants {
    pub b2: BigInt,
    pub b4: BigInt,
    pub b6: BigInt,
    pub b8: BigInt,
}

impl BInvariants {
    pub fn from_coeffs([a1, a2, a3, a4, a6]: &[BigInt; 5]) -> Self {
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        BInvariants { b2, b4, b6, b8 }
    }

    pub fn discriminant(&self) -> BigInt {
        let BInvariants { b2, b4, b6, b8 } = self;
        -(b2 * b2 * b8) - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }

    pub fn c4(&self) -> BigInt {
        &self.b2 * &self.b2 - 24 * &self.b4
    }

    pub fn c6(&self) -> BigInt {
        let b2 = &self.b2;
        -(b2 * b2 * b2) + 36 * b2 * &self.b4 - 216 * &self.b6
    }
}

/// Weierstrass discriminant of `[a1, a2, a3, a4, a6]`; zero for singular models.
pub fn discriminant(coeffs: &[BigInt; 5]) -> BigInt {
    BInvariants::from_coeffs(coeffs).discriminant()
}

/// An elliptic curve over the rationals, `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
///
/// The model is used exactly as given: no minimal model is computed, so the
/// primes of bad reduction seen here are those dividing the discriminant of
/// this particular model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCurve {
    label: Option<String>,
    coeffs: [BigInt; 5],
    conductor: Option<u64>,
    discriminant: BigInt,
}

impl RationalCurve {
    pub fn new(coeffs: [BigInt; 5], label: Option<String>, conductor: Option<u64>) -> Result<Self> {
        let discriminant = discriminant(&coeffs);
        if discriminant.is_zero() {
            return Err(Error::Singular);
        }
        if let Some(n) = conductor {
            if n == 0 {
                return Err(Error::InvalidArgument("conductor must be positive".into()));
            }
            for (p, _) in factor_u64(n) {
                if !discriminant.is_multiple_of(&BigInt::from(p)) {
                    return Err(Error::ConductorMismatch { prime: p });
                }
            }
        }
        Ok(RationalCurve { label, coeffs, conductor, discriminant })
    }

    /// Unlabelled curve from small coefficients, without a conductor.
    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(BigInt::from), None, None)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn coeffs(&self) -> &[BigInt; 5] {
        &self.coeffs
    }

    pub fn conductor(&self) -> Option<u64> {
        self.conductor
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn b_invariants(&self) -> BInvariants {
        BInvariants::from_coeffs(&self.coeffs)
    }

    /// Primes dividing the discriminant of this model, ascending.
    pub fn bad_primes(&self) -> Vec<BigInt> {
        factor_big(self.discriminant.magnitude())
            .into_iter()
            .map(|(p, _)| BigInt::from(p))
            .collect()
    }

    /// The conductor if known, else `|Δ|` of this model (same prime support
    /// as the conductor for minimal models, possibly more otherwise).
    pub fn level_or_discriminant(&self) -> BigInt {
        match self.conductor {
            Some(n) => BigInt::from(n),
            None => self.discriminant.abs(),
        }
    }

    pub fn has_good_reduction(&self, p: u64) -> bool {
        !self.discriminant.is_multiple_of(&BigInt::from(p))
    }

    pub fn reduce_mod_p(&self, p: u64) -> Result<FiniteCurve> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !self.has_good_reduction(p) {
            return Err(Error::BadReduction(p));
        }
        if p > MAX_COUNTING_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        let a = self.coeffs.clone().map(|c| reduce_big(&c, p));
        Ok(FiniteCurve::new(p, a))
    }

    /// Frobenius data at a prime of good reduction.
    pub fn ap(&self, p: u64) -> Result<FrobeniusData> {
        let count = self.reduce_mod_p(p)?.count_points();
        Ok(FrobeniusData::from_count(p, count))
    }

    /// `p + 1 - #C(F_p)` where `C` is the (possibly singular) reduction of
    /// this model, counting every projective point.
    ///
    /// At good primes this is the Frobenius trace. At bad primes it equals the
    /// newform coefficient (1, -1 or 0 for split multiplicative, non-split
    /// multiplicative, additive) provided the model is minimal at `p`.
    pub fn reduction_trace(&self, p: u64) -> Result<i64> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_COUNTING_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        let a = self.coeffs.clone().map(|c| reduce_big(&c, p));
        let count = count_cubic_points(p, &a);
        Ok(p as i64 + 1 - count as i64)
    }
}

impl fmt::Display for RationalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.coeffs;
        if let Some(l) = &self.label {
            write!(f, "{l} ")?;
        }
        write!(f, "[{a1},{a2},{a3},{a4},{a6}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(a: [i64; 5]) -> [BigInt; 5] {
        a.map(BigInt::from)
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&big([0, 0, 0, 0, 0])), BigInt::zero());
        // short form: -16(4 a4^3 + 27 a6^2) = -16 * 31
        assert_eq!(discriminant(&big([0, 0, 0, 1, 1])), BigInt::from(-496));
        let d90a = discriminant(&big([1, -1, 0, 6, 0]));
        assert_eq!(d90a, BigInt::from(-13500));
        let d90c = discriminant(&big([1, -1, 1, 13, -61]));
        assert_eq!(d90c, BigInt::from(-1_574_640));
        for d in [d90a, d90c] {
            let primes: Vec<_> = factor_big(d.magnitude()).into_iter().map(|(p, _)| p).collect();
            assert!(primes.iter().all(|p| [2u32, 3, 5].iter().any(|q| *p == (*q).into())));
        }
        assert_eq!(discriminant(&big([0, -1, 1, -10, -20])), BigInt::from(-161_051));
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(RationalCurve::from_ints([0, 0, 0, 0, 0]), Err(Error::Singular));
    }

    #[test]
    fn conductor_must_divide_discriminant() {
        let e = RationalCurve::new(big([0, 0, 0, 1, 1]), None, Some(7));
        assert_eq!(e, Err(Error::ConductorMismatch { prime: 7 }));
        assert!(RationalCurve::new(big([0, -1, 1, -10, -20]), None, Some(11)).is_ok());
    }

    #[test]
    fn reduction() {
        let e11 = RationalCurve::from_ints([0, -1, 1, -10, -20]).unwrap();
        assert_eq!(e11.reduce_mod_p(11).unwrap_err(), Error::BadReduction(11));
        let e = RationalCurve::from_ints([0, 0, 0, 1, 1]).unwrap();
        assert!(e.reduce_mod_p(5).is_ok());
        assert_eq!(e.reduce_mod_p(2).unwrap_err(), Error::BadReduction(2));
        assert_eq!(e.reduce_mod_p(9).unwrap_err(), Error::NotPrime(9));
    }

    #[test]
    fn traces() {
        let e11 = RationalCurve::from_ints([0, -1, 1, -10, -20]).unwrap();
        assert_eq!(e11.ap(3).unwrap().trace(), &BigInt::from(-1));
        let e = RationalCurve::from_ints([0, 0, 0, 1, 1]).unwrap();
        assert_eq!(e.ap(5).unwrap().trace(), &BigInt::from(-3));
        assert_eq!(e.ap(2).unwrap_err(), Error::BadReduction(2));
    }

    #[test]
    fn bad_prime_traces_of_minimal_models() {
        // 11a: split multiplicative at 11
        let e11 = RationalCurve::from_ints([0, -1, 1, -10, -20]).unwrap();
        assert_eq!(e11.reduction_trace(11).unwrap(), 1);
        // 90c: 2 split, 3 additive, 5 split
        let e90c = RationalCurve::from_ints([1, -1, 1, 13, -61]).unwrap();
        assert_eq!(e90c.reduction_trace(2).unwrap(), 1);
        assert_eq!(e90c.reduction_trace(3).unwrap(), 0);
        assert_eq!(e90c.reduction_trace(5).unwrap(), 1);
    }
}
