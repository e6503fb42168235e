use num_bigint::BigInt;
use num_traits::{Pow, Signed};

use crate::error::{Error, Result};

/// Frobenius data of an elliptic curve over `F_q`, `q = p^n`: the trace
/// `t`, the point count `q + 1 - t`, and the characteristic polynomial
/// `T^2 - t T + q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusData {
    p: u64,
    degree: u32,
    trace: BigInt,
    count: BigInt,
}

impl FrobeniusData {
    /// Data over `F_p` from a point count.
    pub(crate) fn from_count(p: u64, count: u64) -> Self {
        let trace = BigInt::from(p) + 1 - BigInt::from(count);
        FrobeniusData { p, degree: 1, trace, count: BigInt::from(count) }
    }

    /// Data over `F_{p^degree}` from a trace; rejects traces outside the Hasse bound.
    pub fn from_trace(p: u64, degree: u32, trace: BigInt) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let q = BigInt::from(p).pow(degree);
        if &trace * &trace > 4 * &q {
            return Err(Error::InvalidArgument(format!("trace {trace} violates the Hasse bound for q = {q}")));
        }
        let count = &q + 1 - &trace;
        Ok(FrobeniusData { p, degree, trace, count })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn trace(&self) -> &BigInt {
        &self.trace
    }

    pub fn count(&self) -> &BigInt {
        &self.count
    }

    /// Field size `q = p^n`.
    pub fn norm(&self) -> BigInt {
        BigInt::from(self.p).pow(self.degree)
    }

    /// `(trace, norm)` of the characteristic polynomial `T^2 - trace T + norm`.
    pub fn charpoly(&self) -> (BigInt, BigInt) {
        (self.trace.clone(), self.norm())
    }

    /// Whether both describe the same field `F_{p^n}`.
    pub fn same_field(&self, other: &FrobeniusData) -> bool {
        self.p == other.p && self.degree == other.degree
    }

    /// Data over `F_{p^n}` via `t_k = a t_{k-1} - p t_{k-2}`, `t_0 = 2`, `t_1 = a`.
    pub fn base_change(&self, n: u32) -> Result<FrobeniusData> {
        if self.degree != 1 {
            return Err(Error::InvalidArgument("base change needs data over the prime field".into()));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let p = BigInt::from(self.p);
        let (mut prev, mut cur) = (BigInt::from(2), self.trace.clone());
        for _ in 1..n {
            let next = &self.trace * &cur - &p * &prev;
            prev = cur;
            cur = next;
        }
        let q = p.pow(n);
        let count: BigInt = &q + 1 - &cur;
        debug_assert!((&cur * &cur) <= 4 * &q && count.is_positive());
        Ok(FrobeniusData { p: self.p, degree: n, trace: cur, count })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_change_examples() {
        let fd = FrobeniusData::from_trace(5, 1, BigInt::from(-3)).unwrap();
        assert_eq!(fd.count(), &BigInt::from(9));
        assert_eq!(fd.base_change(1).unwrap(), fd);
        let fd2 = fd.base_change(2).unwrap();
        assert_eq!(fd2.trace(), &BigInt::from(-1));
        assert_eq!(fd2.count(), &BigInt::from(27));
        assert_eq!(fd2.count() % fd.count(), BigInt::from(0));
    }

    #[test]
    fn hasse_violation_rejected() {
        assert!(FrobeniusData::from_trace(5, 1, BigInt::from(5)).is_err());
        assert!(FrobeniusData::from_trace(5, 1, BigInt::from(4)).is_ok());
    }
}
