//! Dirichlet coefficients of the symmetric-square L-function of an elliptic
//! curve and its truncated value at `s = 2`.
//!
//! At a good prime with Frobenius eigenvalues `α, β` the Euler factor is
//! `(1 - α²X)(1 - pX)(1 - β²X) = 1 - (a² - p)X + p(a² - p)X² - p³X³`.
//! Bad primes contribute the factor 1, so every output is only approximate
//! there and says so.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{primes_up_to, smallest_prime_factors};
use crate::ec::{FrobeniusData, RationalCurve};
use crate::error::{Error, Result};

/// `[1, c1, c2, c3]` with the factor equal to `1 + c1 X + c2 X^2 + c3 X^3`.
pub fn euler_factor(fd: &FrobeniusData) -> Result<[BigInt; 4]> {
    if fd.degree() != 1 {
        return Err(Error::InvalidArgument("Euler factors need Frobenius over the prime field".into()));
    }
    let a = fd.trace();
    let p = BigInt::from(fd.p());
    let lambda = a * a - &p;
    Ok([BigInt::from(1), -&lambda, &p * &lambda, -(&p * &p * &p)])
}

fn euler_factor_i128(a: i64, p: u64) -> [i128; 3] {
    let (a, p) = (a as i128, p as i128);
    let lambda = a * a - p;
    [-lambda, p * lambda, -p * p * p]
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymSqSeries {
    pub label: Option<String>,
    pub n_max: usize,
    /// `terms[n]` for `0 <= n <= n_max`; index 0 unused.
    terms: Vec<i64>,
    /// Primes whose Euler factor was replaced by 1.
    pub bad_primes: Vec<u64>,
}

impl SymSqSeries {
    pub fn coefficient(&self, n: usize) -> i64 {
        self.terms[n]
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.terms[1..]
    }

    /// Always true: bad Euler factors are set to 1, not computed.
    pub fn approximate_at_bad_primes(&self) -> bool {
        true
    }
}

/// `λ_n` for `n <= n_max`, from per-prime inversion of the Euler factors
/// and multiplicativity.
pub fn coefficients(curve: &RationalCurve, n_max: usize) -> Result<SymSqSeries> {
    let primes = primes_up_to(n_max as u64);
    let bad_primes: Vec<u64> = primes.iter().copied().filter(|&p| !curve.has_good_reduction(p)).collect();
    let traces: Vec<(u64, Option<i64>)> = primes
        .par_iter()
        .map(|&p| {
            if !curve.has_good_reduction(p) {
                return Ok((p, None));
            }
            let t = curve.ap(p)?;
            Ok((p, Some(i64::try_from(t.trace()).expect("Hasse bound keeps a_p small"))))
        })
        .collect::<Result<_>>()?;
    from_traces(curve.label().map(str::to_string), n_max, &traces, bad_primes)
}

/// Builds the series from `(p, a_p)` with `None` marking a bad prime.
pub fn from_traces(
    label: Option<String>,
    n_max: usize,
    traces: &[(u64, Option<i64>)],
    bad_primes: Vec<u64>,
) -> Result<SymSqSeries> {
    let mut terms = vec![0i64; n_max + 1];
    if n_max >= 1 {
        terms[1] = 1;
    }
    // prime powers first
    for &(p, a) in traces {
        let Some(a) = a else { continue };
        let c = euler_factor_i128(a, p);
        // inverse series: λ_k = -(c1 λ_{k-1} + c2 λ_{k-2} + c3 λ_{k-3})
        let mut lam: Vec<i128> = vec![1];
        let mut pk = p as usize;
        while pk <= n_max {
            let k = lam.len();
            let mut next = 0i128;
            for (j, cj) in c.iter().enumerate() {
                if k > j {
                    next = next
                        .checked_sub(cj.checked_mul(lam[k - 1 - j]).ok_or(Error::CoefficientOverflow(pk as u64))?)
                        .ok_or(Error::CoefficientOverflow(pk as u64))?;
                }
            }
            terms[pk] = i64::try_from(next).map_err(|_| Error::CoefficientOverflow(pk as u64))?;
            lam.push(next);
            match pk.checked_mul(p as usize) {
                Some(x) => pk = x,
                None => break,
            }
        }
    }
    let spf = smallest_prime_factors(n_max);
    for n in 2..=n_max {
        let p = spf[n] as usize;
        let mut pk = p;
        while (n / pk) % p == 0 {
            pk *= p;
        }
        let rest = n / pk;
        if rest > 1 {
            terms[n] = terms[pk].checked_mul(terms[rest]).ok_or(Error::CoefficientOverflow(n as u64))?;
        }
    }
    Ok(SymSqSeries { label, n_max, terms, bad_primes })
}

/// `d_3(n)`, the number of ordered factorizations `n = abc`, for `n <= limit`.
pub fn divisor3_table(limit: usize) -> Vec<u64> {
    let spf = smallest_prime_factors(limit);
    let mut d3 = vec![0u64; limit + 1];
    if limit >= 1 {
        d3[1] = 1;
    }
    for n in 2..=limit {
        let p = spf[n] as usize;
        let (mut m, mut e) = (n, 0u64);
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        d3[n] = d3[m] * (e + 1) * (e + 2) / 2;
    }
    d3
}

/// Largest possible change of the partial sum `Σ λ_n / n^2` between
/// truncations `n1 < n2`, from `|λ_n| <= d_3(n) n`.
pub fn window_envelope(n1: usize, n2: usize) -> f64 {
    let d3 = divisor3_table(n2);
    (n1 + 1..=n2).map(|n| d3[n] as f64 / n as f64).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymSqValue {
    pub n_max: usize,
    /// `Σ_{n <= n_max} λ_n / n^2`.
    pub value: f64,
    /// Bound on the change if `n_max` is doubled.
    pub envelope: f64,
}

/// Truncated `L(Sym² E, 2)` with the bad Euler factors set to 1.
pub fn lvalue(series: &SymSqSeries) -> SymSqValue {
    let value = partial_sum(series, series.n_max);
    SymSqValue { n_max: series.n_max, value, envelope: window_envelope(series.n_max, 2 * series.n_max) }
}

/// `Σ_{n <= upto} λ_n / n^2`, summed from the small end.
pub fn partial_sum(series: &SymSqSeries, upto: usize) -> f64 {
    (1..=upto.min(series.n_max)).map(|n| series.terms[n] as f64 / (n as f64 * n as f64)).sum()
}
