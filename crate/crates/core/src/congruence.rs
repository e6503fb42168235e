//! Point-count congruences between two elliptic curves over the rationals.
//!
//! If `e` is the exponent of `Ext^1(A, B)` then `#A(F_p) ≡ #B(F_p) (mod e)`
//! for every prime `p ∤ S`, so the gcd of the differences over a sweep of
//! primes is a multiple of `e`. The same congruence propagates to the
//! Fourier coefficients of the attached newforms on indices prime to `2MN`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{factor_u64, primes_up_to, radical, smallest_prime_factors};
use crate::ec::RationalCurve;
use crate::error::{Error, Result};
use crate::qseries::QSeries;

/// What the bad-prime support of a curve was read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportSource {
    Conductor,
    Discriminant,
}

impl SupportSource {
    pub fn as_str(self) -> &'static str {
        match self {
            SupportSource::Conductor => "conductor",
            SupportSource::Discriminant => "discriminant",
        }
    }
}

fn support(c: &RationalCurve) -> (BigInt, SupportSource) {
    match c.conductor() {
        Some(_) => (c.level_or_discriminant(), SupportSource::Conductor),
        None => (c.level_or_discriminant(), SupportSource::Discriminant),
    }
}

/// `S = 2 · rad(M N)`, with `|Δ|` standing in for a missing conductor.
pub fn compute_s(a: &RationalCurve, b: &RationalCurve) -> (BigInt, [SupportSource; 2]) {
    let (m, sa) = support(a);
    let (n, sb) = support(b);
    (2 * radical(&(m * n)), [sa, sb])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub s: BigInt,
    pub s_sources: [SupportSource; 2],
    pub p_max: u64,
    /// Primes coprime to `S` actually compared, ascending.
    pub primes_used: Vec<u64>,
    /// `#A(F_p) - #B(F_p)` per prime used.
    pub differences: BTreeMap<u64, i64>,
    /// Primes coprime to `S` where one of the given models is singular.
    pub skipped: Vec<u64>,
    /// gcd of the differences; 0 means no constraint.
    pub gcd_bound: BigInt,
    pub models: [String; 2],
}

impl CongruenceReport {
    pub const INTERPRETATION: &'static str = "e divides G";

    pub fn is_constraint(&self) -> bool {
        !self.gcd_bound.is_zero()
    }
}

/// Sweep the primes `p <= p_max` with `p ∤ S` and take the gcd of the
/// point-count differences. The sweep runs in parallel; the result does not
/// depend on scheduling.
pub fn ext_exponent_gcd_bound(a: &RationalCurve, b: &RationalCurve, p_max: u64) -> Result<CongruenceReport> {
    if p_max < 3 {
        return Err(Error::InvalidArgument(format!("p_max = {p_max} must be at least 3")));
    }
    let (s, s_sources) = compute_s(a, b);
    let admissible: Vec<u64> = primes_up_to(p_max)
        .into_iter()
        .filter(|&p| !(&s % p).is_zero())
        .collect();
    if admissible.is_empty() {
        return Err(Error::EmptySweep { p_max });
    }
    let outcomes: Vec<(u64, Option<i64>)> = admissible
        .par_iter()
        .map(|&p| {
            if !a.has_good_reduction(p) || !b.has_good_reduction(p) {
                return Ok((p, None));
            }
            let ca = a.reduce_mod_p(p)?.count_points() as i64;
            let cb = b.reduce_mod_p(p)?.count_points() as i64;
            Ok((p, Some(ca - cb)))
        })
        .collect::<Result<_>>()?;

    let mut differences = BTreeMap::new();
    let mut skipped = Vec::new();
    for (p, d) in outcomes {
        match d {
            Some(d) => {
                differences.insert(p, d);
            }
            None => skipped.push(p),
        }
    }
    if differences.is_empty() {
        return Err(Error::EmptySweep { p_max });
    }
    let gcd_bound = differences.values().fold(BigInt::zero(), |g, &d| g.gcd(&BigInt::from(d)));
    Ok(CongruenceReport {
        s,
        s_sources,
        p_max,
        primes_used: differences.keys().copied().collect(),
        differences,
        skipped,
        gcd_bound,
        models: [a.to_string(), b.to_string()],
    })
}

/// Coefficients `a_1 .. a_B` of a Hecke eigenform, defined on the indices
/// coprime to the excluded primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    level: u64,
    precision: usize,
    excluded: BTreeSet<u64>,
    /// `an[n]` for `0 <= n <= B`; index 0 unused.
    an: Vec<Option<BigInt>>,
}

fn prime_power_step(ap: &BigInt, p: u64, prev: &BigInt, prev2: &BigInt) -> BigInt {
    ap * prev - BigInt::from(p) * prev2
}

/// Expand `a_n` for `n <= B` from `a_p`: the good-prime recurrence
/// `a_{p^{k+1}} = a_p a_{p^k} - p a_{p^{k-1}}` and multiplicativity.
///
/// Indices divisible by a prime in `bad` are left undefined. Every good
/// prime `p <= B` must be present in `ap`.
pub fn hecke_expand(ap: &BTreeMap<u64, BigInt>, bad: &BTreeSet<u64>, precision: usize) -> Result<CoefficientTable> {
    expand(ap, bad, &BTreeSet::new(), precision)
}

/// As [`hecke_expand`], but also defined at the primes in `bad` using
/// `a_{p^k} = a_p^k`; their `a_p` must then be supplied too.
pub fn hecke_expand_with_bad(
    ap: &BTreeMap<u64, BigInt>,
    bad: &BTreeSet<u64>,
    precision: usize,
) -> Result<CoefficientTable> {
    expand(ap, &BTreeSet::new(), bad, precision)
}

fn expand(
    ap: &BTreeMap<u64, BigInt>,
    excluded: &BTreeSet<u64>,
    multiplicative: &BTreeSet<u64>,
    precision: usize,
) -> Result<CoefficientTable> {
    let spf = smallest_prime_factors(precision);
    let mut an: Vec<Option<BigInt>> = vec![None; precision + 1];
    if precision >= 1 {
        an[1] = Some(BigInt::one());
    }
    for n in 2..=precision {
        let p = spf[n] as usize;
        let (mut pk, mut k) = (1usize, 0u32);
        while (n / pk) % p == 0 {
            pk *= p;
            k += 1;
        }
        let p64 = p as u64;
        if excluded.contains(&p64) {
            continue;
        }
        let rest = n / pk;
        an[n] = if rest > 1 {
            match (&an[pk], &an[rest]) {
                (Some(x), Some(y)) => Some(x * y),
                _ => None,
            }
        } else {
            let a = ap.get(&p64).ok_or(Error::MissingPrime(p64))?;
            Some(if k == 1 {
                a.clone()
            } else if multiplicative.contains(&p64) {
                a * an[pk / p].as_ref().expect("lower prime power present")
            } else {
                let prev = an[pk / p].as_ref().expect("lower prime power present");
                let prev2 = an[pk / p / p].as_ref().expect("lower prime power present");
                prime_power_step(a, p64, prev, prev2)
            })
        };
    }
    let level = excluded.iter().chain(multiplicative).product();
    Ok(CoefficientTable { level, precision, excluded: excluded.clone(), an })
}

/// `a_p` of a curve at every prime `p <= bound` of good reduction for the
/// given model, computed in parallel.
pub fn good_traces(curve: &RationalCurve, bound: u64) -> Result<BTreeMap<u64, BigInt>> {
    primes_up_to(bound)
        .into_par_iter()
        .filter(|&p| curve.has_good_reduction(p))
        .map(|p| Ok((p, curve.ap(p)?.trace().clone())))
        .collect()
}

/// Table of a curve's newform away from the primes dividing its conductor
/// (or discriminant when no conductor is recorded).
pub fn curve_table(curve: &RationalCurve, precision: usize) -> Result<CoefficientTable> {
    let level_primes: BTreeSet<u64> = match curve.conductor() {
        Some(n) => factor_u64(n).into_iter().map(|(p, _)| p).collect(),
        None => curve.bad_primes().iter().filter_map(|p| u64::try_from(p).ok()).collect(),
    };
    let mut ap = good_traces(curve, precision as u64)?;
    ap.retain(|p, _| !level_primes.contains(p));
    let mut t = hecke_expand(&ap, &level_primes, precision)?;
    t.level = curve.conductor().unwrap_or(t.level);
    Ok(t)
}

/// Full newform expansion including the bad primes, whose `a_p` is read off
/// the reduction of the given model (1, -1 or 0). Only meaningful when the
/// model is minimal at every bad prime.
pub fn newform_coefficients(curve: &RationalCurve, precision: usize) -> Result<CoefficientTable> {
    let mut ap = good_traces(curve, precision as u64)?;
    let mut bad = BTreeSet::new();
    for p in curve.bad_primes() {
        let Ok(p) = u64::try_from(&p) else { continue };
        if p as usize <= precision {
            ap.insert(p, BigInt::from(curve.reduction_trace(p)?));
            bad.insert(p);
        }
    }
    let mut t = hecke_expand_with_bad(&ap, &bad, precision)?;
    t.level = curve.conductor().unwrap_or(t.level);
    Ok(t)
}

impl CoefficientTable {
    /// Table with every index defined, e.g. read from a dataset.
    pub fn from_coefficients(level: u64, an: &[BigInt]) -> Self {
        let mut v = vec![None];
        v.extend(an.iter().cloned().map(Some));
        CoefficientTable { level, precision: an.len(), excluded: BTreeSet::new(), an: v }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn excluded_primes(&self) -> &BTreeSet<u64> {
        &self.excluded
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.an.get(n).and_then(Option::as_ref)
    }

    /// Defined coefficients in index order, zero elsewhere.
    pub fn to_series(&self) -> QSeries {
        let coeffs = (1..=self.precision).map(|n| self.get(n).cloned().unwrap_or_default()).collect();
        QSeries::new(coeffs, None)
    }

    /// The base list `a_1 .. a_B` when every index is defined.
    pub fn dense(&self) -> Option<Vec<BigInt>> {
        (1..=self.precision).map(|n| self.get(n).cloned()).collect()
    }

    /// Checks `a_1 = 1`, multiplicativity on coprime stored pairs and the
    /// good-prime recurrence on stored prime powers. Returns the first
    /// offending index.
    pub fn check_coherence(&self) -> std::result::Result<(), usize> {
        if let Some(a1) = self.get(1) {
            if !a1.is_one() {
                return Err(1);
            }
        }
        let spf = smallest_prime_factors(self.precision);
        for n in 2..=self.precision {
            let Some(an) = self.get(n) else { continue };
            let p = spf[n] as usize;
            let mut pk = 1;
            while (n / pk) % p == 0 {
                pk *= p;
            }
            let rest = n / pk;
            if rest > 1 {
                if let (Some(x), Some(y)) = (self.get(pk), self.get(rest)) {
                    if &(x * y) != an {
                        return Err(n);
                    }
                }
            } else if pk >= p * p && self.level % p as u64 != 0 {
                if let (Some(a), Some(prev), Some(prev2)) = (self.get(p), self.get(pk / p), self.get(pk / p / p)) {
                    if &prime_power_step(a, p as u64, prev, prev2) != an {
                        return Err(n);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Which indices a congruence is required on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexFilter {
    All,
    /// Indices `n` with `gcd(n, m) = 1`.
    CoprimeTo(u64),
}

impl IndexFilter {
    pub fn passes(&self, n: usize) -> bool {
        match self {
            IndexFilter::All => true,
            IndexFilter::CoprimeTo(m) => (n as u64).gcd(m) == 1,
        }
    }

    /// `gcd(n, 2MN) = 1` for levels `M`, `N`.
    pub fn coprime_to_twice_levels(m: u64, n: u64) -> Self {
        IndexFilter::CoprimeTo(2 * m * n)
    }

    /// The relaxed `gcd(n, MN) = 1` for odd exponents.
    pub fn odd_exponent(m: u64, n: u64) -> Self {
        IndexFilter::CoprimeTo(m * n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceCheck {
    pub modulus: BigInt,
    /// Indices compared are `1 ..= tested_up_to`.
    pub tested_up_to: usize,
    pub tested: usize,
    /// `(n, a_n, b_n)` with `a_n ≢ b_n`.
    pub violations: Vec<(usize, BigInt, BigInt)>,
    /// Indices passing the filter where one table has no value.
    pub uncovered: Vec<usize>,
}

impl CongruenceCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compare `a_n` and `b_n` modulo `m` on the filtered indices up to the
/// smaller precision.
pub fn verify_congruence(ta: &CoefficientTable, tb: &CoefficientTable, m: &BigInt, filter: &IndexFilter) -> CongruenceCheck {
    let m = m.abs();
    let top = ta.precision.min(tb.precision);
    let mut check = CongruenceCheck {
        modulus: m.clone(),
        tested_up_to: top,
        tested: 0,
        violations: Vec::new(),
        uncovered: Vec::new(),
    };
    for n in (1..=top).filter(|&n| filter.passes(n)) {
        match (ta.get(n), tb.get(n)) {
            (Some(a), Some(b)) => {
                check.tested += 1;
                if !m.is_zero() && !(a - b).is_multiple_of(&m) || m.is_zero() && a != b {
                    check.violations.push((n, a.clone(), b.clone()));
                }
            }
            _ => check.uncovered.push(n),
        }
    }
    check
}
