//! Truncated cuspidal q-expansions `Σ_{n=1}^{B} a_n q^n` with an optional
//! working modulus, and the operator `Θ = q d/dq`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::is_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    /// `coeffs[n - 1] = a_n`.
    coeffs: Vec<BigInt>,
    modulus: Option<BigInt>,
}

/// Result of [`QSeries::theta_kernel_mod`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelCheck {
    pub holds: bool,
    /// Least `n` with `n a_n ≢ 0 (mod ℓ)`.
    pub witness: Option<usize>,
}

/// Result of [`congruence_lift_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftReport {
    pub requested: u32,
    /// Largest `k <= requested` with `f ≡ g (mod ℓ^k)` on indices prime to `ℓ`.
    pub achieved: u32,
    /// First index prime to `ℓ` where step `achieved + 1` fails.
    pub failed_at: Option<usize>,
}

impl QSeries {
    /// Panics if `modulus` is present and not positive.
    pub fn new(coeffs: Vec<BigInt>, modulus: Option<BigInt>) -> Self {
        if let Some(m) = &modulus {
            assert!(m > &BigInt::zero(), "modulus must be positive");
        }
        let mut s = QSeries { coeffs, modulus };
        s.reduce();
        s
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), None)
    }

    pub fn zero(precision: usize) -> Self {
        Self::new(vec![BigInt::zero(); precision], None)
    }

    /// `Σ c q^n` over the given `(n, c)` terms.
    pub fn from_terms(precision: usize, terms: &[(usize, i64)]) -> Self {
        let mut coeffs = vec![BigInt::zero(); precision];
        for &(n, c) in terms {
            coeffs[n - 1] += c;
        }
        Self::new(coeffs, None)
    }

    fn reduce(&mut self) {
        if let Some(m) = &self.modulus {
            for c in &mut self.coeffs {
                *c = c.mod_floor(m);
            }
        }
    }

    pub fn with_modulus(mut self, m: BigInt) -> Self {
        assert!(m > BigInt::zero(), "modulus must be positive");
        self.modulus = Some(m);
        self.reduce();
        self
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    /// `a_n`, for `1 <= n <= B`.
    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n - 1]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn joint_modulus(&self, other: &QSeries) -> Result<Option<BigInt>> {
        if self.precision() != other.precision() {
            return Err(Error::PrecisionMismatch(self.precision(), other.precision()));
        }
        match (&self.modulus, &other.modulus) {
            (Some(a), Some(b)) if a != b => Err(Error::InvalidArgument(format!("moduli {a} and {b} differ"))),
            (a, b) => Ok(a.clone().or_else(|| b.clone())),
        }
    }

    fn zip_with(&self, other: &QSeries, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<QSeries> {
        let modulus = self.joint_modulus(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| op(a, b)).collect();
        Ok(QSeries::new(coeffs, modulus))
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Product truncated to the common precision; the lowest term is `q^2`.
    pub fn mul_truncated(&self, other: &QSeries) -> Result<QSeries> {
        let modulus = self.joint_modulus(other)?;
        let b = self.precision();
        let mut out = vec![BigInt::zero(); b];
        for i in 1..=b {
            let a = &self.coeffs[i - 1];
            if a.is_zero() {
                continue;
            }
            for j in 1..=b - i {
                out[i + j - 1] += a * &other.coeffs[j - 1];
            }
        }
        Ok(QSeries::new(out, modulus))
    }

    /// `Θ f = Σ n a_n q^n`.
    pub fn theta(&self) -> QSeries {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| c * BigInt::from(i + 1)).collect();
        QSeries::new(coeffs, self.modulus.clone())
    }

    /// Zeroes `a_n` whenever `gcd(n, m) > 1`.
    pub fn restrict_support(&self, m: u64) -> QSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (i as u64 + 1).gcd(&m) == 1 { c.clone() } else { BigInt::zero() })
            .collect();
        QSeries { coeffs, modulus: self.modulus.clone() }
    }

    /// Whether `Θ f ≡ 0 (mod ℓ)` up to the precision.
    pub fn theta_kernel_mod(&self, ell: u64) -> Result<KernelCheck> {
        check_odd_prime(ell)?;
        let l = BigInt::from(ell);
        let witness = self
            .coeffs
            .iter()
            .enumerate()
            .find(|(i, c)| (*i as u64 + 1) % ell != 0 && !c.is_multiple_of(&l))
            .map(|(i, _)| i + 1);
        Ok(KernelCheck { holds: witness.is_none(), witness })
    }
}

fn check_odd_prime(ell: u64) -> Result<()> {
    if ell == 2 {
        return Err(Error::EvenPrime(ell));
    }
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    Ok(())
}

/// Climbs `f ≡ g (mod ℓ), (mod ℓ^2), ...` on the indices prime to `ℓ`,
/// using the integer representatives of the coefficients.
///
/// This is the coefficient-level shadow of dividing `f - g` by `ℓ` and
/// applying `Θ` again; nothing here proves injectivity of `Θ`.
pub fn congruence_lift_check(f: &QSeries, g: &QSeries, ell: u64, m: u32) -> Result<LiftReport> {
    check_odd_prime(ell)?;
    if f.precision() != g.precision() {
        return Err(Error::PrecisionMismatch(f.precision(), g.precision()));
    }
    let l = BigInt::from(ell);
    let mut diff: Vec<(usize, BigInt)> = (1..=f.precision())
        .filter(|n| *n as u64 % ell != 0)
        .map(|n| (n, f.coeff(n) - g.coeff(n)))
        .collect();
    let mut achieved = 0;
    let mut failed_at = None;
    while achieved < m {
        if let Some((n, _)) = diff.iter().find(|(_, d)| !d.is_multiple_of(&l)) {
            failed_at = Some(*n);
            break;
        }
        for (_, d) in &mut diff {
            *d /= &l;
        }
        achieved += 1;
    }
    Ok(LiftReport { requested: m, achieved, failed_at })
}
