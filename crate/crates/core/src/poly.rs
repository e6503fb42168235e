//! Dense univariate polynomials with integer coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::modulus::matrix::IntMatrix;

/// Coefficients stored lowest degree first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_ascending(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// From coefficients listed highest degree first, e.g. `[1, 3, 5]` is `T^2 + 3T + 5`.
    pub fn from_descending<I: IntoIterator<Item = BigInt>>(coeffs: I) -> Self {
        let mut v: Vec<BigInt> = coeffs.into_iter().collect();
        v.reverse();
        Self::from_ascending(v)
    }

    pub fn from_i64_descending(coeffs: &[i64]) -> Self {
        Self::from_descending(coeffs.iter().map(|&c| BigInt::from(c)))
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs_ascending(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeffs_descending(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> IntPoly {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        IntPoly::from_ascending(c)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_ascending(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        (IntPoly::from_ascending(quot), IntPoly::from_ascending(rem))
    }

    /// Monic greatest common divisor of two monic integer polynomials.
    ///
    /// Computed over the rationals; by Gauss's lemma the result is integral.
    pub fn gcd_monic(&self, other: &IntPoly) -> IntPoly {
        let g = gcd_general(self, other);
        let g = if g.leading().is_negative() { g.neg() } else { g };
        assert!(g.is_zero() || g.is_monic(), "gcd of monic integer polynomials is monic");
        g
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Square-free over the rationals, i.e. `gcd(f, f') = 1`.
    pub fn is_square_free(&self) -> bool {
        self.degree() == 0 || gcd_general(self, &self.derivative()).degree() == 0
    }

    /// Resultant `Res(f, g)` as the determinant of the Sylvester matrix.
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        let (m, n) = (self.degree(), other.degree());
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut rows = vec![vec![BigInt::zero(); size]; size];
        let f = self.coeffs_descending();
        let g = other.coeffs_descending();
        for i in 0..n {
            for (j, c) in f.iter().enumerate() {
                rows[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in g.iter().enumerate() {
                rows[n + i][i + j] = c.clone();
            }
        }
        IntMatrix::from_rows(rows).determinant()
    }

    /// Discriminant of a monic polynomial: `(-1)^{n(n-1)/2} Res(f, f')`.
    pub fn discriminant(&self) -> BigInt {
        assert!(self.is_monic(), "discriminant implemented for monic polynomials");
        let n = self.degree();
        let r = self.resultant(&self.derivative());
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }
}

fn trim_q(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn rem_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let c = r.last().unwrap().clone() / &lead;
        let shift = r.len() - 1 - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        r.pop();
        trim_q(&mut r);
    }
    r
}

/// gcd over Q of integer polynomials, returned as a primitive integer polynomial.
fn gcd_general(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let to_q = |p: &IntPoly| -> Vec<BigRational> {
        p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    };
    let mut a = to_q(f);
    let mut b = to_q(g);
    while !b.is_empty() {
        let r = rem_q(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        return IntPoly::zero();
    }
    let den = a.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    let ints: Vec<BigInt> = a.iter().map(|c| (c * &den).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| num_integer::gcd(acc, c.clone()));
    IntPoly::from_ascending(ints.into_iter().map(|c| c / &content).collect())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    write!(f, "T")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parses comma-separated coefficients, highest degree first (`"1,3,5"`).
impl FromStr for IntPoly {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<BigInt>().map_err(|e| format!("bad coefficient {t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Err("empty polynomial".into());
        }
        Ok(IntPoly::from_descending(coeffs))
    }
}
