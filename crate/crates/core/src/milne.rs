//! Order of `Ext^1(A, B)` for abelian varieties over a finite field `F_q`,
//! evaluated exactly from the Weil polynomials of `A` and `B`:
//!
//! ```text
//! #Ext^1(A, B) = ± q^{dA dB} / D · ∏_{a_i ≠ b_j} (1 - a_i / b_j)
//! ```
//!
//! No eigenvalue is ever approximated. The product over pairs of roots is
//! rewritten as resultants and a discriminant of integer polynomials.
//!
//! `D` (the discriminant of the trace pairing on `Hom(A, B) × Hom(B, A)`) is
//! supplied by the caller and defaults to 1, which is correct when
//! `Hom(A, B) = 0`. How the trace map is normalized when `Hom(A, B) ≠ 0` is
//! not fixed here: for `fA = fB = T^2 + 3T + 5` and `D = 2` the formula gives
//! the non-integral value `11/2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::arith::factor_big;
use crate::ec::FrobeniusData;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Characteristic polynomial of Frobenius of an abelian variety over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilPolynomial {
    q: BigInt,
    poly: IntPoly,
}

impl WeilPolynomial {
    /// Validates: `q` a prime power, `poly` monic of even degree `2d >= 2`
    /// with constant term `q^d`, and `|a| <= 2 sqrt(q)` for degree 2.
    pub fn new(q: BigInt, poly: IntPoly) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidWeilPolynomial(msg));
        if q < BigInt::from(2) || factor_big(q.magnitude()).len() != 1 {
            return bad(format!("q = {q} is not a prime power"));
        }
        if !poly.is_monic() {
            return bad(format!("{poly} is not monic"));
        }
        let deg = poly.degree();
        if deg == 0 || deg % 2 == 1 {
            return bad(format!("{poly} has odd or zero degree"));
        }
        let d = (deg / 2) as u32;
        if poly.coeff(0) != q.clone().pow(d) {
            return bad(format!("constant term of {poly} is not q^{d} = {}", q.clone().pow(d)));
        }
        if deg == 2 {
            let a = poly.coeff(1);
            if &a * &a > 4 * &q {
                return bad(format!("middle coefficient of {poly} exceeds 2 sqrt(q)"));
            }
        }
        Ok(WeilPolynomial { q, poly })
    }

    pub fn from_i64(q: u64, descending: &[i64]) -> Result<Self> {
        Self::new(BigInt::from(q), IntPoly::from_i64_descending(descending))
    }

    /// `T^2 - t T + q` for an elliptic curve with the given Frobenius data.
    pub fn from_frobenius(fd: &FrobeniusData) -> Self {
        let (t, q) = fd.charpoly();
        let poly = IntPoly::from_descending([BigInt::one(), -t, q.clone()]);
        WeilPolynomial { q, poly }
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    /// Dimension of the abelian variety, half the degree.
    pub fn dimension(&self) -> usize {
        self.poly.degree() / 2
    }
}

/// `|#Ext^1|` together with bookkeeping about the evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtOrderResult {
    /// Absolute value of the formula, exact.
    pub value: BigRational,
    /// Always set: the formula carries an unresolved overall sign.
    pub sign_ambiguous: bool,
    /// Number of eigenvalue pairs `a_i = b_j` left out of the product.
    pub excluded_pairs: usize,
}

/// Evaluate the order formula for `Ext^1(A, B)` over `F_q`.
///
/// With `g = gcd(fA, fB)`, `hA = fA / g`, `hB = fB / g` and `k = deg g`:
///
/// * `∏_{a ∈ hA, b ∈ fB} (b - a) = ± Res(hA, fB)`
/// * `∏_{a ∈ g, b ∈ hB} (b - a) = ± Res(g, hB)`
/// * `∏_{a ≠ b ∈ g} (b - a) = ± disc(g)`
///
/// and the denominator over the same pairs is `q^{dB deg fA} / ∏_{r ∈ g} r`.
pub fn ext_order_ff(fa: &WeilPolynomial, fb: &WeilPolynomial, d: &BigInt) -> Result<ExtOrderResult> {
    if fa.q != fb.q {
        return Err(Error::MismatchedField);
    }
    if d.is_zero() {
        return Err(Error::InvalidArgument("pairing discriminant D must be nonzero".into()));
    }
    if !fa.poly.is_square_free() || !fb.poly.is_square_free() {
        return Err(Error::RepeatedRoot);
    }
    let (f, h) = (&fa.poly, &fb.poly);
    let g = f.gcd_monic(h);
    let k = g.degree();
    let (ha, rem_a) = f.div_rem_monic(&g);
    let (hb, rem_b) = h.div_rem_monic(&g);
    debug_assert!(rem_a.is_zero() && rem_b.is_zero());

    let sign = |e: usize, x: BigInt| if e % 2 == 1 { -x } else { x };
    let cross = sign(ha.degree() * h.degree(), ha.resultant(h));
    let common = sign(k * hb.degree(), g.resultant(&hb));
    let within = if k == 0 { BigInt::one() } else { sign(k * (k - 1) / 2, g.discriminant()) };
    let numerator = cross * common * within;

    let q = &fa.q;
    let (da, db) = (fa.dimension() as u32, fb.dimension() as u32);
    let roots_product = sign(k, g.coeff(0));
    let denominator = BigRational::new(q.clone().pow(db * f.degree() as u32), roots_product);

    let scale = BigRational::new(q.clone().pow(da * db), d.clone());
    let value = scale * BigRational::from_integer(numerator) / denominator;
    Ok(ExtOrderResult { value: value.abs(), sign_ambiguous: true, excluded_pairs: k })
}

fn check_same_field(a: &FrobeniusData, b: &FrobeniusData) -> Result<()> {
    if a.same_field(b) {
        Ok(())
    } else {
        Err(Error::MismatchedField)
    }
}

/// `(#A(F_q) - #B(F_q))^2`, the Ext order for elliptic curves with `Hom = 0`.
///
/// Returns 0 when the counts agree, i.e. the curves are isogenous over `F_q`
/// and the hypothesis behind this specialization fails.
pub fn ext_order_nonisogenous_ec(a: &FrobeniusData, b: &FrobeniusData) -> Result<BigInt> {
    check_same_field(a, b)?;
    let diff = a.count() - b.count();
    Ok(&diff * &diff)
}

/// `|#A(F_q) - #B(F_q)|`. The Ext group is `T × T` with `#T` equal to this
/// value, so its exponent divides it. Zero means no constraint.
pub fn sha_exponent_bound(a: &FrobeniusData, b: &FrobeniusData) -> Result<BigInt> {
    check_same_field(a, b)?;
    Ok((a.count() - b.count()).abs())
}

/// Whether a nonnegative rational is the square of a rational.
pub fn is_rational_square(x: &BigRational) -> bool {
    let is_sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    !x.is_negative() && is_sq(x.numer()) && is_sq(x.denom())
}
