//! Sublattices of `Z^B`, saturation, and the largest `m` with `v ∈ L + m Z^B`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::arith::factor_big;
use crate::error::{Error, Result};

/// A lattice given by linearly independent integer basis rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    ambient_dim: usize,
    basis: Vec<Vec<BigInt>>,
}

/// Outcome of [`IntegerLattice::image_order_divisor`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImageOrder {
    /// The admissible `m` are exactly the divisors of this value.
    Divisor(BigInt),
    /// Admissible `m` are unbounded. `caps` lists primes `ℓ` whose exponent
    /// in `m` is still limited to at most the given value; empty iff `v ∈ L`.
    NoConstraint { caps: BTreeMap<BigInt, u32> },
}

impl ImageOrder {
    /// Whether `v ∈ L + m Z^B` for the given `m ≥ 1`.
    pub fn admits(&self, m: &BigInt) -> bool {
        match self {
            ImageOrder::Divisor(d) => (d % m).is_zero(),
            ImageOrder::NoConstraint { caps } => caps.iter().all(|(l, &cap)| {
                let mut e = 0;
                let mut x = m.clone();
                while (&x % l).is_zero() {
                    x /= l;
                    e += 1;
                }
                e <= cap
            }),
        }
    }

    pub fn divisor(&self) -> Option<&BigInt> {
        match self {
            ImageOrder::Divisor(d) => Some(d),
            ImageOrder::NoConstraint { .. } => None,
        }
    }
}

fn val(x: &BigInt, l: &BigInt) -> Option<u32> {
    crate::arith::valuation(x, l)
}

impl IntegerLattice {
    /// Rejects rows of the wrong length and linearly dependent rows.
    pub fn new(ambient_dim: usize, basis: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(r) = basis.iter().find(|r| r.len() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: r.len() });
        }
        if !basis.is_empty() && IntMatrix::from_rows(basis.clone()).rank() < basis.len() {
            return Err(Error::LinearlyDependent);
        }
        Ok(IntegerLattice { ambient_dim, basis })
    }

    /// The lattice spanned by arbitrary generators, basis taken from the HNF.
    pub fn from_generators(ambient_dim: usize, gens: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(r) = gens.iter().find(|r| r.len() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: r.len() });
        }
        if gens.is_empty() {
            return Ok(IntegerLattice { ambient_dim, basis: Vec::new() });
        }
        let hnf = IntMatrix::from_rows(gens).hnf();
        let basis = (0..hnf.rank).map(|i| hnf.h.row(i).to_vec()).collect();
        Ok(IntegerLattice { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    fn snf(&self) -> super::matrix::Snf {
        IntMatrix::from_rows(self.basis.clone()).snf()
    }

    /// `(Q L) ∩ Z^B`: the first `k` rows of `V^{-1}` from the SNF span it; the
    /// stored basis is their HNF.
    pub fn saturate(&self) -> IntegerLattice {
        if self.basis.is_empty() {
            return self.clone();
        }
        let snf = self.snf();
        let rows = (0..self.rank()).map(|i| snf.v_inv.row(i).to_vec()).collect();
        Self::from_generators(self.ambient_dim, rows).expect("rows have the ambient length")
    }

    /// `[saturate(L) : L]`, the product of the invariant factors.
    pub fn saturation_index(&self) -> BigInt {
        if self.basis.is_empty() {
            return BigInt::one();
        }
        self.snf().invariant_factors().iter().take(self.rank()).product()
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        Ok(matches!(self.image_order_divisor(v)?, ImageOrder::NoConstraint { ref caps } if caps.is_empty()))
    }

    /// Largest `m` with `v ∈ L + m Z^B`, read off from the coordinates of `v`
    /// in `Z^B / L = ⊕ Z/d_i ⊕ Z^{B-k}`.
    pub fn image_order_divisor(&self, v: &[BigInt]) -> Result<ImageOrder> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        let k = self.rank();
        let (coords, moduli) = if k == 0 {
            (v.to_vec(), Vec::new())
        } else {
            let snf = self.snf();
            let c = snf.v.left_mul_vec(v);
            (c, snf.invariant_factors()[..k].to_vec())
        };
        let free_gcd = coords[k..].iter().fold(BigInt::zero(), |g, c| num_integer::gcd(g, c.clone()));

        // Primes that may carry a torsion cap: those of each d_i > 1.
        let mut caps: BTreeMap<BigInt, u32> = BTreeMap::new();
        for (c, d) in coords[..k].iter().zip(&moduli) {
            if d.is_one() {
                continue;
            }
            for (l, vd) in factor_big(d.magnitude()) {
                let l = BigInt::from(l);
                if let Some(vc) = val(c, &l) {
                    if vc < vd {
                        let e = caps.entry(l).or_insert(vc);
                        *e = (*e).min(vc);
                    }
                }
            }
        }

        if free_gcd.is_zero() {
            return Ok(ImageOrder::NoConstraint { caps });
        }
        let mut m = BigInt::one();
        for (l, e) in factor_big(free_gcd.magnitude()) {
            let l = BigInt::from(l);
            let e = caps.get(&l).map_or(e, |&c| c.min(e));
            m *= num_traits::pow(l, e as usize);
        }
        Ok(ImageOrder::Divisor(m.abs()))
    }
}
