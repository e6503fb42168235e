//! Congruence moduli of a newform against the rest of a cusp-form space,
//! computed from truncated coefficient vectors with exact lattice algebra.
//!
//! For a distinguished newform `f` and the lattice `L` of integral forms
//! spanned (over `Q`, then saturated) by the other forms of the dataset,
//! `m_A` is the largest `m` with `f ≡ g (mod m)` coefficientwise for some
//! `g ∈ L`. The restricted variant `r_A` only compares indices `n` with
//! `gcd(n, 2N) = 1`. Both are computed at a finite precision `B` no smaller
//! than the Sturm bound.

pub mod lattice;
pub mod matrix;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::factor_u64;
use crate::error::{Error, Result};
use crate::io::EigenformDataset;
use lattice::{ImageOrder, IntegerLattice};

/// `ceil(k · [SL2(Z) : Γ0(N)] / 12)`.
pub fn sturm_bound(level: u64, weight: u64) -> u64 {
    let index: u64 = factor_u64(level).iter().map(|&(p, e)| p.pow(e - 1) * (p + 1)).product();
    (weight * index).div_ceil(12)
}

fn check_precision(forms: &EigenformDataset, precision: usize) -> Result<()> {
    let sturm = sturm_bound(forms.level(), 2) as usize;
    if precision < sturm {
        return Err(Error::PrecisionBelowSturm { precision, sturm });
    }
    if precision > forms.precision() {
        return Err(Error::InvalidArgument(format!(
            "precision {precision} exceeds the dataset precision {}",
            forms.precision()
        )));
    }
    Ok(())
}

/// Target vector and saturated complement lattice, restricted to the given
/// coordinate indices (`n - 1` for index `n`).
fn target_and_complement(
    forms: &EigenformDataset,
    f_label: &str,
    precision: usize,
    keep: impl Fn(usize) -> bool,
) -> Result<(Vec<BigInt>, IntegerLattice)> {
    let f = forms.form(f_label)?;
    let coords: Vec<usize> = (1..=precision).filter(|&n| keep(n)).map(|n| n - 1).collect();
    let project = |v: Vec<BigInt>| coords.iter().map(|&i| v[i].clone()).collect::<Vec<_>>();
    let target = project(f.coefficients(precision));
    let gens = forms
        .forms()
        .iter()
        .filter(|g| g.label() != f_label)
        .map(|g| project(g.coefficients(precision)))
        .collect();
    let lattice = IntegerLattice::from_generators(coords.len(), gens)?.saturate();
    Ok((target, lattice))
}

fn finite(order: ImageOrder) -> Result<BigInt> {
    match order {
        ImageOrder::Divisor(m) => Ok(m),
        ImageOrder::NoConstraint { .. } => Err(Error::NoConstraint),
    }
}

/// `m_A` for the form `f_label` at precision `B`.
pub fn congruence_modulus(forms: &EigenformDataset, f_label: &str, precision: usize) -> Result<BigInt> {
    check_precision(forms, precision)?;
    let (v, lattice) = target_and_complement(forms, f_label, precision, |_| true)?;
    finite(lattice.image_order_divisor(&v)?)
}

/// `r_A`: as [`congruence_modulus`] on the coordinates `n` with `gcd(n, 2N) = 1`.
pub fn restricted_congruence_modulus(
    forms: &EigenformDataset,
    f_label: &str,
    precision: usize,
    level: u64,
) -> Result<BigInt> {
    check_precision(forms, precision)?;
    let mask = 2 * level as usize;
    let (v, lattice) = target_and_complement(forms, f_label, precision, |n| n.gcd(&mask) == 1)?;
    finite(lattice.image_order_divisor(&v)?)
}

/// Outcome of one divisibility check; `None` when an input is missing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Audit {
    pub relation: &'static str,
    pub holds: Option<bool>,
}

/// Audit of `d_A | m_A | r_A` and the ranges these force on the exponents
/// `e_A` (between `d_A` and `r_A`) and `e_{A,T}` (between `d_A` and `m_A`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusReport {
    pub d_a: BigInt,
    pub m_a: Option<BigInt>,
    pub r_a: Option<BigInt>,
    pub gcd_bound_e: Option<BigInt>,
    pub audits: Vec<Audit>,
    /// Values `x` with `d_A | x | r_A`.
    pub e_a_candidates: Vec<BigInt>,
    /// Values `x` with `d_A | x | m_A`.
    pub e_at_candidates: Vec<BigInt>,
    /// For square-free level: whether `d_A = m_A`, the predicted equality.
    pub squarefree_equality: Option<bool>,
}

impl ModulusReport {
    pub fn all_pass(&self) -> bool {
        self.audits.iter().all(|a| a.holds != Some(false))
    }

    /// `e_{A,T}` when the sandwich leaves exactly one value.
    pub fn forced_e_at(&self) -> Option<&BigInt> {
        match self.e_at_candidates.as_slice() {
            [x] => Some(x),
            _ => None,
        }
    }
}

fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        (b % a).is_zero()
    }
}

/// Multiples of `lo` dividing `hi`, ascending. Empty unless `lo | hi`, both positive.
fn sandwich(lo: &BigInt, hi: &BigInt) -> Vec<BigInt> {
    if lo <= &BigInt::zero() || hi <= &BigInt::zero() || !divides(lo, hi) {
        return Vec::new();
    }
    let q = hi / lo;
    let mut divs = vec![BigInt::one()];
    for (p, e) in crate::arith::factor_big(q.magnitude()) {
        let p = BigInt::from(p);
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.into_iter().map(|d| d * lo).collect()
}

/// `m_A` or `r_A` of `None` stands for an unbounded modulus.
pub fn divisibility_report(
    d_a: &BigInt,
    m_a: Option<&BigInt>,
    r_a: Option<&BigInt>,
    gcd_bound_e: Option<&BigInt>,
    level: Option<u64>,
) -> ModulusReport {
    let check = |relation, a: Option<&BigInt>, b: Option<&BigInt>| Audit {
        relation,
        holds: a.zip(b).map(|(a, b)| divides(a, b)),
    };
    let audits = vec![
        check("d_A | m_A", Some(d_a), m_a),
        check("m_A | r_A", m_a, r_a),
        check("d_A | r_A", Some(d_a), r_a),
        check("d_A | gcd_bound_e", Some(d_a), gcd_bound_e),
    ];
    let squarefree = level.filter(|&n| factor_u64(n).iter().all(|&(_, e)| e == 1));
    ModulusReport {
        d_a: d_a.clone(),
        m_a: m_a.cloned(),
        r_a: r_a.cloned(),
        gcd_bound_e: gcd_bound_e.cloned(),
        audits,
        e_a_candidates: r_a.map(|r| sandwich(d_a, r)).unwrap_or_default(),
        e_at_candidates: m_a.map(|m| sandwich(d_a, m)).unwrap_or_default(),
        squarefree_equality: squarefree.and(m_a).map(|m| m == d_a),
    }
}
