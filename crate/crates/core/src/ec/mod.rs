//! Weierstrass curves over the rationals, their reductions, point counts and
//! Frobenius data.

mod curve;
mod finite;
mod frobenius;

pub use curve::{discriminant, BInvariants, RationalCurve};
pub use finite::{CountMethod, FiniteCurve, CHARACTER_SUM_LIMIT, ENUMERATION_LIMIT, MAX_COUNTING_PRIME};
pub use frobenius::FrobeniusData;
