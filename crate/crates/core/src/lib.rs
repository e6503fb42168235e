//! Exact computations around extensions of elliptic curves.
//!
//! * [`ec`]: Weierstrass curves, reduction, point counting and Frobenius data.
//! * [`milne`]: orders of `Ext^1` between abelian varieties over finite fields.
//! * [`congruence`]: point-count gcd bounds over the rationals, Hecke
//!   expansions and coefficient congruences.
//! * [`qseries`]: truncated q-expansions and the theta operator.
//! * [`modulus`]: integer lattices, Hermite/Smith forms and congruence moduli.
//! * [`symsq`]: symmetric-square Euler factors and truncated L-values.
//! * [`io`] and [`cli`]: file formats and the command-line front end.

pub mod arith;
pub mod cli;
pub mod congruence;
pub mod ec;
mod error;
pub mod io;
pub mod milne;
pub mod modulus;
pub mod poly;
pub mod qseries;
pub mod symsq;

pub use error::{Error, Result};
