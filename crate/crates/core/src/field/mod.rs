//! Exact arithmetic: rationals, parameter polynomials, the parameter field K,
//! and polynomials / rational functions in x over K.

mod fp;
mod kelem;
pub mod linalg;
mod mpoly;
mod roots;
mod sqf;
mod xpoly;
mod xrat;

pub use kelem::KElem;
pub use mpoly::{cmp_grlex, Exponent, MPoly};
pub use roots::{integer_roots_q, ModPoly, RootsError, RootsOutcome};
pub use sqf::{
    invert_mod, partial_fraction, partial_fraction_raw, squarefree_factorization, InconsistentFactorization, InvertMod, PartialFraction,
    SqfFactorization,
};
pub use xpoly::XPoly;
pub use xrat::XRat;

pub type Rat = num_rational::BigRational;

/// A parameter specialization made some denominator vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("bad evaluation point: a denominator vanishes")]
pub struct BadPoint;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
