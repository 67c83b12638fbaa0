//! Generalized Hermite reduction modulo linear differential operators and
//! reduction-based creative telescoping.

pub mod diffop;
pub mod error;
pub mod field;
pub mod frontend;
pub mod oresys;
pub mod reduction;
pub mod telescoper;

pub use error::Error;
