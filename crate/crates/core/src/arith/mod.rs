//! Exact scalar arithmetic.
//!
//! Everything above this layer works over [`Scalar`]: an element of
//! `Q[t1, ..., tk] / (m1, ..., mk)` where each modulus `mi` is a monic,
//! squarefree polynomial in `ti` over the previous level. Moduli are never
//! factored up front. When an operation needs to invert an element that is a
//! zero divisor, it fails with [`ArithError::ZeroDivisorEncountered`] carrying
//! the factor that was discovered, and the caller re-runs its computation over
//! both halves of the split tower (dynamic evaluation).

mod dense;
mod rational;
mod roots;
mod scalar;
mod tower;
mod unipoly;

pub use rational::{fmt_rational, parse_rational, rat_sqrt_exact};
pub use roots::rational_roots;
pub use scalar::Scalar;
pub use tower::{Elem, Split, Tower};
pub use unipoly::UniPoly;

pub(crate) use dense::join_terms;

use thiserror::Error;

/// Failure modes of exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    /// The element is a zero divisor modulo a reducible modulus. The split
    /// carries a proper monic factor of the modulus at `level`.
    #[error("zero divisor encountered: modulus of t{} splits", .0.level)]
    ZeroDivisorEncountered(Split),
    #[error("division by zero")]
    DivisionByZero,
}

impl ArithError {
    pub fn split(&self) -> Option<&Split> {
        match self {
            ArithError::ZeroDivisorEncountered(s) => Some(s),
            ArithError::DivisionByZero => None,
        }
    }
}

/// Unwraps an arithmetic result that was computed over the rationals, where a
/// split is impossible.
pub(crate) fn over_q<T>(r: Result<T, ArithError>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => panic!("rational arithmetic failed: {e}"),
    }
}
