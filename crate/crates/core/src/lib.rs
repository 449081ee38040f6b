//! Exact decisions about quasipolarity in generalized matrix rings `K_s(R)`.
//!
//! `R` ranges over concrete commutative local rings ([`localring`]): integers
//! modulo a prime power, the integers localized at a prime, and truncated
//! polynomial rings `R[t]/(t^n)` over either. [`genmat`] implements the
//! twisted 2x2 product, [`quadratic`] decides and lifts roots of
//! `x^2 - tr(A) x + det_s(A)`, and [`quasipolar`] turns those roots into
//! explicit spectral idempotents, checked against brute-force oracles on
//! finite rings.

pub mod cli;
pub mod error;
pub mod genmat;
pub mod localring;
pub mod parse;
pub mod quadratic;
pub mod quasipolar;

pub use error::{Error, Result};
pub use genmat::GenMatrix;
pub use localring::{Elem, Ring, RingDescriptor, RingElement};
