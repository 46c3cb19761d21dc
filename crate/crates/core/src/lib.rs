//! Group actions of PGL2(F_q) and the projective semi-linear group on
//! monic irreducible polynomials over F_q, and the upper bound they yield on
//! the number of inequivalent extended irreducible binary Goppa codes of
//! length 2^n + 1 and degree r.
//!
//! Modules, bottom-up:
//! - [`gf2field`]: GF(2^m) arithmetic and the tower GF(q) ⊂ GF(q^r).
//! - [`polyq`]: polynomials over GF(q), I_r, and the counting formulas.
//! - [`action`]: PGL/AGL/PΓL elements, their actions, orbits and stabilizers.
//! - [`enumeration`]: the exact bound, its orbit-count decomposition and
//!   brute-force orbit counters.
//! - [`goppa`]: Goppa codes Γ(L, g), their extensions and weight enumerators.

pub mod arith;
pub mod error;
pub mod gf2field;
pub mod gf2linalg;
pub mod polyq;
pub mod action;
pub mod enumeration;
pub mod goppa;
mod par;

pub use error::{Error, Result};
