//! Multipartition numbers modulo prime powers, finite certification of
//! Ramanujan-type congruences `p_k(ell^m n + a) = 0 (mod ell^m)`, lifting of
//! certified congruences to infinite families, and exact q-expansion checks
//! of the modular-forms identities behind the certification criterion.

pub mod certifier;
pub mod coefficients;
pub mod error;
pub mod modforms;
pub mod multipartition;
pub mod par;
pub mod selftest;
pub mod series;

pub use coefficients::{Integers, Modulus, Rationals, Residue, Ring};
pub use error::{Error, Result};
