//! Finite involutive idempotent monoids (i-monoids) and McCarthy algebras.
//!
//! The crate evaluates and checks identities on finite algebras, enumerates
//! models of equational theories up to isomorphism, computes congruence
//! lattices, and analyses McCarthy algebras through their semilattice
//! skeleton, Boolean fibers and decorated posets.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod enumerate;
pub mod eval;
pub mod io;
pub mod mccarthy;
pub mod parse;
pub mod structure;
pub mod term;
pub mod theory;

pub use algebra::{builtin, validate, IMonoid};
pub use eval::{check_identity, check_quasi_identity, eval, Verdict};
pub use parse::{parse_identity, parse_law, parse_quasi, parse_term};
pub use term::{Identity, Law, QuasiIdentity, Term};
pub use theory::{satisfies_theory, Bundle, TheorySpec};
