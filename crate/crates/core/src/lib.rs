#![forbid(unsafe_code)]

//! Exact computation of derivation spaces of complex group algebras.
//!
//! For a finitely presented group the crate realizes the group either as a
//! concrete multiplication table (coset enumeration over the trivial
//! subgroup) or as a free-abelian lattice, builds one Cayley 2-complex per
//! conjugacy class out of the conjugation action, and computes the first
//! cohomology of those complexes with exact rational arithmetic.  A separate
//! brute-force solver recovers the same dimensions directly from the product
//! rule on the group algebra, so the two routes can be checked against each
//! other.
//!
//! The pipeline, bottom to top:
//!
//! * [`presentation`] — parsing `< x, y | x^3, ... >` and free-group words;
//! * [`group`] — finite multiplication tables and the free-abelian backend;
//! * [`groupoid`] — conjugation morphisms, characters, operator matrices;
//! * [`complex`] — per-class Cayley 2-complexes and their boundary maps;
//! * [`linalg`] — sparse exact rational rank / nullspace computations;
//! * [`derivations`] — the independent product-rule solver;
//! * [`verify`] — runs both routes and reports whether they agree.

pub mod complex;
pub mod derivations;
pub mod error;
pub mod group;
pub mod groupoid;
pub mod linalg;
pub mod presentation;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::Rational;
