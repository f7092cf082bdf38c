//! Exact-arithmetic computer algebra for colon operations `(R : a)_S` and
//! `(R : a^infinity)_S` over finitely generated domains, with the constructions
//! built on them: rings of regular functions on quasi-affine varieties,
//! finite-generation-locus ideals, constructive generic freeness, intersections
//! `Q(R) ∩ S`, and invariant rings of the additive group and of connected
//! unipotent groups.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals, prime
//! fields, or fraction fields of presented domains. All iterative generator
//! streams are deterministic and capped; a capped stream is an expected
//! outcome (the target algebra may not be finitely generated), not a failure.

pub mod error;
pub mod monomial;
pub mod scalar;
pub mod poly;
pub mod parse;
pub mod linalg;
pub mod groebner;
pub mod idealops;
pub mod colonalg;
pub mod freeness;
pub mod invariants;
pub mod problem;
pub mod cli;

pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Poly, Ring};
pub use scalar::{FieldCtx, Scalar};
