//! Explicit conditional bounds for `|psi_K(x) - x|` over number fields.
//!
//! The crate evaluates the bound formulas for a field described by its
//! degree, discriminant and signature, picks the truncation height `T`,
//! reproduces the crossover and `c_max` reference tables, and checks the
//! bounds against exact values of `psi` for `Q` and quadratic fields.

// `!(x > 0.0)` style comparisons are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bound;
pub mod constants;
pub mod error;
pub mod field;
pub mod oracle;
pub mod parse;
pub mod selftest;
pub mod solve;
pub mod specfun;
pub mod sum;
pub mod tables;
pub mod theorems;
pub mod truncation;
pub mod zero_estimates;

pub use bound::{BoundResult, Params, Terms};
pub use constants::Constants;
pub use error::{Error, Result};
pub use field::FieldProfile;
pub use theorems::BoundFormula;
