//! Exact `psi_K(x)` for `Q` and quadratic fields.

mod kronecker;
mod quadratic;
mod sieve;
mod verify;

pub use kronecker::kronecker_symbol;
pub use quadratic::{psi_quadratic, QuadraticField};
pub use sieve::{psi_rational, PrimePower, VonMangoldt, SIEVE_LIMIT};
pub use verify::{verify_bound, OracleField, VerifyReport};

use serde::Serialize;

/// How a value of `psi` was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PsiMethod {
    /// Prime ideals grouped by the splitting type of the rational prime below.
    DirectIdeals,
    /// `psi(x) + sum Lambda(n) chi_D(n)`.
    CharacterDecomp,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsiValue {
    pub x: f64,
    pub value: f64,
    pub method: PsiMethod,
    /// Number of rational prime powers `<= x` visited.
    pub prime_power_count: u64,
}

/// `floor(x)` as an integer cutoff, rejecting negative and oversized `x`.
pub(crate) fn cutoff(x: f64) -> crate::Result<u64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(crate::error::domain(format!("psi needs a finite x >= 0, got {x}")));
    }
    let n = x.floor() as u64;
    if n > SIEVE_LIMIT {
        return Err(crate::Error::LimitExceeded {
            limit: n,
            cap: SIEVE_LIMIT,
        });
    }
    Ok(n)
}
