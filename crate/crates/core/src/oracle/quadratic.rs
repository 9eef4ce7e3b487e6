use crate::error::{domain, Error, Result};
use crate::field::FieldProfile;
use crate::sum::Neumaier;

use super::{cutoff, kronecker_symbol, PrimePower, PsiMethod, PsiValue, VonMangoldt};

/// `Q(sqrt D)` for a fundamental discriminant `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticField {
    disc: i64,
}

fn squarefree(m: u64) -> bool {
    let mut m = m;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return false;
            }
        }
        d += 1;
    }
    true
}

impl QuadraticField {
    pub fn new(disc: i64) -> Result<Self> {
        if !Self::is_fundamental(disc) {
            return Err(domain(format!("{disc} is not a fundamental discriminant")));
        }
        Ok(QuadraticField { disc })
    }

    /// `D = 1 mod 4` squarefree, or `D = 4m` with `m = 2, 3 mod 4` squarefree.
    pub fn is_fundamental(d: i64) -> bool {
        if d == 0 || d == 1 || d.unsigned_abs() > 1 << 62 {
            return false;
        }
        match d.rem_euclid(4) {
            1 => squarefree(d.unsigned_abs()),
            0 => {
                let m = d / 4;
                matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
            }
            _ => false,
        }
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn profile(&self) -> FieldProfile {
        let (r1, r2) = if self.disc > 0 { (2, 0) } else { (0, 1) };
        FieldProfile::new(2, self.disc.unsigned_abs() as f64, r1, r2).expect("quadratic profile is valid")
    }

    /// Contribution of the prime ideals above `p` with norm `p^k`, summed.
    pub(crate) fn ideal_weight(&self, pp: &PrimePower) -> f64 {
        let lp = (pp.p as f64).ln();
        match kronecker_symbol(self.disc, pp.p as u64) {
            1 => 2.0 * lp,
            // one prime of norm p^2, weight log N = 2 log p
            -1 if pp.k.is_multiple_of(2) => 2.0 * lp,
            -1 => 0.0,
            _ => lp,
        }
    }
}

/// `psi_K(x)` for a quadratic field, by either method.
pub fn psi_quadratic(field: &QuadraticField, sieve: &VonMangoldt, x: f64, method: PsiMethod) -> Result<PsiValue> {
    let n = cutoff(x)?;
    if n > sieve.limit() {
        return Err(Error::LimitExceeded {
            limit: n,
            cap: sieve.limit(),
        });
    }
    let pps = sieve.prime_powers_up_to(n);
    let value = match method {
        PsiMethod::DirectIdeals => pps
            .iter()
            .map(|pp| field.ideal_weight(pp))
            .collect::<Neumaier>()
            .value(),
        PsiMethod::CharacterDecomp => {
            let mut acc = Neumaier::new();
            for pp in pps {
                let lp = (pp.p as f64).ln();
                acc.add(lp);
                acc.add(lp * kronecker_symbol(field.disc, pp.n as u64) as f64);
            }
            acc.value()
        }
        PsiMethod::Rational => return Err(domain("use psi_rational for Q")),
    };
    Ok(PsiValue {
        x,
        value,
        method,
        prime_power_count: pps.len() as u64,
    })
}
