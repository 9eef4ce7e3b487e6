use crate::error::{Error, Result};
use crate::sum::Neumaier;

use super::{cutoff, PsiMethod, PsiValue};

/// Largest sieve limit accepted, as a memory guard.
pub const SIEVE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub n: u32,
    pub p: u32,
    pub k: u32,
}

/// All prime powers up to a limit, in increasing order.
#[derive(Debug, Clone)]
pub struct VonMangoldt {
    limit: u64,
    powers: Vec<PrimePower>,
}

impl VonMangoldt {
    pub fn new(limit: u64) -> Result<Self> {
        if limit > SIEVE_LIMIT {
            return Err(Error::LimitExceeded {
                limit,
                cap: SIEVE_LIMIT,
            });
        }
        let primes = primes_up_to(limit as usize);
        let mut powers = Vec::with_capacity(primes.len() + primes.len() / 8);
        for &p in &primes {
            let mut q = p as u64;
            let mut k = 1;
            while q <= limit {
                powers.push(PrimePower { n: q as u32, p, k });
                q *= p as u64;
                k += 1;
            }
        }
        powers.sort_unstable_by_key(|pp| pp.n);
        Ok(VonMangoldt { limit, powers })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn prime_powers(&self) -> &[PrimePower] {
        &self.powers
    }

    /// Prime powers `<= n`.
    pub fn prime_powers_up_to(&self, n: u64) -> &[PrimePower] {
        let end = self.powers.partition_point(|pp| pp.n as u64 <= n);
        &self.powers[..end]
    }

    /// `Lambda(n)` for `1 <= n <= limit`.
    pub fn lambda(&self, n: u64) -> f64 {
        match self.powers.binary_search_by_key(&n, |pp| pp.n as u64) {
            Ok(i) => (self.powers[i].p as f64).ln(),
            Err(_) => 0.0,
        }
    }
}

/// Odd-only bit sieve of Eratosthenes.
fn primes_up_to(limit: usize) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    // bit i stands for 2i + 1
    let half = limit / 2 + 1;
    let mut composite = vec![0u64; half / 64 + 1];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit {
        if composite[i / 64] >> (i % 64) & 1 == 0 {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j / 64] |= 1 << (j % 64);
                j += p;
            }
        }
        i += 1;
    }
    let mut out = vec![2u32];
    for i in 1..half {
        let v = 2 * i + 1;
        if v > limit {
            break;
        }
        if composite[i / 64] >> (i % 64) & 1 == 0 {
            out.push(v as u32);
        }
    }
    out
}

/// `psi(x) = sum_{n <= x} Lambda(n)`.
pub fn psi_rational(sieve: &VonMangoldt, x: f64) -> Result<PsiValue> {
    let n = cutoff(x)?;
    if n > sieve.limit() {
        return Err(Error::LimitExceeded {
            limit: n,
            cap: sieve.limit(),
        });
    }
    let pps = sieve.prime_powers_up_to(n);
    let acc: Neumaier = pps.iter().map(|pp| (pp.p as f64).ln()).collect();
    Ok(PsiValue {
        x,
        value: acc.value(),
        method: PsiMethod::Rational,
        prime_power_count: pps.len() as u64,
    })
}
