use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::field::FieldProfile;
use crate::theorems::BoundFormula;

use super::{QuadraticField, VonMangoldt};

/// A field for which `psi_K` is computed exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleField {
    Rational,
    Quadratic(QuadraticField),
}

impl OracleField {
    pub fn profile(&self) -> FieldProfile {
        match self {
            OracleField::Rational => FieldProfile::rational(),
            OracleField::Quadratic(k) => k.profile(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            OracleField::Rational => "Q".to_string(),
            OracleField::Quadratic(k) => format!("Q(sqrt({}))", k.disc()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub field: String,
    pub formula: BoundFormula,
    pub x_max: f64,
    /// Largest `|psi_K(x) - x| / bound(x)` over the samples.
    pub max_ratio: f64,
    pub argmax_x: f64,
    pub psi_at_max: f64,
    pub bound_at_max: f64,
    pub samples: u64,
    pub pass: bool,
}

const CHUNK: usize = 1 << 16;
/// Offset for the left limit of `psi` at the next integer.
const LEFT: f64 = 1e-7;

#[derive(Clone, Copy)]
struct Worst {
    ratio: f64,
    x: f64,
    psi: f64,
    bound: f64,
}

impl Worst {
    fn pick(a: Worst, b: Worst) -> Worst {
        if b.ratio > a.ratio || (b.ratio == a.ratio && b.x < a.x) {
            b
        } else {
            a
        }
    }
}

/// Compare exact `psi_K` with a bound on `[validity_min_x, x_max]`.
///
/// `psi_K` is constant on `[n, n+1)`, so each integer `n` is sampled together
/// with `n + 1 - 1e-7`, where `|psi_K(x) - x|` is largest from below.
pub fn verify_bound(
    field: &OracleField,
    sieve: &VonMangoldt,
    formula: BoundFormula,
    x_max: f64,
) -> Result<VerifyReport> {
    if formula.needs_parameters() {
        return Err(domain(format!("'{formula}' bounds a smoothed sum, not psi_K(x) - x")));
    }
    let min_x = formula.validity_min_x();
    if !(x_max >= min_x) || !x_max.is_finite() {
        return Err(Error::Validity {
            formula: formula.name(),
            min_x,
            x: x_max,
        });
    }
    let last = x_max.floor() as u64;
    if last > sieve.limit() {
        return Err(Error::LimitExceeded {
            limit: last,
            cap: sieve.limit(),
        });
    }
    let profile = field.profile();
    let weight = |i: usize| -> f64 {
        let pp = &sieve.prime_powers()[i];
        match field {
            OracleField::Rational => (pp.p as f64).ln(),
            OracleField::Quadratic(k) => k.ideal_weight(pp),
        }
    };
    let first = min_x.ceil() as u64;
    let pps = sieve.prime_powers();
    let mut idx = 0;
    let mut psi = crate::sum::Neumaier::new();
    let mut worst = Worst {
        ratio: f64::NEG_INFINITY,
        x: 0.0,
        psi: 0.0,
        bound: 0.0,
    };
    let mut samples = 0u64;
    let mut chunk: Vec<(u64, f64)> = Vec::with_capacity(CHUNK);
    let mut n = first;
    while n <= last {
        chunk.clear();
        while n <= last && chunk.len() < CHUNK {
            while idx < pps.len() && pps[idx].n as u64 <= n {
                psi.add(weight(idx));
                idx += 1;
            }
            chunk.push((n, psi.value()));
            n += 1;
        }
        let local = chunk
            .par_iter()
            .map(|&(m, v)| -> Result<(Worst, u64)> {
                let mut w = Worst {
                    ratio: f64::NEG_INFINITY,
                    x: 0.0,
                    psi: 0.0,
                    bound: 0.0,
                };
                let mut count = 0;
                let right = m as f64 + 1.0 - LEFT;
                for x in [m as f64, right] {
                    if x > x_max {
                        continue;
                    }
                    let b = formula.evaluate(&profile, x)?.value;
                    let r = (v - x).abs() / b;
                    w = Worst::pick(
                        w,
                        Worst {
                            ratio: r,
                            x,
                            psi: v,
                            bound: b,
                        },
                    );
                    count += 1;
                }
                Ok((w, count))
            })
            .collect::<Result<Vec<_>>>()?;
        for (w, c) in local {
            worst = Worst::pick(worst, w);
            samples += c;
        }
    }
    Ok(VerifyReport {
        field: field.label(),
        formula,
        x_max,
        max_ratio: worst.ratio,
        argmax_x: worst.x,
        psi_at_max: worst.psi,
        bound_at_max: worst.bound,
        samples,
        pass: worst.ratio < 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_range_passes() {
        let s = VonMangoldt::new(20_000).unwrap();
        let r = verify_bound(&OracleField::Rational, &s, BoundFormula::Optimized, 20_000.0).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.max_ratio > 0.0);
        assert_eq!(r.samples, 2 * (20_000 - 3) + 1);
        let k = OracleField::Quadratic(QuadraticField::new(-4).unwrap());
        let r = verify_bound(&k, &s, BoundFormula::PriorX2000, 10_000.0).unwrap();
        assert!(r.pass && r.argmax_x >= 2000.0);
    }

    #[test]
    fn argument_checks() {
        let s = VonMangoldt::new(1000).unwrap();
        assert!(verify_bound(&OracleField::Rational, &s, BoundFormula::General, 100.0).is_err());
        assert!(verify_bound(&OracleField::Rational, &s, BoundFormula::PriorX2000, 1000.0).is_err());
        assert!(matches!(
            verify_bound(&OracleField::Rational, &s, BoundFormula::Optimized, 5000.0),
            Err(Error::LimitExceeded { .. })
        ));
    }
}
