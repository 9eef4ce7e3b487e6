//! Number-field profiles: degree, discriminant and signature.
//!
//! A profile need not describe an actual field. The comparison tables are
//! built on Odlyzko-type lower bounds for the discriminant, which are not
//! integers and can be far outside `f64` range, so the discriminant is held
//! as its logarithm.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constants::Constants;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct FieldProfile {
    degree: u32,
    log_disc: f64,
    r1: u32,
    r2: u32,
}

impl FieldProfile {
    /// Build a profile from `(n_K, Delta_K, r1, r2)`.
    pub fn new(degree: u32, disc: f64, r1: u32, r2: u32) -> Result<Self> {
        if !disc.is_finite() || disc <= 0.0 {
            return Err(domain(format!("discriminant must be finite and positive, got {disc}")));
        }
        Self::from_log_disc(degree, disc.ln(), r1, r2)
    }

    /// Build a profile from `log Delta_K`, for discriminants beyond `f64` range.
    pub fn from_log_disc(degree: u32, log_disc: f64, r1: u32, r2: u32) -> Result<Self> {
        if degree == 0 {
            return Err(domain("degree must be at least 1"));
        }
        if !log_disc.is_finite() {
            return Err(domain(format!("log discriminant must be finite, got {log_disc}")));
        }
        if r1 as u64 + 2 * r2 as u64 != degree as u64 {
            return Err(Error::SignatureMismatch { degree, r1, r2 });
        }
        if log_disc < 0.0 {
            return Err(domain(format!("discriminant must be >= 1, got exp({log_disc})")));
        }
        Ok(FieldProfile {
            degree,
            log_disc,
            r1,
            r2,
        })
    }

    /// The rational field.
    pub fn rational() -> Self {
        FieldProfile {
            degree: 1,
            log_disc: 0.0,
            r1: 1,
            r2: 0,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `n_K` as a float, for use in formulas.
    pub fn n(&self) -> f64 {
        self.degree as f64
    }

    pub fn r1(&self) -> u32 {
        self.r1
    }

    pub fn r2(&self) -> u32 {
        self.r2
    }

    pub fn signature(&self) -> (u32, u32) {
        (self.r1, self.r2)
    }

    pub fn log_disc(&self) -> f64 {
        self.log_disc
    }

    /// `Delta_K`; `+inf` when it overflows.
    pub fn disc(&self) -> f64 {
        self.log_disc.exp()
    }

    pub fn log_root_disc(&self) -> f64 {
        self.log_disc / self.n()
    }

    /// `delta_K = Delta_K^{1/n_K}`.
    pub fn root_disc(&self) -> f64 {
        self.log_root_disc().exp()
    }

    /// `d_K = r1 + r2 - 1`, the unit rank.
    pub fn unit_rank(&self) -> u32 {
        self.r1 + self.r2 - 1
    }

    /// Logarithm of Minkowski's lower bound `(pi/4)^{2 r2} (n^n / n!)^2`.
    pub fn log_minkowski_bound(&self) -> f64 {
        let n = self.n();
        let log_fact: f64 = (2..=self.degree).map(|k| (k as f64).ln()).sum();
        2.0 * self.r2 as f64 * (PI / 4.0).ln() + 2.0 * (n * n.ln() - log_fact)
    }
}

impl fmt::Display for FieldProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let disc = self.disc();
        if disc.is_finite() && disc < 1e15 {
            write!(
                f,
                "({}, {}, {}, {})",
                self.degree,
                round_sig(disc, 12),
                self.r1,
                self.r2
            )
        } else {
            write!(f, "({}, exp({}), {}, {})", self.degree, self.log_disc, self.r1, self.r2)
        }
    }
}

/// `v` rounded to `digits` significant digits.
fn round_sig(v: f64, digits: i32) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let scale = 10f64.powi(digits - 1 - v.abs().log10().floor() as i32);
    if !scale.is_finite() {
        return v;
    }
    (v * scale).round() / scale
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawProfile {
    n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    disc: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    logdisc: Option<f64>,
    r1: u32,
    r2: u32,
}

impl TryFrom<RawProfile> for FieldProfile {
    type Error = Error;

    fn try_from(raw: RawProfile) -> Result<Self> {
        match (raw.disc, raw.logdisc) {
            (Some(d), None) => FieldProfile::new(raw.n, d, raw.r1, raw.r2),
            (None, Some(l)) => FieldProfile::from_log_disc(raw.n, l, raw.r1, raw.r2),
            (Some(d), Some(l)) => {
                if (d.ln() - l).abs() > 1e-9 * l.abs().max(1.0) {
                    return Err(Error::Parse(format!("disc {d} and logdisc {l} disagree")));
                }
                FieldProfile::from_log_disc(raw.n, l, raw.r1, raw.r2)
            }
            (None, None) => Err(Error::Parse("missing disc".into())),
        }
    }
}

impl From<FieldProfile> for RawProfile {
    fn from(p: FieldProfile) -> Self {
        let disc = p.disc();
        let disc = disc.is_finite().then(|| round_sig(disc, 12));
        RawProfile {
            n: p.degree,
            disc,
            logdisc: Some(p.log_disc),
            r1: p.r1,
            r2: p.r2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: &'static str,
    pub message: String,
}

/// Check a profile for conditions under which some bounds lose their
/// justification. Findings are warnings unless `strict` is set, in which case
/// any finding is an error.
pub fn validate(profile: &FieldProfile, strict: bool) -> Result<Vec<Diagnostic>> {
    let mut out = Vec::new();
    let half_log5 = 0.5 * 5f64.ln();
    if profile.unit_rank() > 0 && profile.log_root_disc() < half_log5 {
        out.push(Diagnostic {
            code: "root-disc-below-sqrt5",
            message: format!(
                "delta_K = {:.6} < sqrt(5) with d_K = {} > 0; the epsilon-tilde branch is not justified",
                profile.root_disc(),
                profile.unit_rank()
            ),
        });
    }
    let mink = profile.log_minkowski_bound();
    if profile.log_disc < mink - 1e-12 {
        out.push(Diagnostic {
            code: "below-minkowski",
            message: format!(
                "log Delta_K = {:.6} is below the Minkowski bound {:.6} for (n, r2) = ({}, {})",
                profile.log_disc, mink, profile.degree, profile.r2
            ),
        });
    }
    if profile.degree == 1 && profile.log_disc != 0.0 {
        out.push(Diagnostic {
            code: "degree-one-disc",
            message: "the only degree-1 field is Q, with Delta = 1".into(),
        });
    }
    if strict && !out.is_empty() {
        let msg = out.iter().map(|d| d.message.as_str()).collect::<Vec<_>>().join("; ");
        return Err(Error::Strict(msg));
    }
    Ok(out)
}

/// Correction `e_K` in the `|r_K|` bound.
pub fn e_k(profile: &FieldProfile) -> f64 {
    let c = Constants::standard();
    match profile.signature() {
        (1, 0) => c.e_real_rational,
        (0, 1) => c.e_imag_quadratic,
        _ => 0.0,
    }
}

/// `W_K(T) = log Delta_K + n_K log(T / 2 pi)`.
pub fn w_k(profile: &FieldProfile, t: f64) -> f64 {
    profile.log_disc + profile.n() * (t / (2.0 * PI)).ln()
}

#[cfg(test)]
#[allow(clippy::approx_constant)] // rounded constants as used by the bounds
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_profile() {
        let q = FieldProfile::new(1, 1.0, 1, 0).unwrap();
        assert_eq!(q, FieldProfile::rational());
        assert_eq!(q.root_disc(), 1.0);
        assert_eq!(q.unit_rank(), 0);
    }

    #[test]
    fn odlyzko_real_quadratic() {
        let p = FieldProfile::new(2, 4.9535, 2, 0).unwrap();
        assert!((p.root_disc() - 4.9535f64.sqrt()).abs() < 1e-14);
        assert_eq!(p.unit_rank(), 1);
    }

    #[test]
    fn signature_mismatch() {
        assert_eq!(
            FieldProfile::new(2, 5.0, 1, 1),
            Err(Error::SignatureMismatch {
                degree: 2,
                r1: 1,
                r2: 1
            })
        );
    }

    #[test]
    fn nonpositive_disc() {
        assert!(matches!(FieldProfile::new(2, 0.0, 2, 0), Err(Error::Domain(_))));
        assert!(matches!(FieldProfile::new(2, -3.0, 2, 0), Err(Error::Domain(_))));
        assert!(matches!(FieldProfile::new(2, 0.5, 2, 0), Err(Error::Domain(_))));
        assert!(matches!(FieldProfile::new(0, 1.0, 0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn validate_rational_is_clean() {
        assert!(validate(&FieldProfile::rational(), true).unwrap().is_empty());
    }

    #[test]
    fn validate_small_real_quadratic_warns() {
        let p = FieldProfile::new(2, 4.9535, 2, 0).unwrap();
        let d = validate(&p, false).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].code, "root-disc-below-sqrt5");
        assert!(matches!(validate(&p, true), Err(Error::Strict(_))));
    }

    #[test]
    fn validate_imaginary_quadratic_no_delta_warning() {
        let p = FieldProfile::new(2, 2.9633, 0, 1).unwrap();
        assert!(validate(&p, false).unwrap().is_empty());
    }

    #[test]
    fn validate_below_minkowski() {
        // (n^n/n!)^2 = 4 for n = 2, r2 = 0
        let p = FieldProfile::new(2, 3.0, 2, 0).unwrap();
        let codes: Vec<_> = validate(&p, false).unwrap().into_iter().map(|d| d.code).collect();
        assert!(codes.contains(&"below-minkowski"));
    }

    #[test]
    fn validate_degree_one_with_disc() {
        let p = FieldProfile::new(1, 7.0, 1, 0).unwrap();
        assert!(validate(&p, true).is_err());
    }

    #[test]
    fn e_k_cases() {
        assert_eq!(e_k(&FieldProfile::rational()), 4.4002);
        assert_eq!(e_k(&FieldProfile::new(2, 3.0, 0, 1).unwrap()), 0.6931);
        assert_eq!(e_k(&FieldProfile::new(3, 23.0, 1, 1).unwrap()), 0.0);
    }

    #[test]
    fn w_k_examples() {
        let q = FieldProfile::rational();
        assert!(w_k(&q, 2.0 * PI).abs() < 1e-15);
        let p = FieldProfile::new(3, 5.0, 1, 1).unwrap();
        assert!((w_k(&p, 2.0 * PI) - 5f64.ln()).abs() < 1e-15);
        assert!((w_k(&q, 10.0) - 0.464_708_026_584_700_3).abs() < 1e-15);
    }

    #[test]
    fn json_shape() {
        let p = FieldProfile::new(2, 5.0, 0, 1).unwrap();
        let v: serde_json::Value = serde_json::to_value(p).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["r1"], 0);
        assert_eq!(v["r2"], 1);
        assert_eq!(v["disc"].as_f64().unwrap(), 5.0);
        assert_eq!(v["logdisc"].as_f64().unwrap(), 5f64.ln());
        assert_eq!(p.to_string(), "(2, 5, 0, 1)");
        assert!(serde_json::from_str::<FieldProfile>(r#"{"n":2,"disc":6,"logdisc":1.6,"r1":2,"r2":0}"#).is_err());
        let q: FieldProfile = serde_json::from_str(r#"{"n":1,"disc":1,"r1":1,"r2":0}"#).unwrap();
        assert_eq!(q, FieldProfile::rational());
        let big: FieldProfile = serde_json::from_str(r#"{"n":200,"logdisc":1726.0,"r1":200,"r2":0}"#).unwrap();
        assert!(big.disc().is_infinite());
        let back: FieldProfile = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
        assert!(serde_json::from_str::<FieldProfile>(r#"{"n":2,"disc":5,"r1":1,"r2":1}"#).is_err());
    }

    proptest! {
        #[test]
        fn root_disc_power_recovers_disc(n in 1u32..60, log_disc in 0.0f64..600.0) {
            let p = FieldProfile::from_log_disc(n, log_disc, n, 0).unwrap();
            let back = p.root_disc().ln() * p.n();
            prop_assert!((back - log_disc).abs() <= 1e-12 * log_disc.max(1.0));
        }

        #[test]
        fn w_k_is_additive_and_increasing(n in 1u32..30, log_disc in 0.0f64..100.0, t in 0.1f64..1e6, s in 0.1f64..1e6) {
            let p = FieldProfile::from_log_disc(n, log_disc, n, 0).unwrap();
            let base = w_k(&p, 2.0 * PI);
            let lhs = w_k(&p, t);
            let rhs = base + p.n() * (t / (2.0 * PI)).ln();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
            if t < s {
                prop_assert!(w_k(&p, t) < w_k(&p, s));
            }
        }
    }
}
