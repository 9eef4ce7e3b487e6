//! Principal-branch Lambert W and the series `f1`, `f2`, `R_{r1,r2}`.

use crate::constants::Constants;
use crate::error::{domain, Error, Result};
use crate::field::FieldProfile;

/// Truncation policy for the `f1`/`f2` series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPolicy {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            rel_tol: 1e-16,
            max_terms: 200,
        }
    }
}

impl SeriesPolicy {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || max_terms < 10 {
            return Err(domain("series policy needs rel_tol > 0 and max_terms >= 10"));
        }
        Ok(SeriesPolicy { rel_tol, max_terms })
    }
}

/// Principal branch `W_0(x)` for `x >= 0`.
///
/// Bracketed Halley iteration. For `x > e` the iteration runs on
/// `w + ln w - ln x`, which stays well scaled up to the top of the `f64`
/// range.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(domain(format!("lambert_w0 needs a finite x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x <= std::f64::consts::E {
        return Ok(w0_small(x));
    }
    Ok(w0_from_log(x.ln()))
}

/// `W_0(e^{log_x})`, for arguments whose value overflows `f64`.
pub fn lambert_w0_of_exp(log_x: f64) -> Result<f64> {
    if log_x.is_nan() || log_x == f64::INFINITY {
        return Err(domain(format!(
            "lambert_w0_of_exp needs a finite argument, got {log_x}"
        )));
    }
    if log_x <= 1.0 {
        return lambert_w0(log_x.exp());
    }
    Ok(w0_from_log(log_x))
}

fn w0_small(x: f64) -> f64 {
    // 0 < x <= e, so 0 < w <= 1
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut w = if x < 0.3 { x * (1.0 - x) } else { x.ln_1p() * 0.8 };
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            return w;
        }
        if f < 0.0 {
            lo = lo.max(w);
        } else {
            hi = hi.min(w);
        }
        let fp = ew * (w + 1.0);
        let fpp = ew * (w + 2.0);
        let mut next = w - 2.0 * f * fp / (2.0 * fp * fp - f * fpp);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - w).abs() <= 4.0 * f64::EPSILON * next.abs() {
            return next;
        }
        w = next;
    }
    w
}

fn w0_from_log(log_x: f64) -> f64 {
    // log_x > 1, so w > 1; solve g(w) = w + ln w - log_x = 0, g increasing
    let l1 = log_x;
    let l2 = l1.ln();
    let (mut lo, mut hi) = (1.0f64, l1);
    let mut w = (l1 - l2 + l2 / l1).clamp(lo, hi);
    for _ in 0..100 {
        let g = w + w.ln() - log_x;
        if g == 0.0 {
            return w;
        }
        if g < 0.0 {
            lo = lo.max(w);
        } else {
            hi = hi.min(w);
        }
        let gp = 1.0 + 1.0 / w;
        let gpp = -1.0 / (w * w);
        let mut next = w - 2.0 * g * gp / (2.0 * gp * gp - g * gpp);
        if !(next >= lo && next <= hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - w).abs() <= 2.0 * f64::EPSILON * next {
            return next;
        }
        w = next;
    }
    w
}

/// `log t - log log t + 1.024 log log t / log t`, an upper bound for `W_0(t)`
/// on `t >= e`.
pub fn lambert_w_upper(t: f64) -> Result<f64> {
    if !(t >= std::f64::consts::E) || !t.is_finite() {
        return Err(domain(format!("lambert_w_upper needs t >= e, got {t}")));
    }
    let l1 = t.ln();
    let l2 = l1.ln();
    Ok(l1 - l2 + Constants::standard().lambert_upper * l2 / l1)
}

fn series(x: f64, policy: SeriesPolicy, first: f64, term: impl Fn(usize, f64) -> f64) -> Result<f64> {
    // term(r, x^{-2(r-1)} * first) gives the r-th summand
    let inv_sq = 1.0 / (x * x);
    let mut power = first;
    let mut sum = 0.0;
    for r in 1..=policy.max_terms {
        let t = term(r, power);
        sum += t;
        if t < policy.rel_tol * sum {
            return Ok(sum);
        }
        power *= inv_sq;
    }
    Err(Error::Convergence(format!(
        "series at x = {x} not converged after {} terms",
        policy.max_terms
    )))
}

/// `f1(x) = sum_{r>=1} x^{1-2r} / (2r (2r-1))`.
pub fn f1(x: f64) -> Result<f64> {
    f1_with(x, SeriesPolicy::default())
}

pub fn f1_with(x: f64, policy: SeriesPolicy) -> Result<f64> {
    if !(x > 1.0) {
        return Err(domain(format!("f1 needs x > 1, got {x}")));
    }
    series(x, policy, 1.0 / x, |r, p| {
        let k = 2.0 * r as f64;
        p / (k * (k - 1.0))
    })
}

/// `f2(x) = sum_{r>=2} x^{2-2r} / ((2r-1)(2r-2))`.
pub fn f2(x: f64) -> Result<f64> {
    f2_with(x, SeriesPolicy::default())
}

pub fn f2_with(x: f64, policy: SeriesPolicy) -> Result<f64> {
    if !(x > 1.0) {
        return Err(domain(format!("f2 needs x > 1, got {x}")));
    }
    // shift the index so the loop starts at r = 2
    series(x, policy, 1.0 / (x * x), |r, p| {
        let k = 2.0 * (r + 1) as f64;
        p / ((k - 1.0) * (k - 2.0))
    })
}

/// `R_{r1,r2}(x) = -(r1+r2-1)(x log x - x) + r2 (log x + 1) - (r1+r2) f1(x) - r2 f2(x)`.
pub fn r_remainder(profile: &FieldProfile, x: f64) -> Result<f64> {
    r_remainder_sig(profile.r1(), profile.r2(), x)
}

/// [`r_remainder`] for a bare signature.
pub fn r_remainder_sig(r1: u32, r2: u32, x: f64) -> Result<f64> {
    if !(x >= 3.0) {
        return Err(domain(format!("R needs x >= 3, got {x}")));
    }
    let d = (r1 + r2) as f64 - 1.0;
    let r1 = r1 as f64;
    let r2 = r2 as f64;
    let lx = x.ln();
    Ok(-d * (x * lx - x) + r2 * (lx + 1.0) - (r1 + r2) * f1(x)? - r2 * f2(x)?)
}
