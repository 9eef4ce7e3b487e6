//! Choice of the truncation height `T` for the optimized bound.
//!
//! Exact minimisation of the bound in `T` has no closed form. The optimized
//! bound uses a Lambert-W approximation `T = 8.2822 + a/w`; the implicit
//! solutions `T_0` and `T_min` are kept here as diagnostics and to bound the
//! second-order remainder `R`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::Constants;
use crate::error::{domain, Error, Result};
use crate::field::FieldProfile;
use crate::solve::bracketed_newton;
use crate::specfun::lambert_w0_of_exp;

const SOLVER_TOL: f64 = 1e-9;
const MAX_ITER: usize = 200;

/// `sqrt(5) = 2/kappa + kappa/2` at the default `kappa`.
fn log_weight() -> f64 {
    5f64.sqrt()
}

/// Positive root of `T^2 - 7.0604 T - 10.1186`.
pub fn t_f() -> f64 {
    Constants::standard().t_f()
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 3.0) || !x.is_finite() {
        return Err(domain(format!("x >= 3 required, got x = {x}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Residuals {
    /// `T_W (log(T_W/2pi) + sqrt5 + log delta) - a`, relative to `a`.
    pub lambert: f64,
    pub t0: Option<f64>,
    pub t_min: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TSelection {
    pub a: f64,
    pub w: f64,
    pub t_f: f64,
    pub t_w: f64,
    pub t: f64,
    pub t0: Option<f64>,
    pub t_min: Option<f64>,
    pub residuals: Residuals,
}

/// `a = kappa pi sqrt(x) / (2 n) + 21.3270 + 33.3542 / n`.
pub fn aggregate(profile: &FieldProfile, x: f64) -> f64 {
    let c = Constants::standard();
    let n = profile.n();
    Constants::kappa_default() * PI * x.sqrt() / (2.0 * n) + c.e_const_t1 + c.e_degree_t1 / n
}

/// Lambert-W choice of `T` for the optimized bound.
pub fn select_t(profile: &FieldProfile, x: f64) -> Result<TSelection> {
    check_x(x)?;
    let c = Constants::standard();
    let a = aggregate(profile, x);
    let log_delta = profile.log_root_disc();
    let log_arg = log_weight() - (2.0 * PI).ln() + log_delta + a.ln();
    let w = lambert_w0_of_exp(log_arg)?;
    let t_w = a / w;
    let lambert = (t_w * ((t_w / (2.0 * PI)).ln() + log_weight() + log_delta) - a) / a;
    Ok(TSelection {
        a,
        w,
        t_f: c.t_f(),
        t_w,
        t: c.t_offset + t_w,
        t0: None,
        t_min: None,
        residuals: Residuals {
            lambert,
            t0: None,
            t_min: None,
        },
    })
}

/// [`select_t`] plus the implicit solutions `T_0` and `T_min`.
pub fn select_t_with_diagnostics(profile: &FieldProfile, x: f64) -> Result<TSelection> {
    let mut sel = select_t(profile, x)?;
    let t0 = solve_t0(profile, x)?;
    let tm = solve_tmin(profile, x)?;
    sel.t0 = Some(t0.x);
    sel.t_min = Some(tm.x);
    sel.residuals.t0 = Some(t0.residual);
    sel.residuals.t_min = Some(tm.residual);
    Ok(sel)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solved {
    pub x: f64,
    /// Residual relative to the right-hand side.
    pub residual: f64,
}

/// `(T - 7.0604 - 10.1186/T)(log(T/2pi) + sqrt5 + log delta)` and its derivative.
fn stationarity_lhs(t: f64, log_delta: f64) -> (f64, f64) {
    let c = Constants::standard();
    let first = t - c.tf_lin - c.tf_const / t;
    let second = (t / (2.0 * PI)).ln() + log_weight() + log_delta;
    let d = (1.0 + c.tf_const / (t * t)) * second + first / t;
    (first * second, d)
}

fn solve_above_t_f(
    rhs: impl Fn(f64) -> f64,
    drhs: impl Fn(f64) -> f64,
    log_delta: f64,
    hi_start: f64,
) -> Result<Solved> {
    let tf = t_f();
    let f = |t: f64| stationarity_lhs(t, log_delta).0 - rhs(t);
    let df = |t: f64| stationarity_lhs(t, log_delta).1 - drhs(t);
    let lo = tf + 1e-9;
    let mut hi = hi_start.max(lo + 1.0);
    let mut grow = 0;
    while f(hi) <= 0.0 {
        hi = tf + 2.0 * (hi - tf);
        grow += 1;
        if grow > 200 {
            return Err(Error::Convergence("could not bracket the root above T_F".into()));
        }
    }
    let scale = rhs(hi).abs().max(1.0);
    let root = bracketed_newton(f, df, lo, hi, SOLVER_TOL * scale, MAX_ITER)?;
    Ok(Solved {
        x: root.x,
        residual: root.residual / rhs(root.x),
    })
}

/// Root above `T_F` of
/// `(T - 7.0604 - 10.1186/T)(log(T/2pi) + sqrt5 + log delta) = rhs`.
pub fn solve_t0_with_rhs(profile: &FieldProfile, x: f64, rhs: f64) -> Result<Solved> {
    check_x(x)?;
    if !(rhs > 0.0) {
        return Err(domain(format!("right-hand side must be positive, got {rhs}")));
    }
    let hi = t_f() + select_t(profile, x)?.t_w + 1.0;
    solve_above_t_f(|_| rhs, |_| 0.0, profile.log_root_disc(), hi)
}

/// `T_0`, with right-hand side `kappa pi sqrt(x)/(2n) + 21.3270 + 33.5251/n`.
pub fn solve_t0(profile: &FieldProfile, x: f64) -> Result<Solved> {
    let c = Constants::standard();
    let n = profile.n();
    let rhs = Constants::kappa_default() * PI * x.sqrt() / (2.0 * n) + c.e_const_t1 + c.t0_degree / n;
    solve_t0_with_rhs(profile, x, rhs)
}

/// `T_min`, the stationary point of [`e_objective`] above `T_F`.
pub fn solve_tmin(profile: &FieldProfile, x: f64) -> Result<Solved> {
    check_x(x)?;
    let c = Constants::standard();
    let n = profile.n();
    let lead = Constants::kappa_default() * PI * x.sqrt() / (2.0 * n);
    let rhs = |t: f64| lead + c.tmin_const_t1 + c.tmin_const_t2 / t + (c.e_degree_t1 + c.tmin_degree_t2 / t) / n;
    let drhs = |t: f64| -(c.tmin_const_t2 + c.tmin_degree_t2 / n) / (t * t);
    let hi = t_f() + select_t(profile, x)?.t_w + 1.0;
    solve_above_t_f(rhs, drhs, profile.log_root_disc(), hi)
}

/// The smooth part `E(x, T)` of the `|psi - x|` bound, normalised by
/// `n_K sqrt(x) / pi`, at `kappa = sqrt(5) - 1`.
pub fn e_objective(profile: &FieldProfile, x: f64, t: f64) -> Result<f64> {
    check_x(x)?;
    if !(t >= 5.0) {
        return Err(domain(format!("T >= 5 required, got T = {t}")));
    }
    let c = Constants::standard();
    let n = profile.n();
    let ld = profile.log_root_disc();
    let lam = (t / (2.0 * PI)).ln() + log_weight() + ld;
    let sx = x.sqrt();
    Ok(0.5 * lam * lam - 0.5 * ld * ld
        + (c.tf_lin / t + c.e_t2 / (t * t)) * lam
        + Constants::kappa_default() * PI * sx / (2.0 * n * t)
        + c.e_const_t1 / t
        + c.e_const_t2 / (t * t)
        + (c.e_degree_t1 / t + c.e_degree_t2 / (t * t)) / n
        + c.alpha * ld
        - c.e_offset
        + c.gamma / n
        + c.rk_const * PI / (n * sx))
}

/// Second-order remainder `(18.7781 + 27.5673/n - 5.0593 w) / T_0^2` with
/// `w = log(T_0/2pi) + sqrt5 + log delta`, where `T_0` solves the stationarity
/// equation with right-hand side `S = kappa pi sqrt(x)/(2n) + 21.3270 + 33.3542/n`.
pub fn truncation_remainder(profile: &FieldProfile, x: f64) -> Result<f64> {
    let s = aggregate(profile, x);
    let t0 = solve_t0_with_rhs(profile, x, s)?.x;
    Ok(remainder_from_t0(profile.n(), profile.log_root_disc(), t0))
}

fn remainder_from_t0(n: f64, log_delta: f64, t0: f64) -> f64 {
    let c = Constants::standard();
    let w = (t0 / (2.0 * PI)).ln() + log_weight() + log_delta;
    (c.e_const_t2 + c.e_degree_t2 / n - c.r_w * w) / (t0 * t0)
}

/// `T_0 - T_min` next to its first-order prediction `7.0604 / log T_0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapDiagnostic {
    pub t0: f64,
    pub t_min: f64,
    pub gap: f64,
    pub predicted: f64,
}

pub fn t0_tmin_gap(profile: &FieldProfile, x: f64) -> Result<GapDiagnostic> {
    let t0 = solve_t0(profile, x)?.x;
    let t_min = solve_tmin(profile, x)?.x;
    Ok(GapDiagnostic {
        t0,
        t_min,
        gap: t0 - t_min,
        predicted: Constants::standard().tf_lin / t0.ln(),
    })
}

/// Outcome of the `c_max` scan for one degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CmaxResult {
    #[serde(rename = "n")]
    pub degree: u32,
    #[serde(rename = "disc")]
    pub disc_used: f64,
    pub c_max: f64,
    pub x_at_max: u64,
    pub n_points: u64,
    /// True when the scan hit [`SCAN_CAP`] before `R` turned negative.
    #[serde(skip)]
    pub capped: bool,
}

pub const SCAN_CAP: u64 = 1_000_000_000_000;

/// Next point of the scan grid: step 1 below 5000, 10 below 10^4, 100 below
/// 10^5, doubling afterwards.
pub fn next_scan_point(x: u64) -> u64 {
    match x {
        0..=4999 => x + 1,
        5000..=9999 => x + 10,
        10_000..=99_999 => x + 100,
        _ => 2 * x,
    }
}

fn scan(degree: u32, disc: f64, remainder: impl Fn(u64) -> Result<f64>) -> Result<CmaxResult> {
    let n = degree as f64;
    let mut x = 3u64;
    let mut best: Option<(f64, u64)> = None;
    let mut nonnegative = 0u64;
    loop {
        let r = remainder(x)?;
        let next = next_scan_point(x);
        let c = n * (next as f64).sqrt() / PI * r;
        if best.is_none_or(|(b, _)| c > b) {
            best = Some((c, x));
        }
        if r < 0.0 {
            break;
        }
        nonnegative += 1;
        if next > SCAN_CAP {
            let (c_max, x_at_max) = best.unwrap();
            return Ok(CmaxResult {
                degree,
                disc_used: disc,
                c_max,
                x_at_max,
                n_points: nonnegative,
                capped: true,
            });
        }
        x = next;
    }
    let (c_max, x_at_max) = best.expect("at least one point");
    Ok(CmaxResult {
        degree,
        disc_used: disc,
        c_max,
        x_at_max,
        n_points: nonnegative.max(1),
        capped: false,
    })
}

/// Scan `c_n = n sqrt(x_{n+1}) / pi * R(x_n)` along the grid until `R < 0`,
/// for the field of the given degree with minimal discriminant `disc_min`.
///
/// `n_points` counts the grid points with `R >= 0`, and is at least 1.
pub fn cmax_scan(degree: u32, disc_min: f64) -> Result<CmaxResult> {
    if degree == 0 || !(disc_min >= 1.0) || !disc_min.is_finite() {
        return Err(domain(format!(
            "cmax_scan needs degree >= 1 and disc >= 1, got ({degree}, {disc_min})"
        )));
    }
    // R depends on the profile only through n and delta
    let profile = FieldProfile::new(degree, disc_min, degree, 0)?;
    scan(degree, disc_min, |x| truncation_remainder(&profile, x as f64))
}

/// Scan valid for every degree `>= degree`: `T_0` is replaced by its lower
/// bound `T_F`, so `R` no longer depends on `x`.
pub fn cmax_scan_tail(degree: u32, disc_min: f64) -> Result<CmaxResult> {
    if degree == 0 || !(disc_min >= 1.0) || !disc_min.is_finite() {
        return Err(domain(format!(
            "cmax_scan_tail needs degree >= 1 and disc >= 1, got ({degree}, {disc_min})"
        )));
    }
    let n = degree as f64;
    let log_delta = disc_min.ln() / n;
    let r = remainder_from_t0(n, log_delta, t_f());
    scan(degree, disc_min, |_| Ok(r))
}

/// Smallest root discriminant for which the tail remainder is negative.
pub fn tail_root_disc_threshold(degree: u32) -> f64 {
    let c = Constants::standard();
    let n = degree as f64;
    let w_needed = (c.e_const_t2 + c.e_degree_t2 / n) / c.r_w;
    (w_needed - (t_f() / (2.0 * PI)).ln() - log_weight()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_f_value() {
        let tf = t_f();
        assert!((tf - 8.282137).abs() < 1e-6);
        assert!((tf * tf - 7.0604 * tf - 10.1186).abs() < 1e-10);
        assert!(tf > 5.0);
    }

    fn bisect_lambert_t(profile: &FieldProfile, x: f64) -> f64 {
        let a = aggregate(profile, x);
        let ld = profile.log_root_disc();
        let g = |t: f64| t * ((t / (2.0 * PI)).ln() + 5f64.sqrt() + ld) - a;
        let (mut lo, mut hi) = (1e-6f64, 1e12f64);
        for _ in 0..300 {
            let m = 0.5 * (lo + hi);
            if g(m) < 0.0 {
                lo = m
            } else {
                hi = m
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn select_t_examples() {
        let q = FieldProfile::rational();
        let s = select_t(&q, 1e4).unwrap();
        assert!(s.residuals.lambert.abs() <= 1e-9);
        assert!((s.t_w - s.a / s.w).abs() == 0.0);
        let s6 = select_t(&q, 1e6).unwrap();
        let a = (5f64.sqrt() - 1.0) * PI * 500.0 + 21.3270 + 33.3542;
        assert!((s6.a - a).abs() < 1e-9);
        let tb = bisect_lambert_t(&q, 1e6);
        assert!((s6.t - 8.2822 - tb).abs() < 1e-9 * tb);
        for x in [3.0, 10.0, 1e3, 1e9] {
            assert!(select_t(&q, x).unwrap().t >= 8.2822);
        }
        assert!(select_t(&q, 2.0).is_err());
        let huge = FieldProfile::from_log_disc(200, 200.0 * 3000.0, 200, 0).unwrap();
        let s = select_t(&huge, 1e4).unwrap();
        assert!(s.t > 8.2822 && s.residuals.lambert.abs() < 1e-9);
    }

    #[test]
    fn t_monotone() {
        let q = FieldProfile::rational();
        let mut prev = 0.0;
        for i in 0..40 {
            let x = 3.0 * 2f64.powi(i);
            let t = select_t(&q, x).unwrap().t;
            assert!(t > prev);
            prev = t;
        }
        let mut prev = f64::INFINITY;
        for ld in [0.0, 0.5, 1.0, 2.0, 5.0, 20.0] {
            let p = FieldProfile::from_log_disc(4, 4.0 * ld, 4, 0).unwrap();
            let t = select_t(&p, 1e6).unwrap().t;
            assert!(t < prev);
            prev = t;
        }
    }

    #[test]
    fn t0_examples() {
        let q = FieldProfile::rational();
        let tf = t_f();
        for p in [
            q,
            FieldProfile::new(2, 5.0, 2, 0).unwrap(),
            FieldProfile::new(5, 1609.0, 1, 2).unwrap(),
        ] {
            for x in [3.0, 100.0, 1e6, 1e12] {
                let s = select_t(&p, x).unwrap();
                let t0 = solve_t0(&p, x).unwrap();
                assert!(t0.x > tf);
                assert!(t0.x <= tf + s.t_w, "{p} {x}");
                assert!(t0.residual.abs() <= 1e-9);
            }
        }
        let (lhs, _) = stationarity_lhs(tf, 0.0);
        assert!(lhs.abs() < 1e-12);
        let t0 = solve_t0(&q, 1e6).unwrap().x;
        let lhs = (t0 - 7.0604 - 10.1186 / t0) * ((t0 / (2.0 * PI)).ln() + 5f64.sqrt());
        let rhs = (5f64.sqrt() - 1.0) * PI * 1e3 / 2.0 + 21.3270 + 33.5251;
        assert!((lhs - rhs).abs() <= 1e-9 * rhs);
    }

    #[test]
    fn tmin_examples() {
        let q = FieldProfile::rational();
        let tm = solve_tmin(&q, 1e6).unwrap();
        let t0 = solve_t0(&q, 1e6).unwrap();
        assert!(tm.x < t0.x);
        assert!(tm.residual.abs() <= 1e-9);
        let g = t0_tmin_gap(&q, 1e10).unwrap();
        let ratio = g.gap / g.predicted;
        assert!(ratio > 1.0 / 1.5 && ratio < 1.5, "{g:?}");
    }

    #[test]
    fn objective_properties() {
        let q = FieldProfile::rational();
        assert!(e_objective(&q, 100.0, 1e8).unwrap() > e_objective(&q, 100.0, 1e3).unwrap());
        for p in [
            q,
            FieldProfile::new(2, 5.0, 2, 0).unwrap(),
            FieldProfile::new(3, 23.0, 1, 1).unwrap(),
        ] {
            for x in [1e3, 1e6, 1e9] {
                let tm = solve_tmin(&p, x).unwrap().x;
                let h = 1e-4 * tm;
                let d = (e_objective(&p, x, tm + h).unwrap() - e_objective(&p, x, tm - h).unwrap()) / (2.0 * h);
                let e = e_objective(&p, x, tm).unwrap();
                assert!(d.abs() <= 1e-6 * e.abs() / tm, "{p} {x}: {d}");
            }
        }
        assert!(e_objective(&q, 100.0, 4.0).is_err());
    }

    #[test]
    fn remainder_sign_and_decrease() {
        let cubic = FieldProfile::new(3, 23.0, 1, 1).unwrap();
        assert!(truncation_remainder(&cubic, 100.0).unwrap() > truncation_remainder(&cubic, 1e4).unwrap());
        let sept = FieldProfile::new(7, 184607.0, 1, 3).unwrap();
        assert!(truncation_remainder(&sept, 3.0).unwrap() < 0.0);
    }

    #[test]
    fn w_nondecreasing_in_log_delta() {
        for x in [3.0, 1e3, 1e7] {
            let mut prev = f64::NEG_INFINITY;
            for i in 0..30 {
                let ld = 0.2 * i as f64;
                let p = FieldProfile::from_log_disc(3, 3.0 * ld, 3, 0).unwrap();
                let t0 = solve_t0(&p, x).unwrap().x;
                let w = (t0 / (2.0 * PI)).ln() + 5f64.sqrt() + ld;
                assert!(w >= prev);
                prev = w;
            }
        }
    }

    #[test]
    fn scan_grid() {
        assert_eq!(next_scan_point(3), 4);
        assert_eq!(next_scan_point(4999), 5000);
        assert_eq!(next_scan_point(5000), 5010);
        assert_eq!(next_scan_point(9990), 10_000);
        assert_eq!(next_scan_point(10_000), 10_100);
        assert_eq!(next_scan_point(99_900), 100_000);
        assert_eq!(next_scan_point(100_000), 200_000);
    }

    #[test]
    fn cmax_degree_seven_is_negative_immediately() {
        let r = cmax_scan(7, 184_607.0).unwrap();
        assert!(r.c_max < 0.0);
        assert_eq!((r.x_at_max, r.n_points), (3, 1));
    }

    #[test]
    fn tail_threshold_is_consistent() {
        let d = tail_root_disc_threshold(9);
        assert!(d > 6.0 && d < 6.2, "{d}");
        let above = cmax_scan_tail(9, (d * 1.01).powi(9)).unwrap();
        assert!(above.c_max < 0.0 && above.n_points == 1);
    }

    #[test]
    fn cmax_rejects_bad_input() {
        assert!(cmax_scan(0, 1.0).is_err());
        assert!(cmax_scan(3, 0.5).is_err());
    }
}
