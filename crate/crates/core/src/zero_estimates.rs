//! Closed-form GRH estimates for sums over zeros, the general bound with a
//! free truncation height `T` and smoothing width `kappa`, and its
//! rearrangement as a bound for `|psi_K(x) - x|`.

use std::f64::consts::PI;

use crate::bound::{BoundResult, Terms};
use crate::constants::Constants;
use crate::error::{domain, Result};
use crate::field::{e_k, w_k, FieldProfile};

/// Exact value of `r_Q`, the constant term of `zeta'/zeta` at 0 for Q.
pub fn r_rational() -> f64 {
    (2.0 * PI).ln()
}

/// Upper bound for `|r_K|`.
pub fn r_k_bound(profile: &FieldProfile) -> f64 {
    let c = Constants::standard();
    c.rk_disc * profile.log_disc() - c.rk_degree * profile.n() + c.rk_const - e_k(profile)
}

/// Upper bound for the sum of `1/|rho|` over zeros with `|gamma| <= 5`.
pub fn low_zero_sum_bound(profile: &FieldProfile) -> f64 {
    let c = Constants::standard();
    c.low_zero_disc * profile.log_disc() - c.low_zero_degree * profile.n() + c.low_zero_const
}

fn check_t(t: f64) -> Result<()> {
    if !(t >= 5.0) || !t.is_finite() {
        return Err(domain(format!("T >= 5 required, got T = {t}")));
    }
    Ok(())
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 3.0) || !x.is_finite() {
        return Err(domain(format!("x >= 3 required, got x = {x}")));
    }
    Ok(())
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa > 0.0 && kappa <= 2.0) {
        return Err(domain(format!("0 < kappa <= 2 required, got kappa = {kappa}")));
    }
    Ok(())
}

/// Upper bound for the number of zeros with `|gamma| <= T`.
pub fn zero_count_bound(profile: &FieldProfile, t: f64) -> Result<f64> {
    check_t(t)?;
    let c = Constants::standard();
    let w = w_k(profile, t);
    Ok(t / PI * (1.0 + c.count_w / t) * w - t / PI * (1.0 - c.count_n / t) * profile.n() + c.count_c / PI)
}

/// Upper bound for the sum of `1/|rho|^2` over zeros with `|gamma| >= T`.
pub fn inv_rho_sq_tail_bound(profile: &FieldProfile, t: f64) -> Result<f64> {
    check_t(t)?;
    let c = Constants::standard();
    let w = w_k(profile, t);
    Ok((1.0 + c.tail_w / t) * w / (PI * t) + (1.0 + c.tail_n / t) * profile.n() / (PI * t) + c.tail_c / (PI * t * t))
}

/// Upper bound for the sum of `pi/|rho|` over zeros with `|gamma| <= T`.
pub fn pi_inv_rho_bound(profile: &FieldProfile, t: f64) -> Result<f64> {
    check_t(t)?;
    let c = Constants::standard();
    let l = (t / (2.0 * PI)).ln();
    Ok((l + c.alpha) * profile.log_disc() + (0.5 * l * l + c.beta) * profile.n() + c.gamma)
}

/// Upper bound for `|sum_{|gamma| < T} x^rho / rho|`.
pub fn zero_sum_x_bound(profile: &FieldProfile, x: f64, t: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain(format!("x > 0 required, got x = {x}")));
    }
    Ok(x.sqrt() / PI * pi_inv_rho_bound(profile, t)?)
}

/// The coefficient functions of the two one-sided estimates (`h > 0` and
/// `h < 0`) and their differences, at a fixed `(kappa, T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientSet {
    pub m_w_plus: f64,
    pub m_n_plus: f64,
    pub m_c_plus: f64,
    pub m_w_minus: f64,
    pub m_n_minus: f64,
    pub m_c_minus: f64,
    pub d_w: f64,
    pub d_n: f64,
    pub d_c: f64,
}

pub fn coefficient_set(kappa: f64, t: f64) -> Result<CoefficientSet> {
    coefficient_set_with(Constants::standard(), kappa, t)
}

pub fn coefficient_set_with(c: &Constants, kappa: f64, t: f64) -> Result<CoefficientSet> {
    check_t(t)?;
    check_kappa(kappa)?;
    let k = kappa;
    let k2 = k * k;
    let k3 = k2 * k;
    let t2 = t * t;
    let sum = 2.0 / k + k / 2.0;
    let diff = 2.0 / k - k / 2.0;

    let m_w_plus =
        sum + (c.w_t1_k2 * k2 + c.w_t1_k1 * k + c.w_t1_k0) / (2.0 * k * t) + (c.w_t2_k1 * k + c.w_t2_k0_proof) / t2;
    let m_n_plus =
        diff + (c.n_t1_k2 * k2 + c.n_t1_k1 * k + c.n_t1_k0) / (2.0 * k * t) + (c.n_t2_k1 * k + c.n_t2_k0) / t2;
    let m_c_plus = (c.mc_plus_t1_k2 * k2 + c.mc_plus_t1_k0) / (k * t) + (c.mc_plus_t2_k1 * k + c.mc_plus_t2_k0) / t2;

    let m_w_minus = sum
        + (k3 / 3.0 + c.w_t1_k2 * k2 - c.w_t1_k1 * k + c.w_t1_k0) / (2.0 * k * t)
        + (c.mw_minus_t2_k2 * k2 + c.mw_minus_t2_k1 * k - c.w_t2_k0_proof) / t2;
    let m_n_minus = diff
        + (-k3 / 3.0 + c.n_t1_k2 * k2 - c.n_t1_k1 * k + c.n_t1_k0) / (2.0 * k * t)
        + (c.mn_minus_t2_k2 * k2 + c.mn_minus_t2_k1 * k - c.mn_minus_t2_k0) / t2;
    let m_c_minus = (c.mc_plus_t1_k2 * k2 + c.mc_plus_t1_k0) / (k * t)
        + (c.mc_minus_t2_k2 * k2 + c.mc_minus_t2_k1 * k - c.mc_minus_t2_k0) / t2;

    let (d_w, d_n, d_c) = differences_with(c, kappa, t)?;
    Ok(CoefficientSet {
        m_w_plus,
        m_n_plus,
        m_c_plus,
        m_w_minus,
        m_n_minus,
        m_c_minus,
        d_w,
        d_n,
        d_c,
    })
}

/// `(D_W, D_n, D_c)` from their closed forms; defined for `kappa in [-6, 4]`.
pub fn differences(kappa: f64, t: f64) -> Result<(f64, f64, f64)> {
    differences_with(Constants::standard(), kappa, t)
}

pub fn differences_with(c: &Constants, kappa: f64, t: f64) -> Result<(f64, f64, f64)> {
    check_t(t)?;
    if !(-6.0..=4.0).contains(&kappa) {
        return Err(domain(format!("kappa in [-6, 4] required, got {kappa}")));
    }
    let k = kappa;
    let k2 = k * k;
    let t2 = t * t;
    let (pw, pn, pc) = difference_t2_coefficients_with(c, k);
    let d_w = (18.0 - k2) / (6.0 * t) + pw / t2;
    let d_n = (18.0 + k2) / (6.0 * t) + pn / t2;
    let d_c = pc / t2;
    Ok((d_w, d_n, d_c))
}

/// The `1/T^2` coefficients of `D_W`, `D_n`, `D_c` as functions of `kappa`.
pub fn difference_t2_coefficients_with(c: &Constants, kappa: f64) -> (f64, f64, f64) {
    let k = kappa;
    let k2 = k * k;
    (
        c.dw_t2_k0 - c.dw_t2_k1 * k - c.dw_t2_k2 * k2,
        c.dn_t2_k0 - c.dn_t2_k1 * k - c.dn_t2_k2 * k2,
        c.dc_t2_k0 - c.dc_t2_k1 * k - c.dc_t2_k2 * k2,
    )
}

/// Unit-rank correction of the general bound.
pub fn epsilon_tilde(profile: &FieldProfile, x: f64, t: f64) -> f64 {
    match profile.signature() {
        (1, 0) => -(-x.powi(-2)).ln_1p(),
        (0, 1) => -(-1.0 / x).ln_1p(),
        _ => epsilon(profile, x, t),
    }
}

/// `max(0, d_K log x - 3.6133 n_K sqrt(x) / T)`, for every signature.
pub fn epsilon(profile: &FieldProfile, x: f64, t: f64) -> f64 {
    let c = Constants::standard();
    (profile.unit_rank() as f64 * x.ln() - c.eps_slope * profile.n() * x.sqrt() / t).max(0.0)
}

/// Arguments of the general bound, range-checked on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralBoundInput {
    pub profile: FieldProfile,
    pub x: f64,
    pub t: f64,
    pub kappa: f64,
}

impl GeneralBoundInput {
    pub fn new(profile: FieldProfile, x: f64, t: f64, kappa: f64) -> Result<Self> {
        check_x(x)?;
        check_t(t)?;
        check_kappa(kappa)?;
        Ok(GeneralBoundInput { profile, x, t, kappa })
    }
}

/// Bound for `|psi_K(x) - x + sum_{|gamma| < T} x^rho / rho|`.
///
/// Breakdown: `disc` is the `W_K(T)` group, `degree` the `n_K` group,
/// `constant` collects `kappa x / 2T`, the field-independent remainder and
/// the `|r_K|` bound, `epsilon` is the unit-rank correction.
pub fn general_bound(input: &GeneralBoundInput) -> Result<BoundResult> {
    let GeneralBoundInput { profile, x, t, kappa } = *input;
    check_x(x)?;
    check_t(t)?;
    check_kappa(kappa)?;
    let c = Constants::standard();
    let k = kappa;
    let k2 = k * k;
    let t2 = t * t;
    let s = x.sqrt() / PI;
    let w_group = 2.0 / k
        + k / 2.0
        + (c.w_t1_k2 * k2 + c.w_t1_k1 * k + c.w_t1_k0) / (2.0 * k * t)
        + (c.w_t2_k1 * k + c.w_t2_k0) / t2;
    let n_group = 2.0 / k - k / 2.0
        + (c.n_t1_k2 * k2 + c.n_t1_k1 * k + c.n_t1_k0) / (2.0 * k * t)
        + (c.n_t2_k1 * k + c.n_t2_k0) / t2;
    let rem = (c.c_t1_k2 * k2 + c.c_t1_k0) * PI / (k * t) + (c.c_t2_k1 * k + c.c_t2_k0) * PI / t2;
    let terms = Terms {
        disc: s * w_group * w_k(&profile, t),
        degree: s * n_group * profile.n(),
        constant: k * x / (2.0 * t) + s * rem + r_k_bound(&profile),
        epsilon: epsilon_tilde(&profile, x, t),
    };
    Ok(BoundResult::from_terms(terms, x, Some(t), Some(kappa)))
}

/// `F(T)`: coefficient of `(sqrt x / pi) log Delta_K` in the `|psi - x|` bound.
pub fn f_coef(t: f64, kappa: f64) -> f64 {
    let c = Constants::standard();
    let k = kappa;
    (t / (2.0 * PI)).ln()
        + 2.0 / k
        + k / 2.0
        + (c.w_t1_k2 * k * k + c.w_t1_k1 * k + c.w_t1_k0) / (2.0 * k * t)
        + (c.w_t2_k1 * k + c.w_t2_k0) / (t * t)
        + c.alpha
}

/// `G(T)`: coefficient of `(sqrt x / pi) n_K`.
pub fn g_coef(t: f64, kappa: f64) -> f64 {
    let c = Constants::standard();
    let k = kappa;
    let l = (t / (2.0 * PI)).ln();
    let w_group = 2.0 / k
        + k / 2.0
        + (c.w_t1_k2 * k * k + c.w_t1_k1 * k + c.w_t1_k0) / (2.0 * k * t)
        + (c.w_t2_k1 * k + c.w_t2_k0) / (t * t);
    0.5 * l * l + w_group * l + c.beta + 2.0 / k - k / 2.0
        + (c.n_t1_k2 * k * k + c.n_t1_k1 * k + c.n_t1_k0) / (2.0 * k * t)
        + (c.n_t2_k1 * k + c.n_t2_k0) / (t * t)
}

/// `H(x, T)`: everything not proportional to `log Delta_K` or `n_K`, split as
/// `(kappa x / 2T + sqrt(x)/pi [...] + 8.3423, epsilon_K(x, T))`.
pub fn h_parts(profile: &FieldProfile, x: f64, t: f64, kappa: f64) -> (f64, f64) {
    let c = Constants::standard();
    let k = kappa;
    let main = k * x / (2.0 * t)
        + x.sqrt() / PI
            * (c.gamma + (c.c_t1_k2 * k * k + c.c_t1_k0) * PI / (k * t) + (c.c_t2_k1 * k + c.c_t2_k0) * PI / (t * t))
        + c.rk_const;
    (main, epsilon(profile, x, t))
}

/// Bound for `|psi_K(x) - x|` at a given `(T, kappa)`, evaluated directly from
/// `F`, `G` and `H`.
pub fn psi_gap_bound_at_t(profile: &FieldProfile, x: f64, t: f64, kappa: f64) -> Result<BoundResult> {
    check_x(x)?;
    check_t(t)?;
    check_kappa(kappa)?;
    let c = Constants::standard();
    let s = x.sqrt() / PI;
    let (h_main, eps) = h_parts(profile, x, t, kappa);
    let terms = Terms {
        disc: (s * f_coef(t, kappa) + c.rk_disc) * profile.log_disc(),
        degree: (s * g_coef(t, kappa) - c.rk_degree) * profile.n(),
        constant: h_main,
        epsilon: eps,
    };
    Ok(BoundResult::from_terms(terms, x, Some(t), Some(kappa)))
}

/// The same bound assembled from its ingredients: the general bound plus the
/// zero-sum estimate. For signatures other than `(1,0)` and `(0,1)` this
/// equals [`psi_gap_bound_at_t`]; for those two it is smaller by
/// `e_K + epsilon_K - epsilon-tilde_K`, which the direct form drops.
pub fn psi_bound_assembled(profile: &FieldProfile, x: f64, t: f64, kappa: f64) -> Result<f64> {
    let general = general_bound(&GeneralBoundInput::new(*profile, x, t, kappa)?)?;
    Ok(general.value + zero_sum_x_bound(profile, x, t)?)
}

#[cfg(test)]
#[allow(clippy::approx_constant)] // rounded constants as used by the bounds
mod tests {
    use super::*;

    fn kd() -> f64 {
        Constants::kappa_default()
    }

    #[test]
    fn r_k_bound_examples() {
        let q = FieldProfile::rational();
        assert!((r_k_bound(&q) - 1.8379).abs() < 1e-12);
        assert!(r_rational() <= r_k_bound(&q));
        let p = FieldProfile::new(2, 5.0, 0, 1).unwrap();
        let expect = 1.0155 * 5f64.ln() - 2.0 * 2.1042 + 8.3423 - 0.6931;
        assert!((r_k_bound(&p) - expect).abs() < 1e-12);
    }

    #[test]
    fn low_zero_examples() {
        let q = FieldProfile::rational();
        assert!((low_zero_sum_bound(&q) - 5.3770).abs() < 1e-12);
        let a = FieldProfile::new(3, 10.0, 1, 1).unwrap();
        let b = FieldProfile::from_log_disc(3, a.log_disc() + 1.0, 1, 1).unwrap();
        assert!((low_zero_sum_bound(&b) - low_zero_sum_bound(&a) - 1.0111).abs() < 1e-12);
        let p = FieldProfile::new(3, 5.0, 1, 1).unwrap();
        let expect = 1.0111 * 5f64.ln() - 3.0 * 1.6550 + 7.0320;
        assert!((low_zero_sum_bound(&p) - expect).abs() < 1e-12);
    }

    #[test]
    fn zero_statistics() {
        let q = FieldProfile::rational();
        let v = pi_inv_rho_bound(&q, 2.0 * PI).unwrap();
        assert!((v - 24.0393).abs() < 1e-12);
        let ratio = zero_count_bound(&q, 1e4).unwrap() / zero_count_bound(&q, 1e3).unwrap();
        let expect = 10.0 * ((1e4 / (2.0 * PI)).ln() - 1.0) / ((1e3 / (2.0 * PI)).ln() - 1.0);
        assert!((ratio / expect - 1.0).abs() < 0.05, "{ratio} vs {expect}");
        for p in [
            q,
            FieldProfile::new(2, 5.0, 0, 1).unwrap(),
            FieldProfile::new(6, 1e5, 0, 3).unwrap(),
        ] {
            for t in [2.0 * PI, 10.0, 100.0, 1e6] {
                assert!(inv_rho_sq_tail_bound(&p, t).unwrap() >= 0.0);
            }
        }
        assert!(zero_count_bound(&q, 4.99).is_err());
        assert!(inv_rho_sq_tail_bound(&q, 1.0).is_err());
        assert!(pi_inv_rho_bound(&q, f64::NAN).is_err());
    }

    #[test]
    fn zero_sum_x_examples() {
        let q = FieldProfile::rational();
        let x = 37.0;
        let v = zero_sum_x_bound(&q, x, 2.0 * PI).unwrap();
        assert!((v - x.sqrt() / PI * 24.0393).abs() < 1e-12);
        let a = zero_sum_x_bound(&q, 4.0 * x, 20.0).unwrap();
        let b = zero_sum_x_bound(&q, x, 20.0).unwrap();
        assert!((a - 2.0 * b).abs() < 1e-12 * a);
        let p = FieldProfile::new(2, 5.0, 0, 1).unwrap();
        let l = (10.0 / (2.0 * PI)).ln();
        let expect = 10.0 / PI * ((l + 3.9792) * 5f64.ln() + (0.5 * l * l - 1.4969) * 2.0 + 25.5362);
        assert!((zero_sum_x_bound(&p, 100.0, 10.0).unwrap() - expect).abs() < 1e-12);
        assert!(zero_sum_x_bound(&p, 100.0, 4.0).is_err());
    }

    #[test]
    fn differences_examples() {
        let (_, _, dc) = differences(2.0, 10.0).unwrap();
        assert!((dc - 0.452_902).abs() < 1e-12);
        let (_, dn, _) = differences(0.0, 7.0).unwrap();
        assert!((dn - (3.0 / 7.0 + 55.8057 / 49.0)).abs() < 1e-14);
        let s = coefficient_set(kd(), 20.0).unwrap();
        assert!((s.d_w - (s.m_w_plus - s.m_w_minus)).abs() < 1e-12);
        assert!(coefficient_set(0.0, 10.0).is_err());
        assert!(coefficient_set(2.5, 10.0).is_err());
        assert!(differences(-6.5, 10.0).is_err());
        assert!(differences(4.0, 4.0).is_err());
    }

    #[test]
    fn coefficient_consistency_grid() {
        for k in [0.5, 1.0, kd(), 2.0] {
            for t in [5.0, 10.0, 100.0, 1e4] {
                let s = coefficient_set(k, t).unwrap();
                assert!((s.d_w - (s.m_w_plus - s.m_w_minus)).abs() < 1e-12);
                assert!((s.d_n - (s.m_n_plus - s.m_n_minus)).abs() < 1e-12);
                assert!((s.d_c - (s.m_c_plus - s.m_c_minus)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn epsilon_tilde_cases() {
        let q = FieldProfile::rational();
        assert!((epsilon_tilde(&q, 3.0, 10.0) - (9f64 / 8.0).ln()).abs() < 1e-15);
        let im = FieldProfile::new(2, 3.0, 0, 1).unwrap();
        assert!((epsilon_tilde(&im, 4.0, 10.0) - (4f64 / 3.0).ln()).abs() < 1e-15);
        let re = FieldProfile::new(2, 5.0, 2, 0).unwrap();
        assert!((epsilon_tilde(&re, 50.0, 1e300) - 50f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn epsilon_cases() {
        assert_eq!(epsilon(&FieldProfile::new(2, 3.0, 0, 1).unwrap(), 1e6, 10.0), 0.0);
        assert_eq!(epsilon(&FieldProfile::rational(), 1e6, 1e9), 0.0);
        let re = FieldProfile::new(2, 5.0, 2, 0).unwrap();
        let x = std::f64::consts::E.powi(2);
        let t = 3.6133 * 2.0 * std::f64::consts::E;
        assert!((epsilon(&re, x, t) - 1.0).abs() < 1e-12);
        let cubic = FieldProfile::new(3, 23.0, 3, 0).unwrap();
        let expect = 2.0 * 3f64.ln() - 3.6133 * 3.0 * 3f64.sqrt() / 10.0;
        assert!((epsilon(&cubic, 3.0, 10.0) - expect.max(0.0)).abs() < 1e-15);
    }

    // second transcription of the general bound, term by term from the statement
    fn general_bound_oracle(p: &FieldProfile, x: f64, t: f64, k: f64) -> f64 {
        let s = x.sqrt() / PI;
        let w = p.log_disc() + p.n() * (t / (2.0 * PI)).ln();
        let a = s
            * (2.0 / k
                + k / 2.0
                + (1.4427 * k * k + 3.0 * k + 11.5416) / (2.0 * k * t)
                + (0.5915 * k + 4.3282) / (t * t))
            * w;
        let b = s
            * (2.0 / k - k / 2.0
                + (8.9250 * k * k + 3.0 * k + 74.4076) / (2.0 * k * t)
                + (1.7702 * k + 27.9029) / (t * t))
            * p.n();
        let c =
            k * x / (2.0 * t) + s * ((1.3774 * k * k + 11.0190) * PI / (k * t) + (0.4133 * k + 8.2643) * PI / (t * t));
        let ek = match p.signature() {
            (1, 0) => 4.4002,
            (0, 1) => 0.6931,
            _ => 0.0,
        };
        let rk = 1.0155 * p.log_disc() - 2.1042 * p.n() + 8.3423 - ek;
        let et = match p.signature() {
            (1, 0) => -(1.0 - 1.0 / (x * x)).ln(),
            (0, 1) => -(1.0 - 1.0 / x).ln(),
            _ => (p.unit_rank() as f64 * x.ln() - 3.6133 * p.n() * x.sqrt() / t).max(0.0),
        };
        a + b + c + rk + et
    }

    #[test]
    fn general_bound_matches_oracle() {
        let profiles = [
            FieldProfile::rational(),
            FieldProfile::new(2, 5.0, 2, 0).unwrap(),
            FieldProfile::new(2, 3.0, 0, 1).unwrap(),
            FieldProfile::new(3, 23.0, 1, 1).unwrap(),
            FieldProfile::new(6, 1e7, 2, 2).unwrap(),
        ];
        for p in profiles {
            for (x, t, k) in [(100.0, 10.0, kd()), (3.0, 5.0, 2.0), (1e8, 300.0, 0.7)] {
                let v = general_bound(&GeneralBoundInput::new(p, x, t, k).unwrap()).unwrap();
                let o = general_bound_oracle(&p, x, t, k);
                assert!(
                    (v.value - o).abs() <= 1e-10 * o.abs(),
                    "{p} {x} {t} {k}: {} vs {o}",
                    v.value
                );
                assert!((v.value - v.terms.total()).abs() < 1e-12 * v.value);
            }
        }
    }

    #[test]
    fn general_bound_linear_term() {
        let q = FieldProfile::rational();
        let a = general_bound(&GeneralBoundInput::new(q, 100.0, 10.0, 2.0).unwrap()).unwrap();
        let rem = a.terms.constant
            - r_k_bound(&q)
            - 10.0 / PI * ((1.3774 * 4.0 + 11.0190) * PI / 20.0 + (0.4133 * 2.0 + 8.2643) * PI / 100.0);
        assert!((rem - 10.0).abs() < 1e-12);
    }

    #[test]
    fn general_bound_monotone_in_disc() {
        let a = FieldProfile::new(2, 25.0, 2, 0).unwrap();
        let b = FieldProfile::new(2, 5.0, 2, 0).unwrap();
        for x in [3.0, 100.0, 1e6] {
            let va = general_bound(&GeneralBoundInput::new(a, x, 10.0, kd()).unwrap()).unwrap();
            let vb = general_bound(&GeneralBoundInput::new(b, x, 10.0, kd()).unwrap()).unwrap();
            assert!(va.value > vb.value);
        }
    }

    #[test]
    fn input_ranges() {
        let q = FieldProfile::rational();
        assert!(GeneralBoundInput::new(q, 2.9, 10.0, 1.0).is_err());
        assert!(GeneralBoundInput::new(q, 3.0, 4.9, 1.0).is_err());
        assert!(GeneralBoundInput::new(q, 3.0, 5.0, 0.0).is_err());
        assert!(GeneralBoundInput::new(q, 3.0, 5.0, 2.01).is_err());
        assert!(GeneralBoundInput::new(q, 3.0, 5.0, 2.0).is_ok());
    }

    #[test]
    fn direct_and_assembled_forms() {
        let generic = [
            FieldProfile::new(2, 5.0, 2, 0).unwrap(),
            FieldProfile::new(3, 23.0, 1, 1).unwrap(),
            FieldProfile::new(4, 117.0, 0, 2).unwrap(),
            FieldProfile::new(8, 1e9, 8, 0).unwrap(),
        ];
        for p in generic {
            for (x, t) in [(1000.0, 50.0), (3.0, 5.0), (1e7, 400.0)] {
                let d = psi_gap_bound_at_t(&p, x, t, kd()).unwrap().value;
                let a = psi_bound_assembled(&p, x, t, kd()).unwrap();
                assert!((d - a).abs() <= 1e-9 * d, "{p}: {d} vs {a}");
            }
        }
        for p in [FieldProfile::rational(), FieldProfile::new(2, 4.0, 0, 1).unwrap()] {
            let (x, t) = (1000.0, 50.0);
            let d = psi_gap_bound_at_t(&p, x, t, kd()).unwrap().value;
            let a = psi_bound_assembled(&p, x, t, kd()).unwrap();
            let gap = e_k(&p) + epsilon(&p, x, t) - epsilon_tilde(&p, x, t);
            assert!(gap > 0.0);
            assert!((d - a - gap).abs() <= 1e-9 * d);
        }
    }

    #[test]
    fn f_minimised_near_t_f() {
        let tf = Constants::standard().t_f();
        let k = kd();
        assert!(f_coef(tf, k) < f_coef(5.0, k));
        assert!(f_coef(tf, k) < f_coef(20.0, k));
    }

    #[test]
    fn h_linear_term_halves() {
        let q = FieldProfile::rational();
        let k = kd();
        let x = 1e10;
        let t = 1e5;
        let (a, _) = h_parts(&q, x, t, k);
        let (b, _) = h_parts(&q, x, 2.0 * t, k);
        assert!(((a - b) / (k * x / (4.0 * t)) - 1.0).abs() < 1e-3);
    }
}
