//! Internal consistency checks over a set of constants.

use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::Constants;
use crate::field::FieldProfile;
use crate::oracle::{psi_quadratic, PsiMethod, QuadraticField, VonMangoldt};
use crate::specfun::lambert_w0;
use crate::theorems::{asymptotic_rhs_with, AsymptoticForm};
use crate::zero_estimates::{coefficient_set_with, difference_t2_coefficients_with, differences_with};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, failures: Vec<String>) -> Check {
    let passed = failures.is_empty();
    let detail = if passed {
        "ok".to_string()
    } else {
        let more = if failures.len() > 3 {
            format!(" (+{} more)", failures.len() - 3)
        } else {
            String::new()
        };
        format!("{}{more}", failures[..failures.len().min(3)].join("; "))
    };
    Check { name, passed, detail }
}

fn log_grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..points).map(move |i| (a + (b - a) * i as f64 / (points - 1) as f64).exp().clamp(lo, hi))
}

fn lambert(c: &Constants) -> Check {
    let mut f = Vec::new();
    for x in std::iter::once(0.0).chain(log_grid(1e-30, 1e30, 200)) {
        match lambert_w0(x) {
            Ok(w) => {
                let r = (w * w.exp() - x).abs();
                if r > 1e-12 * x.max(1.0) {
                    f.push(format!("residual {r:e} at x = {x:e}"));
                }
            }
            Err(e) => f.push(format!("x = {x:e}: {e}")),
        }
    }
    for t in log_grid(std::f64::consts::E, 1e20, 200) {
        let (l1, l2) = (t.ln(), t.ln().ln());
        let upper = l1 - l2 + c.lambert_upper * l2 / l1;
        if lambert_w0(t).is_ok_and(|w| w > upper) {
            f.push(format!("upper bound fails at t = {t:e}"));
        }
    }
    check("lambert-w", f)
}

fn coefficients(c: &Constants) -> Check {
    let mut f = Vec::new();
    for k in [0.25, 0.5, 1.0, Constants::kappa_default(), 1.5, 2.0] {
        for t in [5.0, 10.0, 100.0, 1e4] {
            match coefficient_set_with(c, k, t) {
                Ok(s) => {
                    for (name, d, m) in [
                        ("W", s.d_w, s.m_w_plus - s.m_w_minus),
                        ("n", s.d_n, s.m_n_plus - s.m_n_minus),
                        ("c", s.d_c, s.m_c_plus - s.m_c_minus),
                    ] {
                        if (d - m).abs() > 1e-12 {
                            f.push(format!("D_{name} != M+ - M- at kappa = {k}, T = {t}"));
                        }
                    }
                }
                Err(e) => f.push(e.to_string()),
            }
        }
    }
    for i in 0..=100 {
        let k = -6.0 + 0.1 * i as f64;
        let (pw, pn, pc) = difference_t2_coefficients_with(c, k);
        if !(pw > 0.0 && pn > 0.0 && pc > 0.0) {
            f.push(format!("non-positive 1/T^2 coefficient at kappa = {k}"));
        }
    }
    check("coefficient-consistency", f)
}

fn epsilon_margin(c: &Constants) -> Check {
    let mut f = Vec::new();
    let min_ld = 0.5 * 5f64.ln();
    for t in [5.0, 6.0, 8.0, 10.0, 20.0, 100.0, 1e3, 1e5] {
        for k in [0.0, 0.5, 1.0, Constants::kappa_default(), 1.5, 2.0] {
            for ld in [min_ld, 1.0, 2.0, 5.0] {
                match differences_with(c, k, t) {
                    Ok((dw, dn, _)) => {
                        let lhs = dw * (ld + (t / (2.0 * PI)).ln()) + dn;
                        if lhs < c.eps_slope * PI / t {
                            f.push(format!("T = {t}, kappa = {k}, log delta = {ld}"));
                        }
                    }
                    Err(e) => f.push(e.to_string()),
                }
            }
        }
    }
    check("unit-rank-margin", f)
}

fn asymptotic(c: &Constants) -> Check {
    let mut f = Vec::new();
    let profiles = [
        FieldProfile::rational(),
        FieldProfile::new(2, 5.0, 2, 0).expect("valid"),
        FieldProfile::new(2, 3.0, 0, 1).expect("valid"),
        FieldProfile::from_log_disc(50, 50.0 * 4.0, 50, 0).expect("valid"),
    ];
    for p in &profiles {
        for x in log_grid(16.0, 1e30, 25) {
            let a = asymptotic_rhs_with(c, p, x, AsymptoticForm::Expanded);
            let b = asymptotic_rhs_with(c, p, x, AsymptoticForm::Reorganized);
            match (a, b) {
                (Ok(a), Ok(b)) if (a - b).abs() <= 1e-12 * a.abs().max(b.abs()) => {}
                (Ok(a), Ok(b)) => f.push(format!("{p} x = {x:e}: {a} vs {b}")),
                (Err(e), _) | (_, Err(e)) => f.push(e.to_string()),
            }
        }
    }
    if (c.asym_degree_8 - 4.0 * c.asym_degree).abs() > 1e-9 {
        f.push("the n_K constant and its 4-fold disagree".into());
    }
    check("asymptotic-identity", f)
}

fn truncation(c: &Constants) -> Check {
    let mut f = Vec::new();
    let tf = c.t_f();
    if !(tf > 5.0 && c.t_offset >= tf && c.t_offset - tf < 1e-4) {
        f.push(format!("T_F = {tf} does not round up to {}", c.t_offset));
    }
    check("truncation-floor", f)
}

fn psi_methods(x_max: u64) -> Check {
    let mut f = Vec::new();
    match VonMangoldt::new(x_max) {
        Ok(sieve) => {
            for d in [-3, -4, 5, 8, -7, 12, 13] {
                let k = QuadraticField::new(d).expect("fundamental");
                for x in log_grid(2.0, x_max as f64, 20) {
                    let a = psi_quadratic(&k, &sieve, x, PsiMethod::DirectIdeals);
                    let b = psi_quadratic(&k, &sieve, x, PsiMethod::CharacterDecomp);
                    match (a, b) {
                        (Ok(a), Ok(b)) if (a.value - b.value).abs() <= 1e-9 * x.max(1.0) => {}
                        (Ok(a), Ok(b)) => f.push(format!("D = {d}, x = {x}: {} vs {}", a.value, b.value)),
                        (Err(e), _) | (_, Err(e)) => f.push(e.to_string()),
                    }
                }
            }
        }
        Err(e) => f.push(e.to_string()),
    }
    check("psi-methods", f)
}

/// Run every check against `c`.
pub fn run(c: &Constants) -> Vec<Check> {
    vec![
        lambert(c),
        coefficients(c),
        epsilon_margin(c),
        asymptotic(c),
        truncation(c),
        psi_methods(1_000_000),
    ]
}
