//! Final bounds for `|psi_K(x) - x|`, the earlier bounds they are compared
//! against, the leading-order asymptotic and the crossover search.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bound::{BoundResult, Terms};
use crate::constants::Constants;
use crate::error::{domain, Error, Result};
use crate::field::FieldProfile;
use crate::truncation::select_t;
use crate::zero_estimates::{epsilon, general_bound, GeneralBoundInput};

/// The bound formulas known to the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundFormula {
    /// Lambert-W optimised truncation height.
    Optimized,
    /// Truncation at `T = 10` with `kappa = 2`; wins for tiny `x` against a huge discriminant.
    FixedT,
    /// Earlier bound with `log x` coefficients, valid for `x >= 100`.
    PriorX100,
    /// Earlier bound with `log(18.8 x / log^2 x)` coefficients, valid for `x >= 3`.
    PriorX3,
    /// Earlier bound with `log(x / log^2 x)` coefficients, valid for `x >= 2000`.
    PriorX2000,
    /// Smoothed explicit formula at a caller-chosen `(T, kappa)`.
    General,
}

impl BoundFormula {
    pub const ALL: [BoundFormula; 6] = [
        BoundFormula::Optimized,
        BoundFormula::FixedT,
        BoundFormula::PriorX100,
        BoundFormula::PriorX3,
        BoundFormula::PriorX2000,
        BoundFormula::General,
    ];

    /// Formulas the optimized bound is compared against in the crossover tables.
    pub const RIVALS: [BoundFormula; 3] = [BoundFormula::PriorX100, BoundFormula::PriorX3, BoundFormula::PriorX2000];

    pub fn name(self) -> &'static str {
        match self {
            BoundFormula::Optimized => "optimized",
            BoundFormula::FixedT => "fixed-t",
            BoundFormula::PriorX100 => "prior-x100",
            BoundFormula::PriorX3 => "prior-x3",
            BoundFormula::PriorX2000 => "prior-x2000",
            BoundFormula::General => "general",
        }
    }

    pub fn validity_min_x(self) -> f64 {
        match self {
            BoundFormula::PriorX100 => 100.0,
            BoundFormula::PriorX2000 => 2000.0,
            _ => 3.0,
        }
    }

    /// Whether the formula needs an explicit `T` and `kappa`.
    pub fn needs_parameters(self) -> bool {
        self == BoundFormula::General
    }

    /// Evaluate at `x`. [`BoundFormula::General`] is rejected here; use
    /// [`BoundFormula::evaluate_with`].
    pub fn evaluate(self, profile: &FieldProfile, x: f64) -> Result<BoundResult> {
        match self {
            BoundFormula::Optimized => optimized_bound(profile, x),
            BoundFormula::FixedT => fixed_t_bound(profile, x),
            BoundFormula::PriorX100 => prior_x100_bound(profile, x),
            BoundFormula::PriorX3 => prior_x3_bound(profile, x),
            BoundFormula::PriorX2000 => prior_x2000_bound(profile, x),
            BoundFormula::General => Err(domain("the general bound needs explicit T and kappa")),
        }
    }

    pub fn evaluate_with(
        self,
        profile: &FieldProfile,
        x: f64,
        t: Option<f64>,
        kappa: Option<f64>,
    ) -> Result<BoundResult> {
        match (self, t, kappa) {
            (BoundFormula::General, Some(t), Some(kappa)) => {
                general_bound(&GeneralBoundInput::new(*profile, x, t, kappa)?)
            }
            (BoundFormula::General, _, _) => Err(domain("the general bound needs explicit T and kappa")),
            _ => self.evaluate(profile, x),
        }
    }
}

impl fmt::Display for BoundFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let f = match s.to_ascii_lowercase().as_str() {
            "optimized" => BoundFormula::Optimized,
            "fixed-t" => BoundFormula::FixedT,
            "prior-x100" => BoundFormula::PriorX100,
            "prior-x3" => BoundFormula::PriorX3,
            "prior-x2000" => BoundFormula::PriorX2000,
            "general" => BoundFormula::General,
            other => return Err(Error::Parse(format!("unknown formula '{other}'"))),
        };
        Ok(f)
    }
}

fn check_validity(formula: BoundFormula, x: f64) -> Result<()> {
    let min_x = formula.validity_min_x();
    if !(x >= min_x) || !x.is_finite() {
        return Err(Error::Validity {
            formula: formula.name(),
            min_x,
            x,
        });
    }
    Ok(())
}

/// `log(e^a + e^b)` without overflow.
fn log_add_exp(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    m + (-(a - b).abs()).exp().ln_1p()
}

/// Bound with the Lambert-W choice of `T`, valid for `x >= 3`.
///
/// Breakdown: `disc` holds the terms linear in `log delta_K` (times `n_K`)
/// and `1.0155 log Delta_K`; `degree` holds the remaining `n_K` multiples,
/// including the squared logarithms.
pub fn optimized_bound(profile: &FieldProfile, x: f64) -> Result<BoundResult> {
    check_validity(BoundFormula::Optimized, x)?;
    let c = Constants::standard();
    let sel = select_t(profile, x)?;
    let n = profile.n();
    let ld = profile.log_root_disc();
    let s = x.sqrt() / PI;
    let l = log_add_exp(sel.w + 1.0, c.t0_degree.ln() + ld);
    let terms = Terms {
        disc: s * c.alpha * ld * n + c.rk_disc * profile.log_disc(),
        degree: s * (0.5 * l * l - 0.5 * ld * ld - c.main_degree_const) * n - c.rk_degree * n,
        constant: s * c.gamma + c.main_const,
        epsilon: epsilon(profile, x, sel.t),
    };
    Ok(BoundResult::from_terms(
        terms,
        x,
        Some(sel.t),
        Some(Constants::kappa_default()),
    ))
}

/// Bound at the fixed truncation `T = 10`, valid for `x >= 3`. The linear
/// term `x/10` does not depend on the field.
pub fn fixed_t_bound(profile: &FieldProfile, x: f64) -> Result<BoundResult> {
    check_validity(BoundFormula::FixedT, x)?;
    let c = Constants::standard();
    let sx = x.sqrt();
    let terms = Terms {
        disc: (c.cheb_disc * sx + c.rk_disc) * profile.log_disc(),
        degree: (c.cheb_degree * sx - c.rk_degree) * profile.n(),
        constant: x / c.cheb_t + c.cheb_sqrt * sx + c.cheb_const,
        epsilon: epsilon(profile, x, c.cheb_t),
    };
    Ok(BoundResult::from_terms(terms, x, Some(c.cheb_t), Some(c.cheb_kappa)))
}

/// `sqrt(x) [(log x / 2pi + 2) log Delta + (log^2 x / 8pi + 2) n]`, `x >= 100`.
pub fn prior_x100_bound(profile: &FieldProfile, x: f64) -> Result<BoundResult> {
    check_validity(BoundFormula::PriorX100, x)?;
    let c = Constants::standard();
    let sx = x.sqrt();
    let l = x.ln();
    let terms = Terms {
        disc: sx * (l / (2.0 * PI) + c.plain_disc) * profile.log_disc(),
        degree: sx * (l * l / (8.0 * PI) + c.plain_degree) * profile.n(),
        constant: 0.0,
        epsilon: 0.0,
    };
    Ok(BoundResult::from_terms(terms, x, None, None))
}

/// The `x >= 3` bound with `u = log(18.8 x / log^2 x)`.
pub fn prior_x3_bound(profile: &FieldProfile, x: f64) -> Result<BoundResult> {
    check_validity(BoundFormula::PriorX3, x)?;
    let c = Constants::standard();
    let sx = x.sqrt();
    let l = x.ln();
    let u = (c.wide_scale * x / (l * l)).ln();
    let terms = Terms {
        disc: sx * (u / (2.0 * PI) + c.wide_disc) * profile.log_disc(),
        degree: sx * (u * u / (8.0 * PI) + c.wide_degree) * profile.n(),
        constant: sx * (c.wide_log * l + c.wide_const),
        epsilon: 0.0,
    };
    Ok(BoundResult::from_terms(terms, x, None, None))
}

/// The `x >= 2000` bound with `u = log(x / log^2 x)`.
pub fn prior_x2000_bound(profile: &FieldProfile, x: f64) -> Result<BoundResult> {
    check_validity(BoundFormula::PriorX2000, x)?;
    let c = Constants::standard();
    let sx = x.sqrt();
    let l = x.ln();
    let u = (x / (l * l)).ln();
    let terms = Terms {
        disc: sx * (u / (2.0 * PI) + c.large_disc) * profile.log_disc(),
        degree: sx * (u * u / (8.0 * PI) + c.large_degree) * profile.n(),
        constant: sx * (c.large_log * l + c.large_const),
        epsilon: 0.0,
    };
    Ok(BoundResult::from_terms(terms, x, None, None))
}

/// Which arrangement of the leading-order asymptotic to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AsymptoticForm {
    /// Polynomial in `log x` and `log log x`.
    Expanded,
    /// Grouped by `log Delta_K` and `n_K`.
    Reorganized,
}

/// Leading-order size of [`optimized_bound`] as `x -> infinity`, without the
/// `o(sqrt x)` remainder. Needs `x >= 16`.
pub fn asymptotic_rhs(profile: &FieldProfile, x: f64, form: AsymptoticForm) -> Result<f64> {
    asymptotic_rhs_with(Constants::standard(), profile, x, form)
}

pub fn asymptotic_rhs_with(c: &Constants, profile: &FieldProfile, x: f64, form: AsymptoticForm) -> Result<f64> {
    if !(x >= 16.0) || !x.is_finite() {
        return Err(domain(format!("the asymptotic form needs x >= 16, got x = {x}")));
    }
    let n = profile.n();
    let ld = profile.log_root_disc();
    let sx = x.sqrt();
    let l = x.ln();
    let ll = l.ln();
    let a = (Constants::nu() / n).ln();
    let tail = c.gamma * sx / PI;
    let v = match form {
        AsymptoticForm::Expanded => {
            let bracket = 0.25 * l * l - l * ll + (ld + 1.0 + a) * l + ll * ll - 2.0 * (ld + a) * ll
                + (2.0 * a + c.asym_disc) * ld
                + a * a
                - c.asym_degree;
            n * sx / (2.0 * PI) * bracket
        }
        AsymptoticForm::Reorganized => {
            // log(e^2 nu^2 / n^2 / log^2 x)
            let k = 2.0 + 2.0 * a - 2.0 * ll;
            let u = k + l;
            sx / (2.0 * PI) * (u + c.asym_disc_reorg) * profile.log_disc()
                + sx / (8.0 * PI) * (u * u - 4.0 * k - c.asym_degree_reorg) * n
        }
    };
    Ok(v + tail)
}

/// First `x` from which the optimized bound beats a rival formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossoverRow {
    pub degree: u32,
    pub log_disc: f64,
    pub r1: u32,
    pub r2: u32,
    pub rival: BoundFormula,
    pub best_of: bool,
    pub crossover_x: u64,
    pub clamped: bool,
}

pub const DEFAULT_X_CAP: u64 = 10_000_000;

/// Search grid: every integer from `start` to `10^5`, then multiplicative
/// steps of `1.001` (rounded up) until `cap`.
pub fn crossover_grid(start: u64, cap: u64) -> Vec<u64> {
    let dense_end = cap.min(100_000);
    let mut grid: Vec<u64> = (start..=dense_end).collect();
    if cap > 100_000 {
        let mut g = 100_000f64;
        while (g as u64) < cap {
            g *= 1.001;
            let p = (g.ceil() as u64).min(cap);
            if grid.last() != Some(&p) {
                grid.push(p);
            }
        }
    }
    grid
}

/// Smallest integer `x0 >= rival.validity_min_x` such that the optimized
/// bound is at most the rival at every grid point in `[x0, x_cap]`.
///
/// Between the last losing grid point and the next one the boundary is
/// located by integer bisection.
pub fn crossover(profile: &FieldProfile, rival: BoundFormula, x_cap: u64) -> Result<CrossoverRow> {
    crossover_impl(profile, rival, x_cap, false)
}

/// As [`crossover`], with the pointwise minimum of the optimized and
/// fixed-`T` bounds in place of the optimized bound.
pub fn crossover_best(profile: &FieldProfile, rival: BoundFormula, x_cap: u64) -> Result<CrossoverRow> {
    crossover_impl(profile, rival, x_cap, true)
}

fn crossover_impl(profile: &FieldProfile, rival: BoundFormula, x_cap: u64, best_of: bool) -> Result<CrossoverRow> {
    if matches!(rival, BoundFormula::Optimized | BoundFormula::General) {
        return Err(domain(format!("'{rival}' is not a rival formula")));
    }
    let start = rival.validity_min_x().ceil() as u64;
    if x_cap < start {
        return Err(domain(format!(
            "x_cap = {x_cap} is below the validity threshold {start} of '{rival}'"
        )));
    }
    let ours = |x: f64| -> Result<f64> {
        let v = optimized_bound(profile, x)?.value;
        if best_of {
            Ok(v.min(fixed_t_bound(profile, x)?.value))
        } else {
            Ok(v)
        }
    };
    let loses = |x: u64| -> Result<bool> {
        let xf = x as f64;
        Ok(ours(xf)? > rival.evaluate(profile, xf)?.value)
    };
    let grid = crossover_grid(start, x_cap);
    let mut last_bad = None;
    for i in (0..grid.len()).rev() {
        if loses(grid[i])? {
            last_bad = Some(i);
            break;
        }
    }
    let x0 = match last_bad {
        None => start,
        Some(i) if i + 1 == grid.len() => {
            return Err(Error::NoCrossover(format!(
                "{profile}: '{rival}' is still smaller at x_cap = {x_cap}"
            )))
        }
        Some(i) => {
            let (mut lo, mut hi) = (grid[i], grid[i + 1]);
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if loses(mid)? {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            hi
        }
    };
    Ok(CrossoverRow {
        degree: profile.degree(),
        log_disc: profile.log_disc(),
        r1: profile.r1(),
        r2: profile.r2(),
        rival,
        best_of,
        crossover_x: x0,
        clamped: x0 == start,
    })
}
