//! Safeguarded Newton iteration on a sign-change bracket.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Find a root of `f` in `[lo, hi]`, where `f(lo) < 0 < f(hi)`.
///
/// Each step tries a Newton update from `df` and falls back to bisection when
/// the update leaves the current bracket. Stops when `|f| <= tol` or the
/// bracket collapses to a few ulps.
pub fn bracketed_newton(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<Root> {
    let flo = f(lo);
    let fhi = f(hi);
    if !(flo < 0.0 && fhi > 0.0) {
        return Err(Error::Convergence(format!(
            "no sign change on [{lo}, {hi}]: f = ({flo}, {fhi})"
        )));
    }
    let mut x = 0.5 * (lo + hi);
    for it in 1..=max_iter {
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::Convergence(format!("non-finite value at {x}")));
        }
        if fx.abs() <= tol {
            return Ok(Root {
                x,
                residual: fx,
                iterations: it,
            });
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi.abs() {
            let r = f(x);
            if r.abs() <= tol {
                return Ok(Root {
                    x,
                    residual: r,
                    iterations: it,
                });
            }
            return Err(Error::Convergence(format!(
                "bracket collapsed at {x} with residual {r} > {tol}"
            )));
        }
        let d = df(x);
        let newton = x - fx / d;
        x = if d.is_finite() && d != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::Convergence(format!("no convergence in {max_iter} iterations")))
}
