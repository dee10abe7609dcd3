//! Bracketed Newton iteration with a bisection safeguard.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions {
    /// Stop once a step is below `rel_step_tol · |x|`.
    pub rel_step_tol: f64,
    pub max_iter: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            rel_step_tol: 1e-14,
            max_iter: 200,
        }
    }
}

/// Finds a root of `f` in `[lo, hi]` starting from `x0`.
///
/// `f` returns `(value, derivative)`. The endpoint values must differ in
/// sign (or vanish). Newton steps that leave the current bracket, or that
/// fail to halve `|f|` twice in a row, are replaced by bisection, so the
/// iteration always converges.
pub fn safeguarded_newton<F>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    x0: f64,
    opts: NewtonOptions,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let (f_lo, _) = f(lo)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let (f_hi, _) = f(hi)?;
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let lo_sign = f_lo.signum();

    let mut x = if x0 > lo && x0 < hi {
        x0
    } else {
        0.5 * (lo + hi)
    };
    let mut prev_abs = f64::INFINITY;
    let mut slow_steps = 0;
    for _ in 0..opts.max_iter {
        let (fx, dfx) = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        if fx.abs() > 0.5 * prev_abs {
            slow_steps += 1;
        } else {
            slow_steps = 0;
        }
        prev_abs = fx.abs();

        let newton = x - fx / dfx;
        if newton.is_finite() && (newton - x).abs() <= opts.rel_step_tol * x.abs() {
            return Ok(newton);
        }
        let next =
            if dfx != 0.0 && newton.is_finite() && newton > lo && newton < hi && slow_steps < 2 {
                newton
            } else {
                slow_steps = 0;
                0.5 * (lo + hi)
            };
        let step = (next - x).abs();
        x = next;
        if step <= opts.rel_step_tol * x.abs() || hi - lo <= 4.0 * f64::EPSILON * x.abs() {
            return Ok(x);
        }
    }
    Err(Error::numerical(format!(
        "safeguarded Newton did not converge in {} iterations (bracket [{lo}, {hi}])",
        opts.max_iter
    )))
}
