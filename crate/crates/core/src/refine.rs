//! Refinement of McMahon approximations against the oracle, and per-zero
//! error reports.

use std::f64::consts::PI;

use crate::asym;
use crate::error::{Error, Result};
use crate::mcmahon;
use crate::oracle;
use crate::params::{Kind, Params};
use crate::roots::{safeguarded_newton, NewtonOptions};

/// Half-width of the refinement bracket as a fraction of π/θ′.
pub const BRACKET_FRACTION: f64 = 0.6;

/// Samples per local wavelength when counting sign changes.
pub const SAMPLES_PER_WAVELENGTH: f64 = 40.0;

/// Largest amplitude-scaled residual accepted for a refined zero.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// One refined zero and how far the expansion was from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub kind: Kind,
    pub n: u32,
    pub terms: usize,
    pub rho_mc: f64,
    pub rho_refined: f64,
    /// `|f| / amplitude` at `rho_refined`.
    pub residual: f64,
    /// `|rho_mc − rho_refined| / rho_refined`.
    pub rel_error: f64,
}

/// A refined zero without the expansion bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinedZero {
    pub rho: f64,
    pub residual: f64,
}

/// Outcome of [`min_n_for_accuracy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinN {
    Found(u32),
    /// No index up to the cap reached the tolerance.
    CapReached,
}

/// Value of the targeted function and its ρ-derivative. Second
/// derivatives come from the ODE: `F″ = q F`, `G″ = q G`.
pub fn target(params: Params, kind: Kind, rho: f64) -> Result<(f64, f64)> {
    let q = params.q(rho);
    Ok(match kind {
        Kind::F => oracle::eval_f(params, rho)?,
        Kind::G => oracle::eval_g(params, rho)?,
        Kind::DF => {
            let (f, df) = oracle::eval_f(params, rho)?;
            (df, q * f)
        }
        Kind::DG => {
            let (g, dg) = oracle::eval_g(params, rho)?;
            (dg, q * g)
        }
    })
}

fn local_wavenumber(params: Params, rho: f64) -> f64 {
    (-params.q(rho)).max(1e-12).sqrt()
}

/// `|f| / sqrt(f² + (f′/ω)²)` with ω the local wavenumber.
pub fn scaled_residual(params: Params, rho: f64, value: f64, deriv: f64) -> f64 {
    let omega = local_wavenumber(params, rho);
    let amplitude = value.hypot(deriv / omega);
    if amplitude == 0.0 {
        0.0
    } else {
        value.abs() / amplitude
    }
}

/// Refines `guess` to a zero of `kind` inside `guess ± 0.6·π/θ′(guess)`.
pub fn refine(params: Params, kind: Kind, guess: f64) -> Result<RefinedZero> {
    if !(guess > 0.0) || !guess.is_finite() {
        return Err(Error::domain(format!(
            "guess must be positive (got {guess})"
        )));
    }
    let theta_prime = asym::theta_prime(params, guess)?;
    if theta_prime <= 0.0 {
        return Err(Error::domain(format!(
            "guess {guess} lies inside the turning point (eta = {})",
            params.eta()
        )));
    }
    let half_width = BRACKET_FRACTION * PI / theta_prime;
    let lo = (guess - half_width).max(0.5 * guess);
    let hi = guess + half_width;
    let opts = NewtonOptions {
        rel_step_tol: 1e-14,
        max_iter: 100,
    };
    let rho = safeguarded_newton(|r| target(params, kind, r), lo, hi, guess, opts)?;
    let (value, deriv) = target(params, kind, rho)?;
    let residual = scaled_residual(params, rho, value, deriv);
    if residual > RESIDUAL_TOL {
        return Err(Error::numerical(format!(
            "refined zero {rho} has residual {residual:e}"
        )));
    }
    Ok(RefinedZero { rho, residual })
}

/// McMahon value for the n-th zero, refined, with its relative error.
pub fn zero_record(params: Params, kind: Kind, n: u32, terms: usize) -> Result<ZeroRecord> {
    let rho_mc = mcmahon::mcmahon_zero(params, kind, n, terms)?;
    let refined = refine(params, kind, rho_mc)?;
    Ok(ZeroRecord {
        kind,
        n,
        terms,
        rho_mc,
        rho_refined: refined.rho,
        residual: refined.residual,
        rel_error: (rho_mc - refined.rho).abs() / refined.rho,
    })
}

/// Refined zeros for n = 1..=upto_n, cross-checked by counting sign changes
/// of the target on a dense grid over (0, last zero + half a wavelength].
pub fn verify_index(params: Params, kind: Kind, upto_n: u32) -> Result<Vec<ZeroRecord>> {
    verify_index_with_terms(params, kind, upto_n, crate::DEFAULT_TERMS)
}

pub fn verify_index_with_terms(
    params: Params,
    kind: Kind,
    upto_n: u32,
    terms: usize,
) -> Result<Vec<ZeroRecord>> {
    if upto_n < 1 {
        return Err(Error::domain("upto_n must be at least 1"));
    }
    let records = (1..=upto_n)
        .map(|n| zero_record(params, kind, n, terms))
        .collect::<Result<Vec<_>>>()?;
    for pair in records.windows(2) {
        if !(pair[1].rho_refined > pair[0].rho_refined) {
            return Err(Error::IndexMismatch {
                expected: upto_n as usize,
                found: pair[0].n as usize,
                lo: pair[0].rho_refined,
                hi: pair[1].rho_refined,
            });
        }
    }

    let last = records.last().expect("upto_n >= 1").rho_refined;
    let hi = last + PI / asym::theta_prime(params, last)?;
    let lo = 1e-3 * oracle::origin_switch_radius(params).min(1.0);
    let grid = sample_grid(params, lo, hi);
    let values: Vec<f64> = sample_target(params, kind, &grid)?;

    let mut crossings = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for (&rho, &v) in grid.iter().zip(&values) {
        if v == 0.0 {
            continue;
        }
        if let Some((prho, pv)) = prev {
            if pv.signum() != v.signum() {
                crossings.push((prho, rho));
            }
        }
        prev = Some((rho, v));
    }
    if crossings.len() != records.len() {
        return Err(Error::IndexMismatch {
            expected: records.len(),
            found: crossings.len(),
            lo,
            hi,
        });
    }
    for (rec, &(a, b)) in records.iter().zip(&crossings) {
        if !(rec.rho_refined >= a && rec.rho_refined <= b) {
            return Err(Error::IndexMismatch {
                expected: rec.n as usize,
                found: crossings
                    .iter()
                    .position(|&(x, y)| rec.rho_refined >= x && rec.rho_refined <= y)
                    .map_or(0, |i| i + 1),
                lo: a,
                hi: b,
            });
        }
    }
    Ok(records)
}

/// Grid on [lo, hi] with at least [`SAMPLES_PER_WAVELENGTH`] points per
/// local wavelength, measured with the larger of the local wavenumber,
/// |θ′| and 1.
fn sample_grid(params: Params, lo: f64, hi: f64) -> Vec<f64> {
    let mut grid = vec![lo];
    let mut rho = lo;
    while rho < hi {
        let omega = (-params.q(rho))
            .max(0.0)
            .sqrt()
            .max((1.0 - params.eta() / rho).abs())
            .max(1.0);
        rho = (rho + 2.0 * PI / (SAMPLES_PER_WAVELENGTH * omega)).min(hi);
        grid.push(rho);
    }
    grid
}

fn sample_target(params: Params, kind: Kind, grid: &[f64]) -> Result<Vec<f64>> {
    let pairs = if kind.is_regular() {
        oracle::eval_f_many(params, grid)?
    } else {
        oracle::eval_g_many(params, grid)?
    };
    Ok(pairs
        .into_iter()
        .map(|(w, dw)| if kind.is_derivative() { dw } else { w })
        .collect())
}

/// Smallest n ≤ n_cap whose `terms`-term expansion has relative error
/// below `tol`. Indices whose expansion or refinement fails count as not
/// accurate.
pub fn min_n_for_accuracy(
    params: Params,
    kind: Kind,
    tol: f64,
    terms: usize,
    n_cap: u32,
) -> Result<MinN> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!(
            "tolerance must be positive (got {tol})"
        )));
    }
    for n in 1..=n_cap {
        if let Ok(rec) = zero_record(params, kind, n, terms) {
            if rec.rel_error < tol {
                return Ok(MinN::Found(n));
            }
        }
    }
    Ok(MinN::CapReached)
}
