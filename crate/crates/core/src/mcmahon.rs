//! McMahon-type expansions of the large zeros.
//!
//! Writing `θ_λ(η,ρ) = mπ + δ` with `m = n` (F, G′) or `m = n − ½` (G, F′),
//! the leading approximation ρ₀ solves `ρ₀ − η ln ρ₀ = η ln 2 + λπ/2 − σ_λ(η) + mπ`
//! on the branch ρ₀ > η. The zero is `ρ = ρ₀ + ε` with
//! `ε ∼ Σ ε_k / ρ₀^k`, where the coefficients follow from inverting
//!
//! * `sin δ · P + cos δ · Q = 0` for F and G,
//! * `−sin δ · R + cos δ · S = 0` for F′ and G′,
//!
//! together with `δ = ε − η ln(1 + ε/ρ₀)`.

use std::f64::consts::{LN_2, PI};

use crate::asym::CoeffTable;
use crate::error::{Error, Result};
use crate::gamma;
use crate::params::{Kind, Params};
use crate::roots::{safeguarded_newton, NewtonOptions};
use crate::series::TruncSeries;
use crate::DEFAULT_ORDER;

/// Largest truncation order accepted by [`derive_eps`].
pub const MAX_ORDER: usize = 30;

/// Upper bound on the P/Q truncation error tolerated by [`abramowitz_iterate`].
pub const ABRAMOWITZ_MAX_ERR: f64 = 1e-6;

/// A derived expansion for one zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub params: Params,
    pub kind: Kind,
    pub n: u32,
    pub rho0: f64,
    /// `ε₁..ε_K`.
    pub eps: Vec<f64>,
}

impl Expansion {
    pub fn order(&self) -> usize {
        self.eps.len()
    }

    /// `ρ₀ + Σ_{k=1..eps_terms} ε_k / ρ₀^k`.
    pub fn value(&self, eps_terms: usize) -> Result<f64> {
        if eps_terms > self.eps.len() {
            return Err(Error::domain(format!(
                "requested {eps_terms} coefficients from an expansion of order {}",
                self.eps.len()
            )));
        }
        let t = 1.0 / self.rho0;
        let correction = self.eps[..eps_terms]
            .iter()
            .rev()
            .fold(0.0, |acc, &e| (acc + e) * t);
        Ok(self.rho0 + correction)
    }
}

/// Right-hand side `c = η ln 2 + λπ/2 − σ_λ(η) + mπ` of the ρ₀ equation.
pub fn rho0_rhs(params: Params, kind: Kind, n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("zero index n must be at least 1"));
    }
    let m = if kind.half_offset() {
        n as f64 - 0.5
    } else {
        n as f64
    };
    Ok(params.eta() * LN_2 + 0.5 * params.lambda() * PI - gamma::sigma(params) + m * PI)
}

/// Solves `ρ − η ln ρ = c` on the increasing branch ρ > max(η, 0).
pub fn solve_rho0(params: Params, c: f64) -> Result<f64> {
    let eta = params.eta();
    if !c.is_finite() {
        return Err(Error::domain(format!(
            "rho0 right-hand side must be finite (got {c})"
        )));
    }
    let g = |rho: f64| rho - eta * rho.ln() - c;
    if eta == 0.0 {
        return if c > 0.0 {
            Ok(c)
        } else {
            Err(Error::NoAdmissibleRoot { c })
        };
    }

    let (lo, hi) = if eta > 0.0 {
        // g has its minimum η − η ln η − c at ρ = η.
        if !(g(eta) < 0.0) {
            return Err(Error::NoAdmissibleRoot { c });
        }
        let mut hi = c.max(eta) + eta * (c.max(eta) + eta + 2.0).ln() + 10.0;
        while g(hi) <= 0.0 {
            hi *= 2.0;
        }
        (eta, hi)
    } else {
        let mut hi = c.max(1.0) + eta.abs() * (c.max(1.0) + eta.abs() + 2.0).ln() + 10.0;
        while g(hi) <= 0.0 {
            hi *= 2.0;
        }
        let mut lo = hi.min(1.0) * 0.5;
        while g(lo) >= 0.0 {
            lo *= 0.5;
            if lo < 1e-300 {
                return Err(Error::NoAdmissibleRoot { c });
            }
        }
        (lo, hi)
    };

    let guess = c + eta * c.max(2.0).ln();
    let opts = NewtonOptions {
        rel_step_tol: 1e-16,
        max_iter: 200,
    };
    let root = safeguarded_newton(|rho| Ok((g(rho), 1.0 - eta / rho)), lo, hi, guess, opts)?;
    let tol = 1e-13 * (1.0 + c.abs());
    if g(root).abs() > tol {
        return Err(Error::numerical(format!(
            "rho0 residual {} exceeds {tol} at rho0 = {root}",
            g(root)
        )));
    }
    Ok(root)
}

/// ρ₀ for the n-th zero of `kind`.
pub fn rho0(params: Params, kind: Kind, n: u32) -> Result<f64> {
    let c = rho0_rhs(params, kind, n)?;
    solve_rho0(params, c).map_err(|e| match e {
        Error::NoAdmissibleRoot { .. } => Error::IndexTooSmall { n },
        other => other,
    })
}

/// Coefficients `ε₁..ε_order` of `ε ∼ Σ ε_k/ρ₀^k` for `kind`.
///
/// Works in truncated series over `t = 1/ρ₀`, iterating
/// `ε ← arctan(w) + η·ln(1 + t·ε)` from `ε = 0`, where `w = −Q̃/P̃` (F, G)
/// or `w = S̃/R̃` (F′, G′) and the tilde series are the large-ρ expansions
/// with `1/(2ρ) = (t/2)/(1 + t·ε)`. Each sweep fixes one more coefficient.
/// The coefficients depend on (λ, η) and on whether the kind is a
/// derivative, never on ρ₀ itself.
pub fn derive_eps(params: Params, kind: Kind, order: usize) -> Result<Vec<f64>> {
    if order < 1 {
        return Err(Error::domain("expansion order must be at least 1"));
    }
    if order > MAX_ORDER {
        return Err(Error::domain(format!(
            "expansion order {order} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    let table = CoeffTable::build(params, order);
    let half_t = TruncSeries::variable(order).scale(0.5);
    let one = TruncSeries::constant(1.0, order);
    let eta = params.eta();

    let sweep = |eps: &TruncSeries| -> Result<TruncSeries> {
        let t_eps = eps.shift_up();
        let inv_two_rho = &half_t * &(&one + &t_eps).reciprocal()?;
        let w = if kind.is_derivative() {
            let r = TruncSeries::compose_poly(table.r(), &inv_two_rho)?;
            let s = TruncSeries::compose_poly(table.s(), &inv_two_rho)?;
            s.div(&r)
                .map_err(|_| Error::numerical("R expansion has zero constant term"))?
        } else {
            let p = TruncSeries::compose_poly(table.p(), &inv_two_rho)?;
            let q = TruncSeries::compose_poly(table.q(), &inv_two_rho)?;
            -&q.div(&p)
                .map_err(|_| Error::numerical("P expansion has zero constant term"))?
        };
        Ok(&w.arctan()? + &t_eps.log1p()?.scale(eta))
    };

    let mut eps = TruncSeries::zero(order);
    for _ in 0..=order {
        eps = sweep(&eps)?;
    }
    let check = sweep(&eps)?;
    let scale = eps.coeffs().iter().fold(1.0f64, |m, c| m.max(c.abs()));
    for (k, (a, b)) in eps.coeffs().iter().zip(check.coeffs()).enumerate() {
        if (a - b).abs() > 1e-12 * scale {
            return Err(Error::numerical(format!(
                "epsilon coefficient {k} not stationary: {a} vs {b}"
            )));
        }
    }
    Ok(eps.coeffs()[1..].to_vec())
}

/// Closed forms of `ε₁, ε₂, ε₃` (F, G) or `ε̂₁, ε̂₂, ε̂₃` (F′, G′).
pub fn closed_form_eps(params: Params, kind: Kind) -> [f64; 3] {
    let v0 = params.v0();
    let eta = params.eta();
    let eta2 = eta * eta;
    if kind.is_derivative() {
        [
            0.5 * v0,
            0.25 * eta * (3.0 * v0 - 1.0),
            (22.0 * eta2 * v0 - 19.0 * eta2 - 7.0 * v0 * v0 + 6.0 * v0) / 24.0,
        ]
    } else {
        [
            0.5 * v0,
            0.25 * eta * (3.0 * v0 + 1.0),
            (22.0 * eta2 * v0 + 17.0 * eta2 - 7.0 * v0 * v0 - 6.0 * v0) / 24.0,
        ]
    }
}

/// Builds the expansion of the n-th zero to the given order.
pub fn expansion(params: Params, kind: Kind, n: u32, order: usize) -> Result<Expansion> {
    let rho0 = rho0(params, kind, n)?;
    let eps = derive_eps(params, kind, order)?;
    Ok(Expansion {
        params,
        kind,
        n,
        rho0,
        eps,
    })
}

/// McMahon-type approximation of the n-th positive zero.
///
/// `terms` counts the terms of `ρ₀ + ε₁/ρ₀ + ε₂/ρ₀² + …` including ρ₀
/// itself, so `terms = 6` sums ρ₀ and ε₁..ε₅.
pub fn mcmahon_zero(params: Params, kind: Kind, n: u32, terms: usize) -> Result<f64> {
    if !(1..=MAX_ORDER + 1).contains(&terms) {
        return Err(Error::domain(format!(
            "terms must lie in 1..={} (got {terms})",
            MAX_ORDER + 1
        )));
    }
    expansion(params, kind, n, (terms - 1).max(DEFAULT_ORDER))?.value(terms - 1)
}

/// The n-th zero on the negative ρ axis, obtained from the positive-axis
/// expansion with η negated.
pub fn negative_axis_zero(params: Params, kind: Kind, n: u32, terms: usize) -> Result<f64> {
    mcmahon_zero(params.reflected(), kind, n, terms).map(|rho| -rho)
}

/// Fixed-point iteration
/// `ρ_s = η ln(2ρ_{s−1}) + λπ/2 − σ_λ(η) + nπ − arctan(Q/P)` for zeros of F,
/// with P and Q from their large-ρ expansions at the previous iterate.
pub fn abramowitz_iterate(params: Params, n: u32, start: f64, sweeps: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("zero index n must be at least 1"));
    }
    let eta = params.eta();
    let floor = eta.max(0.0);
    if !(start > floor) {
        return Err(Error::domain(format!(
            "starting value {start} must exceed max(eta, 0) = {floor}"
        )));
    }
    let table = CoeffTable::build(params, 80);
    let offset = 0.5 * params.lambda() * PI - gamma::sigma(params) + n as f64 * PI;
    let mut rho = start;
    for sweep in 0..sweeps {
        let pq = table.eval(rho)?;
        if pq.err_est > ABRAMOWITZ_MAX_ERR {
            return Err(Error::Divergence(format!(
                "P/Q expansion error {:.2e} too large at rho = {rho} (sweep {sweep})",
                pq.err_est
            )));
        }
        rho = eta * (2.0 * rho).ln() + offset - (pq.q / pq.p).atan();
        if !(rho > floor) || !rho.is_finite() {
            return Err(Error::Divergence(format!(
                "iterate {rho} fell below max(eta, 0) at sweep {sweep}"
            )));
        }
    }
    Ok(rho)
}
