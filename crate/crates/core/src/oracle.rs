//! Independent evaluation of `F`, `F′`, `G`, `G′` for ρ > 0.
//!
//! * F is started from its Frobenius series at the origin and carried
//!   outward by Taylor-series steps of the ODE `w″ = q(ρ) w`,
//!   `q(ρ) = −1 + 2η/ρ + λ(λ+1)/ρ²`.
//! * G is started from the large-ρ amplitude/phase form at an anchor far
//!   enough out that the asymptotic sums are accurate, and carried inward.
//!
//! This module shares nothing with [`crate::mcmahon`]: the only common
//! pieces are the phase shift and the P, Q, R, S coefficient tables.

use crate::asym::{self, CoeffTable};
use crate::error::{Error, Result};
use crate::gamma;
use crate::params::Params;

/// Order of the local Taylor polynomials.
pub const TAYLOR_ORDER: usize = 20;

/// Per-step tail tolerance, relative to the local solution scale.
pub const STEP_TOL: f64 = 1e-16;

/// Asymptotic error required at the anchor for G.
pub const ANCHOR_TOL: f64 = 1e-15;

/// Largest anchor considered before giving up.
pub const ANCHOR_CAP: f64 = 1e6;

/// Smallest anchor tried; escalated by doubling.
pub const ANCHOR_MIN: f64 = 10.0;

const ANCHOR_TABLE_SIZE: usize = 120;

/// Values of the Coulomb pair and their derivatives at one ρ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombState {
    pub rho: f64,
    pub f: f64,
    pub df: f64,
    pub g: f64,
    pub dg: f64,
}

impl CoulombState {
    /// `F′G − FG′`, equal to 1 for the standard normalisation.
    pub fn wronskian(&self) -> f64 {
        self.df * self.g - self.f * self.dg
    }
}

/// Radius up to which the origin series is used.
///
/// Starts at `0.5 + λ + |η|` and is halved while the series suffers more
/// than two digits of cancellation (which happens for attractive fields).
pub fn origin_switch_radius(params: Params) -> f64 {
    let mut r = 0.5 + params.lambda() + params.eta().abs();
    for _ in 0..60 {
        match origin_sums(params, r) {
            Some(sums) if sums.condition <= 1e2 => return r,
            _ => r *= 0.5,
        }
    }
    r
}

struct OriginSums {
    /// `Σ c_k ρ^k`
    value: f64,
    /// `Σ (λ+1+k) c_k ρ^k`
    deriv: f64,
    /// `Σ |terms| / |Σ terms|`, the worse of the two series.
    condition: f64,
}

fn origin_sums(params: Params, rho: f64) -> Option<OriginSums> {
    let lambda = params.lambda();
    let eta = params.eta();
    let mut c_prev = 0.0;
    let mut c = 1.0;
    let mut pow = 1.0;
    let mut value = 0.0;
    let mut deriv = 0.0;
    let mut abs_value = 0.0;
    let mut abs_deriv = 0.0;
    let mut small_run = 0;
    for k in 0..5000usize {
        let kf = k as f64;
        let term = c * pow;
        let dterm = (lambda + 1.0 + kf) * term;
        value += term;
        deriv += dterm;
        abs_value += term.abs();
        abs_deriv += dterm.abs();
        if !value.is_finite() || !deriv.is_finite() {
            return None;
        }
        if term.abs() < 1e-17 * value.abs() && dterm.abs() < 1e-17 * deriv.abs() {
            small_run += 1;
            if small_run == 3 {
                let condition = (abs_value / value.abs()).max(abs_deriv / deriv.abs());
                return Some(OriginSums {
                    value,
                    deriv,
                    condition,
                });
            }
        } else {
            small_run = 0;
        }
        // (k+1)(k+2λ+2) c_{k+1} = 2η c_k − c_{k−1}
        let c_next = (2.0 * eta * c - c_prev) / ((kf + 1.0) * (kf + 2.0 * lambda + 2.0));
        c_prev = c;
        c = c_next;
        pow *= rho;
    }
    None
}

/// `F` and `F′` from the Frobenius series `C_λ(η) ρ^{λ+1} Σ c_k ρ^k`.
pub fn f_series_origin(params: Params, rho: f64) -> Result<(f64, f64)> {
    if !(rho > 0.0) {
        return Err(Error::domain(format!("rho must be positive (got {rho})")));
    }
    let limit = origin_switch_radius(params);
    if rho > limit * (1.0 + 1e-12) {
        return Err(Error::domain(format!(
            "origin series used at rho = {rho} beyond its switch radius {limit}"
        )));
    }
    let sums = origin_sums(params, rho).ok_or_else(|| {
        Error::numerical(format!("origin series failed to converge at rho = {rho}"))
    })?;
    let ln_c = gamma::ln_f_norm_constant(params);
    let ln_rho = rho.ln();
    let lambda = params.lambda();
    let f = sums.value.signum() * (ln_c + (lambda + 1.0) * ln_rho + sums.value.abs().ln()).exp();
    let df = sums.deriv.signum() * (ln_c + lambda * ln_rho + sums.deriv.abs().ln()).exp();
    Ok((f, df))
}

/// A solution `(w, w′)` of the Coulomb ODE that can be moved along ρ.
#[derive(Debug, Clone)]
pub struct Propagator {
    params: Params,
    rho: f64,
    w: f64,
    dw: f64,
    coeffs: Vec<f64>,
    q: Vec<f64>,
}

impl Propagator {
    pub fn new(params: Params, rho: f64, w: f64, dw: f64) -> Result<Self> {
        if !(rho > 0.0) {
            return Err(Error::domain(format!("rho must be positive (got {rho})")));
        }
        Ok(Self {
            params,
            rho,
            w,
            dw,
            coeffs: vec![0.0; TAYLOR_ORDER + 1],
            q: vec![0.0; TAYLOR_ORDER + 1],
        })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Current `(w, w′)`.
    pub fn value(&self) -> (f64, f64) {
        (self.w, self.dw)
    }

    /// Advances (or retreats) to `target` in Taylor steps.
    pub fn advance_to(&mut self, target: f64) -> Result<()> {
        if !(target > 0.0) {
            return Err(Error::domain(format!(
                "target rho must be positive (got {target})"
            )));
        }
        while self.rho != target {
            let remaining = target - self.rho;
            self.step(remaining)?;
        }
        Ok(())
    }

    fn step(&mut self, remaining: f64) -> Result<()> {
        let c = self.rho;
        let n = TAYLOR_ORDER;
        let eta = self.params.eta();
        let cent = self.params.centrifugal();

        // Taylor coefficients of q about c, with x = ρ − c:
        // 1/ρ = Σ (−1)^j x^j / c^{j+1},  1/ρ² = Σ (j+1)(−1)^j x^j / c^{j+2}.
        let inv_c = 1.0 / c;
        let mut pw = inv_c; // (−1)^j / c^{j+1}
        for j in 0..=n {
            self.q[j] = 2.0 * eta * pw + cent * (j as f64 + 1.0) * pw * inv_c;
            pw *= -inv_c;
        }
        self.q[0] -= 1.0;

        let a = &mut self.coeffs;
        a[0] = self.w;
        a[1] = self.dw;
        for k in 0..=(n - 2) {
            let acc: f64 = (0..=k).map(|j| self.q[j] * a[k - j]).sum();
            a[k + 2] = acc / ((k + 1) as f64 * (k + 2) as f64);
        }

        let scale = a[0].hypot(a[1]);
        if scale == 0.0 {
            // Trivial solution stays trivial.
            self.rho += remaining;
            return Ok(());
        }
        let mut h_tail = f64::INFINITY;
        for k in [n - 1, n] {
            if a[k] != 0.0 {
                h_tail = h_tail.min((STEP_TOL * scale / a[k].abs()).powf(1.0 / k as f64));
            }
        }
        let h_cap = 0.5 * c.min(1.0);
        let h_max = h_cap.min(0.9 * h_tail);
        if h_max < 1e-12 * c.max(1.0) {
            return Err(Error::numerical(format!(
                "Taylor step underflow at rho = {c} (h = {h_max:e})"
            )));
        }
        let h = if remaining.abs() <= h_max {
            remaining
        } else {
            h_max.copysign(remaining)
        };

        let mut w = 0.0;
        let mut dw = 0.0;
        for k in (0..=n).rev() {
            w = w * h + a[k];
            if k >= 1 {
                dw = dw * h + k as f64 * a[k];
            }
        }
        self.w = w;
        self.dw = dw;
        self.rho = if remaining.abs() <= h_max {
            c + remaining
        } else {
            c + h
        };
        Ok(())
    }
}

/// Carries `(w, w′)` from `from` to `to` along the Coulomb ODE.
pub fn integrate_ode(params: Params, from: f64, state: (f64, f64), to: f64) -> Result<(f64, f64)> {
    if !(to > 0.0) {
        return Err(Error::domain(format!(
            "target rho must be positive (got {to})"
        )));
    }
    let mut prop = Propagator::new(params, from, state.0, state.1)?;
    prop.advance_to(to)?;
    Ok(prop.value())
}

/// Full state from the large-ρ forms
/// `F = sin θ P + cos θ Q`, `G = cos θ P − sin θ Q`,
/// `F′ = cos θ R + sin θ S`, `G′ = −sin θ R + cos θ S`,
/// with `rho_anchor` doubled until the asymptotic error is below
/// [`ANCHOR_TOL`].
pub fn anchor_at_infinity(params: Params, rho_anchor: f64) -> Result<CoulombState> {
    let table = CoeffTable::build(params, ANCHOR_TABLE_SIZE);
    anchor_with_table(params, &table, rho_anchor)
}

fn anchor_with_table(params: Params, table: &CoeffTable, rho_anchor: f64) -> Result<CoulombState> {
    if !(rho_anchor > 0.0) {
        return Err(Error::domain(format!(
            "anchor must be positive (got {rho_anchor})"
        )));
    }
    let mut rho = rho_anchor;
    loop {
        let v = table.eval(rho)?;
        if v.err_est < ANCHOR_TOL && v.p.is_finite() && v.q.is_finite() {
            let theta = asym::theta(params, rho)?;
            let (sin, cos) = theta.sin_cos();
            return Ok(CoulombState {
                rho,
                f: sin * v.p + cos * v.q,
                df: cos * v.r + sin * v.s,
                g: cos * v.p - sin * v.q,
                dg: -sin * v.r + cos * v.s,
            });
        }
        rho *= 2.0;
        if rho > ANCHOR_CAP {
            return Err(Error::numerical(format!(
                "asymptotic anchor did not reach {ANCHOR_TOL:e} below rho = {ANCHOR_CAP:e}"
            )));
        }
    }
}

/// `(F, F′)` at `rho`.
pub fn eval_f(params: Params, rho: f64) -> Result<(f64, f64)> {
    if !(rho > 0.0) {
        return Err(Error::domain(format!("rho must be positive (got {rho})")));
    }
    let r_switch = origin_switch_radius(params);
    if rho <= r_switch {
        return f_series_origin(params, rho);
    }
    let start = f_series_origin(params, r_switch)?;
    integrate_ode(params, r_switch, start, rho)
}

/// `(G, G′)` at `rho`, anchored no closer than [`ANCHOR_MIN`].
pub fn eval_g(params: Params, rho: f64) -> Result<(f64, f64)> {
    eval_g_with_anchor(params, rho, rho.max(ANCHOR_MIN))
}

/// `(G, G′)` at `rho`, searching for an anchor from `anchor_start` outward.
pub fn eval_g_with_anchor(params: Params, rho: f64, anchor_start: f64) -> Result<(f64, f64)> {
    if !(rho > 0.0) {
        return Err(Error::domain(format!("rho must be positive (got {rho})")));
    }
    let anchor = anchor_at_infinity(params, anchor_start.max(rho))?;
    integrate_ode(params, anchor.rho, (anchor.g, anchor.dg), rho)
}

/// All four functions at `rho`.
pub fn eval(params: Params, rho: f64) -> Result<CoulombState> {
    let (f, df) = eval_f(params, rho)?;
    let (g, dg) = eval_g(params, rho)?;
    Ok(CoulombState { rho, f, df, g, dg })
}

/// `(F, F′)` at each of the ascending points `rhos`, in one outward sweep.
pub fn eval_f_many(params: Params, rhos: &[f64]) -> Result<Vec<(f64, f64)>> {
    check_ascending(rhos)?;
    let r_switch = origin_switch_radius(params);
    let mut out = Vec::with_capacity(rhos.len());
    let mut prop: Option<Propagator> = None;
    for &rho in rhos {
        if rho <= r_switch {
            out.push(f_series_origin(params, rho)?);
            continue;
        }
        let p = match prop.as_mut() {
            Some(p) => p,
            None => {
                let (f, df) = f_series_origin(params, r_switch)?;
                prop.insert(Propagator::new(params, r_switch, f, df)?)
            }
        };
        p.advance_to(rho)?;
        out.push(p.value());
    }
    Ok(out)
}

/// `(G, G′)` at each of the ascending points `rhos`, in one inward sweep.
pub fn eval_g_many(params: Params, rhos: &[f64]) -> Result<Vec<(f64, f64)>> {
    check_ascending(rhos)?;
    let Some(&last) = rhos.last() else {
        return Ok(Vec::new());
    };
    let anchor = anchor_at_infinity(params, last.max(ANCHOR_MIN))?;
    let mut prop = Propagator::new(params, anchor.rho, anchor.g, anchor.dg)?;
    let mut out = vec![(0.0, 0.0); rhos.len()];
    for (i, &rho) in rhos.iter().enumerate().rev() {
        prop.advance_to(rho)?;
        out[i] = prop.value();
    }
    Ok(out)
}

fn check_ascending(rhos: &[f64]) -> Result<()> {
    if rhos.first().is_some_and(|&r| !(r > 0.0)) {
        return Err(Error::domain("sample points must be positive"));
    }
    if rhos.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("sample points must be strictly increasing"));
    }
    Ok(())
}
