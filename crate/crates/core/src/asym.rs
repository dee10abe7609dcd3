//! Large-ρ expansions of the amplitude/phase functions
//! `P ∼ Σ p_k/(2ρ)^k`, `Q ∼ Σ q_k/(2ρ)^k`, `R ∼ Σ r_k/(2ρ)^k`, `S ∼ Σ s_k/(2ρ)^k`
//! and the phase `θ_λ(η,ρ) = ρ − η ln(2ρ) − λπ/2 + σ_λ(η)`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::gamma;
use crate::params::Params;

/// Coefficients `p_k, q_k, r_k, s_k` for `k = 0..=max_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable {
    params: Params,
    p: Vec<f64>,
    q: Vec<f64>,
    r: Vec<f64>,
    s: Vec<f64>,
}

/// P, Q, R, S summed with optimal truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pqrs {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub s: f64,
    /// Magnitude of the first omitted term (largest of the four series).
    pub err_est: f64,
    /// Number of terms summed in each series.
    pub terms: usize,
}

impl CoeffTable {
    pub fn build(params: Params, max_index: usize) -> Self {
        let eta = params.eta();
        let v0 = params.v0();
        let len = max_index + 1;
        let mut p = vec![0.0; len];
        let mut q = vec![0.0; len];
        let mut r = vec![0.0; len];
        let mut s = vec![0.0; len];
        p[0] = 1.0;
        r[0] = 1.0;
        for k in 0..max_index {
            let kf = k as f64;
            let u = eta * (2.0 * kf + 1.0);
            let v = kf + kf * kf + v0;
            let next = kf + 1.0;
            p[k + 1] = (u * p[k] + v * q[k]) / next;
            q[k + 1] = (-v * p[k] + u * q[k]) / next;
            r[k + 1] = p[k + 1] - 2.0 * eta * p[k] - 2.0 * kf * q[k];
            s[k + 1] = -q[k + 1] + 2.0 * eta * q[k] - 2.0 * kf * p[k];
        }
        Self { params, p, q, r, s }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn max_index(&self) -> usize {
        self.p.len() - 1
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    fn envelope(&self, k: usize, x_pow: f64) -> f64 {
        let m = self.p[k]
            .abs()
            .max(self.q[k].abs())
            .max(self.r[k].abs())
            .max(self.s[k].abs());
        m * x_pow
    }

    /// Sums the four expansions at `rho`, stopping before the smallest term.
    ///
    /// The stopping index is the first local minimum of the term envelope
    /// `max(|p_k|, |q_k|, |r_k|, |s_k|)/(2ρ)^k`; if the envelope is still
    /// decreasing at the end of the table the last entry is held back as the
    /// error estimate.
    pub fn eval(&self, rho: f64) -> Result<Pqrs> {
        if !(rho > 0.0) {
            return Err(Error::domain(format!("rho must be positive (got {rho})")));
        }
        let x = 0.5 / rho;
        let kmax = self.max_index();
        let mut pows = Vec::with_capacity(kmax + 1);
        let mut xp = 1.0;
        for _ in 0..=kmax {
            pows.push(xp);
            xp *= x;
        }
        let mut stop = kmax;
        for k in 1..kmax {
            let here = self.envelope(k, pows[k]);
            if here == 0.0 || self.envelope(k + 1, pows[k + 1]) >= here {
                stop = k;
                break;
            }
        }
        if kmax == 0 {
            stop = 0;
        }
        let sum = |c: &[f64]| -> f64 {
            // Smallest terms first.
            (0..stop).rev().map(|k| c[k] * pows[k]).sum()
        };
        let (p, q, r, s) = if stop == 0 {
            (self.p[0], self.q[0], self.r[0], self.s[0])
        } else {
            (sum(&self.p), sum(&self.q), sum(&self.r), sum(&self.s))
        };
        let err_est = if kmax == 0 {
            0.0
        } else {
            self.envelope(stop, pows[stop])
        };
        Ok(Pqrs {
            p,
            q,
            r,
            s,
            err_est,
            terms: stop.max(1),
        })
    }
}

/// `θ_λ(η,ρ) = ρ − η ln(2ρ) − λπ/2 + σ_λ(η)`.
pub fn theta(params: Params, rho: f64) -> Result<f64> {
    theta_with_sigma(params, gamma::sigma(params), rho)
}

/// [`theta`] with a precomputed phase shift.
pub fn theta_with_sigma(params: Params, sigma: f64, rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::domain(format!("rho must be positive (got {rho})")));
    }
    Ok(rho - params.eta() * (2.0 * rho).ln() - params.lambda() * FRAC_PI_2 + sigma)
}

/// `θ′ = 1 − η/ρ`.
pub fn theta_prime(params: Params, rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::domain(format!("rho must be positive (got {rho})")));
    }
    Ok(1.0 - params.eta() / rho)
}
