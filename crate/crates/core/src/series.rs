//! Truncated power series in a single formal variable `t`.
//!
//! A [`TruncSeries`] of order `K` stores `c₀..c_K` and represents
//! `Σ c_k t^k + O(t^{K+1})`. Binary operations truncate to the smaller order
//! of their operands. Elementary functions are built from the coefficient
//! recurrences implied by `f′ = g(u)·u′`, so each costs O(K²).

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries {
    coeffs: Vec<f64>,
}

impl TruncSeries {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty coefficient list.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c0");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![0.0; order + 1],
        }
    }

    pub fn constant(value: f64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    /// The formal variable `t` itself.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = 1.0;
        }
        s
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    #[inline]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplication by `t`: shifts coefficients up one slot, keeping the order.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = vec![0.0; self.coeffs.len()];
        coeffs[1..].copy_from_slice(&self.coeffs[..self.order()]);
        Self { coeffs }
    }

    /// Formal derivative d/dt; the result has order `K - 1` (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: (1..=self.order())
                .map(|k| k as f64 * self.coeffs[k])
                .collect(),
        }
    }

    /// Evaluates the truncated polynomial at a numeric `t`.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// Horner evaluation of `Σ a_k s^k` where `s` is a series with `s₀ = 0`.
    pub fn compose_poly(poly: &[f64], s: &TruncSeries) -> Result<Self> {
        if s.coeffs[0] != 0.0 {
            return Err(Error::domain(
                "inner series of a composition must vanish at t = 0",
            ));
        }
        let order = s.order();
        let mut acc = Self::zero(order);
        // s^k = O(t^k), so terms beyond the order contribute nothing.
        for &a in poly.iter().take(order + 1).rev() {
            acc = &acc * s;
            acc.coeffs[0] += a;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order)
                .map(|k| self.coeffs[k] + other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order)
                .map(|k| self.coeffs[k] - other.coeffs[k])
                .collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let a = &self.coeffs;
        let b = &other.coeffs;
        Self {
            coeffs: (0..=order)
                .map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum())
                .collect(),
        }
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let a = &self.coeffs;
        if a[0] == 0.0 {
            return Err(Error::domain(
                "reciprocal of a series with zero constant term",
            ));
        }
        let inv0 = 1.0 / a[0];
        let mut b = vec![0.0; a.len()];
        b[0] = inv0;
        for k in 1..a.len() {
            let acc: f64 = (1..=k).map(|j| a[j] * b[k - j]).sum();
            b[k] = -inv0 * acc;
        }
        Ok(Self { coeffs: b })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.reciprocal()?))
    }

    /// `ln(1 + u)` for `u₀ = 0`.
    pub fn log1p(&self) -> Result<Self> {
        self.require_zero_constant("log1p")?;
        let u = &self.coeffs;
        // f′·(1 + u) = u′
        let mut f = vec![0.0; u.len()];
        for k in 1..u.len() {
            let acc: f64 = (1..k).map(|j| j as f64 * f[j] * u[k - j]).sum();
            f[k] = u[k] - acc / k as f64;
        }
        Ok(Self { coeffs: f })
    }

    /// `arctan(u)` for `u₀ = 0`.
    pub fn arctan(&self) -> Result<Self> {
        self.require_zero_constant("arctan")?;
        let u = &self.coeffs;
        let h = self.mul(self).coeffs; // u², with h₀ = 0
                                       // f′·(1 + u²) = u′
        let mut f = vec![0.0; u.len()];
        for k in 1..u.len() {
            let acc: f64 = (1..k).map(|j| j as f64 * f[j] * h[k - j]).sum();
            f[k] = u[k] - acc / k as f64;
        }
        Ok(Self { coeffs: f })
    }

    /// `(sin u, cos u)` for `u₀ = 0`.
    pub fn sin_cos(&self) -> Result<(Self, Self)> {
        self.require_zero_constant("sin_cos")?;
        let u = &self.coeffs;
        let n = u.len();
        let mut s = vec![0.0; n];
        let mut c = vec![0.0; n];
        c[0] = 1.0;
        // s′ = c·u′, c′ = −s·u′
        for k in 1..n {
            let mut ds = 0.0;
            let mut dc = 0.0;
            for j in 1..=k {
                let ju = j as f64 * u[j];
                ds += ju * c[k - j];
                dc += ju * s[k - j];
            }
            s[k] = ds / k as f64;
            c[k] = -dc / k as f64;
        }
        Ok((Self { coeffs: s }, Self { coeffs: c }))
    }

    fn require_zero_constant(&self, op: &str) -> Result<()> {
        if self.coeffs[0] != 0.0 {
            Err(Error::domain(format!(
                "{op} requires a series with zero constant term (got {})",
                self.coeffs[0]
            )))
        } else {
            Ok(())
        }
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: Self) -> TruncSeries {
        TruncSeries::add(self, rhs)
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: Self) -> TruncSeries {
        TruncSeries::sub(self, rhs)
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: Self) -> TruncSeries {
        TruncSeries::mul(self, rhs)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.scale(-1.0)
    }
}
