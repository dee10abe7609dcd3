use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Real parameters (λ, η) of the Coulomb wave equation
/// `w″ + (1 − 2η/ρ − λ(λ+1)/ρ²) w = 0`.
///
/// Construction enforces λ > −1 and finiteness. Results are validated for
/// |λ| ≤ 50 and |η| ≤ 50; outside that box they are best effort.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    lambda: f64,
    eta: f64,
}

impl Params {
    pub const VALIDATED_BOUND: f64 = 50.0;

    pub fn new(lambda: f64, eta: f64) -> Result<Self> {
        if !lambda.is_finite() || !eta.is_finite() {
            return Err(Error::domain(format!(
                "parameters must be finite (lambda = {lambda}, eta = {eta})"
            )));
        }
        if lambda <= -1.0 {
            return Err(Error::domain(format!(
                "lambda must exceed -1 (got {lambda})"
            )));
        }
        Ok(Self { lambda, eta })
    }

    #[inline]
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    #[inline]
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Same λ with η negated; maps negative-axis zeros onto positive ones.
    pub fn reflected(&self) -> Self {
        Self {
            lambda: self.lambda,
            eta: -self.eta,
        }
    }

    /// `λ(λ+1)`, the centrifugal coefficient.
    #[inline]
    pub fn centrifugal(&self) -> f64 {
        self.lambda * (self.lambda + 1.0)
    }

    /// `v₀ = −λ² − λ − η²`.
    #[inline]
    pub fn v0(&self) -> f64 {
        -self.lambda * self.lambda - self.lambda - self.eta * self.eta
    }

    /// Coefficient of the ODE `w″ = q(ρ) w`.
    #[inline]
    pub fn q(&self, rho: f64) -> f64 {
        -1.0 + 2.0 * self.eta / rho + self.centrifugal() / (rho * rho)
    }

    pub fn in_validated_range(&self) -> bool {
        self.lambda.abs() <= Self::VALIDATED_BOUND && self.eta.abs() <= Self::VALIDATED_BOUND
    }
}

/// Which function's zeros are targeted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Regular function `F_λ(η,ρ)`.
    F,
    /// Irregular function `G_λ(η,ρ)`.
    G,
    /// `F′_λ(η,ρ)`.
    DF,
    /// `G′_λ(η,ρ)`.
    DG,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::F, Kind::G, Kind::DF, Kind::DG];

    /// F and G′ sit near θ = nπ; G and F′ near θ = (n − ½)π.
    pub fn half_offset(self) -> bool {
        matches!(self, Kind::G | Kind::DF)
    }

    /// `true` for F′ and G′, whose zero condition involves R and S.
    pub fn is_derivative(self) -> bool {
        matches!(self, Kind::DF | Kind::DG)
    }

    /// `true` for the regular pair F, F′.
    pub fn is_regular(self) -> bool {
        matches!(self, Kind::F | Kind::DF)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::F => "F",
            Kind::G => "G",
            Kind::DF => "dF",
            Kind::DG => "dG",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" => Ok(Kind::F),
            "G" => Ok(Kind::G),
            "dF" | "F'" | "Fp" => Ok(Kind::DF),
            "dG" | "G'" | "Gp" => Ok(Kind::DG),
            other => Err(Error::domain(format!(
                "unknown kind '{other}' (expected F, G, dF or dG)"
            ))),
        }
    }
}
