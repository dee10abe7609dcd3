//! Asymptotic approximations to the large positive zeros of the Coulomb wave
//! functions `F_λ(η,ρ)`, `G_λ(η,ρ)` and their ρ-derivatives.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: truncated power series in one formal variable.
//! * [`gamma`]: Coulomb phase shift `σ_λ(η) = ph Γ(λ+1+iη)` and `log|Γ|`.
//! * [`asym`]: large-ρ expansions of the amplitude/phase functions P, Q, R, S.
//! * [`mcmahon`]: the leading approximation ρ₀, the correction coefficients
//!   ε_k and the McMahon-type zero formula for all four function kinds.
//! * [`oracle`]: an independent evaluator of F, F′, G, G′ (Frobenius series
//!   at the origin, asymptotic anchor at large ρ, Taylor-series ODE stepping).
//! * [`refine`]: bracketed Newton refinement of zeros against the oracle and
//!   per-zero error reports.
//!
//! ```
//! use coulomb_zeros::{mcmahon, Kind, Params};
//!
//! let params = Params::new(1.3, 2.1).unwrap();
//! let rho = mcmahon::mcmahon_zero(params, Kind::F, 10, 6).unwrap();
//! assert!((rho - 41.02118854245900).abs() / rho < 1e-7);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod asym;
pub mod error;
pub mod gamma;
pub mod mcmahon;
pub mod oracle;
pub mod params;
pub mod refine;
pub mod roots;
pub mod series;

pub use error::{Error, Result};
pub use mcmahon::Expansion;
pub use oracle::CoulombState;
pub use params::{Kind, Params};
pub use refine::{MinN, ZeroRecord};
pub use series::TruncSeries;

/// Truncation order used for ε derivations unless the caller asks otherwise.
pub const DEFAULT_ORDER: usize = 12;

/// Number of expansion terms (ρ₀ plus five corrections) used by default.
pub const DEFAULT_TERMS: usize = 6;
