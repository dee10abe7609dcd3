//! Coulomb phase shift and gamma-function magnitudes.
//!
//! `log Γ(z)` for `z = x + iy`, `x > 0`, is evaluated by shifting the
//! argument upward until `Re z ≥ 10` and then summing the Stirling series
//! with Bernoulli terms through `B₁₆`. The imaginary part is accumulated as
//! a sum of `atan2` increments, which gives the phase continuous in `y`
//! rather than its principal value.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::Params;

const SHIFT_TARGET: f64 = 10.0;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// `B_{2j} / (2j (2j − 1))` for j = 1..8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,          // B2 = 1/6
    -1.0 / 360.0,        // B4 = -1/30
    1.0 / 1260.0,        // B6 = 1/42
    -1.0 / 1680.0,       // B8 = -1/30
    1.0 / 1188.0,        // B10 = 5/66
    -691.0 / 360_360.0,  // B12 = -691/2730
    1.0 / 156.0,         // B14 = 7/6
    -3617.0 / 122_400.0, // B16 = -3617/510
];

/// `log Γ(x + iy)` for `x > 0` as `(Re, Im)`, with `Im` continuous in `y`.
pub fn ln_gamma(x: f64, y: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !y.is_finite() {
        return Err(Error::domain(format!(
            "ln_gamma needs Re z > 0 and finite Im z (got {x} + {y}i)"
        )));
    }
    let mut re_shift = 0.0;
    let mut im_shift = 0.0;
    let mut xs = x;
    while xs < SHIFT_TARGET {
        re_shift += xs.hypot(y).ln();
        im_shift += y.atan2(xs);
        xs += 1.0;
    }
    let z = Complex64::new(xs, y);
    let (re, im) = stirling(z);
    let im = if y == 0.0 { 0.0 } else { im - im_shift };
    Ok((re - re_shift, im))
}

fn stirling(z: Complex64) -> (f64, f64) {
    let ln_z = z.ln();
    let main = (z - 0.5) * ln_z - z + HALF_LN_2PI;
    let inv = z.inv();
    let inv_sq = inv * inv;
    // Σ c_j z^{1-2j}, Horner in 1/z².
    let mut corr = Complex64::new(0.0, 0.0);
    for &c in STIRLING_COEFFS.iter().rev() {
        corr = corr * inv_sq + c;
    }
    let total = main + corr * inv;
    (total.re, total.im)
}

/// Real `ln Γ(x)` for `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    ln_gamma(x, 0.0).map(|(re, _)| re)
}

/// Coulomb phase shift `σ_λ(η) = ph Γ(λ + 1 + iη)`, continuous in η.
pub fn sigma(params: Params) -> f64 {
    if params.eta() == 0.0 {
        return 0.0;
    }
    // λ > −1 is guaranteed by `Params`, so the real part is positive.
    ln_gamma(params.lambda() + 1.0, params.eta())
        .expect("Params guarantees lambda > -1")
        .1
}

/// `Re log Γ(λ + 1 + iη) = ln |Γ(λ + 1 + iη)|`.
pub fn log_abs_gamma(params: Params) -> f64 {
    ln_gamma(params.lambda() + 1.0, params.eta())
        .expect("Params guarantees lambda > -1")
        .0
}

/// `ln C_λ(η)` with `C_λ(η) = 2^λ e^{−πη/2} |Γ(λ+1+iη)| / Γ(2λ+2)`.
pub fn ln_f_norm_constant(params: Params) -> f64 {
    let lambda = params.lambda();
    let ln_denominator =
        ln_gamma_real(2.0 * lambda + 2.0).expect("2 lambda + 2 > 0 for lambda > -1");
    lambda * std::f64::consts::LN_2 - 0.5 * PI * params.eta() + log_abs_gamma(params)
        - ln_denominator
}

/// Normalisation of the regular solution at the origin:
/// `F_λ(η,ρ) = C_λ(η) ρ^{λ+1} (1 + O(ρ))`.
pub fn f_norm_constant(params: Params) -> f64 {
    ln_f_norm_constant(params).exp()
}
