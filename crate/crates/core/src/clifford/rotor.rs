//! Bivector exponential and the polar form of even elements.

use super::blade::Blade;
use super::multivector::Multivector;
use crate::error::MathError;

const SERIES_TERMS: usize = 20;
const SCALED_NORM: f64 = 0.5;

/// `exp(F)` for a bivector `F` by scaling and squaring.
///
/// `F` is scaled by `2^-s` until its max-component norm is at most 0.5, the
/// power series is summed to 20 terms, and the result is squared `s` times.
/// Components of `F` outside grade 2 must not exceed `tol` in magnitude;
/// they are discarded.
pub fn exp_bivector(f: &Multivector, tol: f64) -> Result<Multivector, MathError> {
    for b in Blade::all().filter(|b| b.grade() != 2) {
        if f[b].abs() > tol {
            return Err(MathError::Domain(format!(
                "exp_bivector: input has grade-{} component {} = {}",
                b.grade(),
                b,
                f[b]
            )));
        }
    }
    if !f.is_finite() {
        return Err(MathError::Domain("exp_bivector: non-finite input".into()));
    }
    let f = f.grade_unchecked(2);
    let norm = f.norm_inf();
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > SCALED_NORM {
        scaled_norm *= 0.5;
        squarings += 1;
    }
    let x = f.scale(0.5f64.powi(squarings as i32));

    let mut sum = Multivector::one();
    let mut term = Multivector::one();
    for n in 1..=SERIES_TERMS {
        term = term.gp(&x).scale(1.0 / n as f64);
        sum += term;
    }
    for _ in 0..squarings {
        sum = sum.gp(&sum);
    }
    Ok(sum)
}

/// `ψ = ρ^{1/2} e^{−τβ/2} R` for an even `ψ` with `ψψ̃ ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarForm {
    pub rho: f64,
    pub beta: f64,
    pub rotor: Multivector,
}

impl PolarForm {
    /// Reassembles `ρ^{1/2} e^{−τβ/2} R`.
    pub fn reconstruct(&self) -> Multivector {
        let phase = Multivector::scalar((self.beta / 2.0).cos())
            - Multivector::tau().scale((self.beta / 2.0).sin());
        phase.gp(&self.rotor).scale(self.rho.sqrt())
    }
}

/// Relative size of `ψψ̃` (against `‖ψ‖²`) below which `ψ` counts as null.
pub const SINGULAR_RATIO: f64 = 1e-14;

/// Polar decomposition of an even multivector.
///
/// Uses `ψψ̃ = ρ(cos β − τ sin β)`; β is taken on the principal branch
/// `(−π, π]`.
pub fn polar_decompose(psi: &Multivector) -> Result<PolarForm, MathError> {
    if !psi.is_even() {
        return Err(MathError::Domain(
            "polar_decompose: input has odd-grade components".into(),
        ));
    }
    let square = psi.gp(&psi.reverse());
    let c0 = square.scalar_part();
    let c4 = square[Blade::PSEUDOSCALAR];
    let rho = c0.hypot(c4);
    let scale = psi.norm_inf().powi(2);
    if rho == 0.0 || rho <= SINGULAR_RATIO * scale {
        return Err(MathError::SingularSpinor { norm: rho });
    }
    // +0.0 keeps atan2 off the −π branch when c4 is exactly zero
    let beta = (-c4 + 0.0).atan2(c0);
    let inverse_phase =
        Multivector::scalar((beta / 2.0).cos()) + Multivector::tau().scale((beta / 2.0).sin());
    let rotor = inverse_phase.gp(psi).scale(1.0 / rho.sqrt());
    Ok(PolarForm { rho, beta, rotor })
}
