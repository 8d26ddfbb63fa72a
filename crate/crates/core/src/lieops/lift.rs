use crate::clifford::{exp_bivector, sandwich_inverse, Multivector, ETA};
use crate::error::MathError;
use crate::geometry::{Geometry, Mat4, VectorField};

use super::field::CliffordField;
use super::flow::{flow_map, FlowProbe};
use super::ops::LieAt;

/// Grade-purity tolerance for the lift exponent.
const LIFT_TOL: f64 = 1e-12;

/// `u_t = exp(−¼ t S(ξ))`.
pub fn spinor_lift(s: &Multivector, t: f64) -> Result<Multivector, MathError> {
    exp_bivector(&s.scale(-0.25 * t), LIFT_TOL)
}

/// `γ̌^α_t = u_t⁻¹ γ^α u_t`.
pub fn checked_frame(s: &Multivector, alpha: usize, t: f64) -> Result<Multivector, MathError> {
    Ok(sandwich_inverse(&spinor_lift(s, t)?, &Multivector::gamma(alpha)))
}

/// `Λ^α_β` with `γ̌^α_t = Λ^α_β γ^β`.
pub fn frame_matrix(s: &Multivector, t: f64) -> Result<Mat4, MathError> {
    let u = spinor_lift(s, t)?;
    Ok(std::array::from_fn(|a| {
        sandwich_inverse(&u, &Multivector::gamma(a)).vector_part()
    }))
}

/// `max |⟨γ̌^α γ̌^β⟩₀ − η^{αβ}|`.
pub fn gram_residual(s: &Multivector, t: f64) -> Result<f64, MathError> {
    let u = spinor_lift(s, t)?;
    let frame: [Multivector; 4] =
        std::array::from_fn(|a| sandwich_inverse(&u, &Multivector::gamma(a)));
    let mut r: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let eta = if a == b { ETA[a] } else { 0.0 };
            r = r.max((frame[a].gp(&frame[b]).scalar_part() - eta).abs());
        }
    }
    Ok(r)
}

/// `max_t ‖(ǧ_t − g)/t‖∞` with `ǧ_t = η_{αβ} γ̌^α_t ⊗ γ̌^β_t`, in frame
/// components. Zero entries of `ts` are skipped.
pub fn spinor_lie_metric(s: &Multivector, ts: &[f64]) -> Result<f64, MathError> {
    let mut worst: f64 = 0.0;
    for &t in ts.iter().filter(|t| **t != 0.0) {
        let lam = frame_matrix(s, t)?;
        for mu in 0..4 {
            for nu in 0..4 {
                let checked: f64 = (0..4).map(|a| ETA[a] * lam[a][mu] * lam[a][nu]).sum();
                let g = if mu == nu { ETA[mu] } else { 0.0 };
                worst = worst.max(((checked - g) / t).abs());
            }
        }
    }
    Ok(worst)
}

/// `Σ^α_β`: the coefficient of `γ^β` in `¼[S(ξ), γ^α]`.
pub fn sigma_matrix(s: &Multivector) -> Mat4 {
    std::array::from_fn(|a| s.commutator(&Multivector::gamma(a)).scale(0.25).vector_part())
}

/// `Σ^α_κ = ½ S(ξ)·(γ^α ∧ γ_κ)`, the same generator through the scalar
/// product.
pub fn sigma_matrix_contraction(s: &Multivector) -> Mat4 {
    std::array::from_fn(|a| {
        std::array::from_fn(|k| {
            let lower = Multivector::gamma(k).scale(ETA[k]);
            0.5 * s.scalar_product(&Multivector::gamma(a).wedge(&lower))
        })
    })
}

/// `Č_t(x) = u_t⁻¹ C(h_t(x)) u_t`: components taken at the flowed point,
/// blades conjugated at the base point.
pub fn spinor_image(
    geometry: &Geometry,
    xi: &VectorField,
    c: &CliffordField,
    probe: &FlowProbe,
) -> Result<Multivector, MathError> {
    let at = LieAt::new(geometry, xi, &probe.base)?;
    let (x1, _) = flow_map(&geometry.chart, xi, probe)?;
    let u = spinor_lift(&at.s, probe.t)?;
    Ok(sandwich_inverse(&u, &c.eval(&x1)?))
}
