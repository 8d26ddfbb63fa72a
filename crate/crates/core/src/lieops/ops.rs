use crate::clifford::{Multivector, ETA};
use crate::error::MathError;
use crate::geometry::{
    biform_dxi_routes, biform_l, connection_biform, Geometry, Mat4, PointGeometry, VectorField,
    XiAtPoint,
};

use super::field::{CliffordField, MvJet, SpinorField};

/// Threshold on the Killing residual separating Killing code paths.
pub const KILLING_TOL: f64 = 1e-8;

/// The geometry and every ξ-dependent biform at one point.
#[derive(Clone, Debug)]
pub struct LieAt {
    pub geo: PointGeometry,
    pub xi: XiAtPoint,
    /// `L(ξ)` from structure coefficients.
    pub l: Multivector,
    /// `dξ`, frame route.
    pub dxi: Multivector,
    /// `dξ`, Christoffel route.
    pub dxi_christoffel: Multivector,
    /// `S(ξ) = L(ξ) + dξ`.
    pub s: Multivector,
    /// `ω_ξ` from the spin connection.
    pub omega_xi: Multivector,
    /// `ω_{e_ι}` for the four frame directions.
    omega_dirs: [Multivector; 4],
}

impl LieAt {
    pub fn new(geometry: &Geometry, xi: &VectorField, p: &[f64; 4]) -> Result<Self, MathError> {
        let geo = geometry.at(p)?;
        let xi = XiAtPoint::eval(xi, &geo)?;
        Ok(Self::from_parts(geo, xi))
    }

    pub fn from_parts(geo: PointGeometry, xi: XiAtPoint) -> Self {
        let l = biform_l(&xi.frame, &geo.connection.structure);
        let (dxi_christoffel, dxi) = biform_dxi_routes(&xi, &geo);
        let omega_xi = connection_biform(&xi.frame, &geo.omega_frame);
        let omega_dirs = std::array::from_fn(|i| {
            let mut unit = [0.0; 4];
            unit[i] = 1.0;
            connection_biform(&unit, &geo.omega_frame)
        });
        LieAt {
            s: l + dxi,
            geo,
            xi,
            l,
            dxi,
            dxi_christoffel,
            omega_xi,
            omega_dirs,
        }
    }

    pub fn point(&self) -> [f64; 4] {
        self.geo.point
    }

    /// `𝔡_ξ`: the derivative of the frame components along ξ.
    pub fn component_derivative(&self, a: &MvJet) -> Multivector {
        a.directional(&self.xi.coord)
    }

    /// `D_{e_ι} A = e_ι(A) + ½[ω_{e_ι}, A]`.
    pub fn frame_covariant(&self, iota: usize, a: &MvJet) -> Multivector {
        a.directional(&self.geo.e[iota]) + self.omega_dirs[iota].commutator(&a.val).scale(0.5)
    }

    /// `dA = γ^ι ∧ D_{e_ι} A`.
    pub fn exterior(&self, a: &MvJet) -> Multivector {
        let mut out = Multivector::ZERO;
        for iota in 0..4 {
            out += Multivector::gamma(iota).wedge(&self.frame_covariant(iota, a));
        }
        out
    }

    /// `ξ♭ = ξ_α γ^α` with its coordinate partials.
    pub fn xi_flat(&self) -> MvJet {
        let (geo, xi) = (&self.geo, &self.xi);
        let val = Multivector::vector(std::array::from_fn(|b| ETA[b] * xi.frame[b]));
        let d = std::array::from_fn(|mu| {
            Multivector::vector(std::array::from_fn(|b| {
                ETA[b]
                    * (0..4)
                        .map(|nu| geo.dh[mu][b][nu] * xi.coord[nu] + geo.h[b][nu] * xi.dcoord[mu][nu])
                        .sum::<f64>()
            }))
        });
        MvJet { val, d }
    }

    /// `max |(£_ξ g)_{μν}|` at this point.
    pub fn killing_residual(&self) -> f64 {
        killing_residual_at(&self.geo, &self.xi)
    }
}

/// `(£_ξ g)_{μν} = ξ^σ ∂_σ g_{μν} + g_{σν} ∂_μ ξ^σ + g_{μσ} ∂_ν ξ^σ`.
pub fn lie_metric_components(geo: &PointGeometry, xi: &XiAtPoint) -> Mat4 {
    std::array::from_fn(|mu| {
        std::array::from_fn(|nu| {
            (0..4)
                .map(|s| {
                    xi.coord[s] * geo.dg[s][mu][nu]
                        + geo.g[s][nu] * xi.dcoord[mu][s]
                        + geo.g[mu][s] * xi.dcoord[nu][s]
                })
                .sum()
        })
    })
}

pub fn killing_residual_at(geo: &PointGeometry, xi: &XiAtPoint) -> f64 {
    lie_metric_components(geo, xi)
        .iter()
        .flatten()
        .fold(0.0, |a, v| a.max(v.abs()))
}

/// Max of the Killing residual over `points`.
pub fn killing_residual(
    geometry: &Geometry,
    xi: &VectorField,
    points: &[[f64; 4]],
) -> Result<f64, MathError> {
    let mut r: f64 = 0.0;
    for p in points {
        let geo = geometry.at(p)?;
        r = r.max(killing_residual_at(&geo, &XiAtPoint::eval(xi, &geo)?));
    }
    Ok(r)
}

/// `£_ξ A = ξ⌟dA + d(ξ⌟A)` for a homogeneous form field `A`.
pub fn lie_form_cartan(at: &LieAt, a: &CliffordField) -> Result<Multivector, MathError> {
    if a.homogeneous_grade().is_none() {
        return Err(MathError::Domain(
            "Cartan formula needs a homogeneous form field".into(),
        ));
    }
    let aj = a.jet(&at.point())?;
    let xi = at.xi_flat();
    let inner = xi.bilinear(&aj, |x, y| x.left_contraction(y));
    Ok(xi.val.left_contraction(&at.exterior(&aj)) + at.exterior(&inner))
}

/// `¼[S(ξ), γ^α]`, which for Killing ξ is the Lie derivative of `γ^α`.
pub fn lie_coterad_killing(at: &LieAt, alpha: usize) -> Result<Multivector, MathError> {
    let residual = at.killing_residual();
    if residual > KILLING_TOL {
        return Err(MathError::KillingViolation { residual });
    }
    Ok(at.s.commutator(&Multivector::gamma(alpha)).scale(0.25))
}

/// `D_ξ C = 𝔡_ξ C + ½[ω_ξ, C]`.
pub fn cov_deriv_clifford(at: &LieAt, c: &CliffordField) -> Result<Multivector, MathError> {
    let cj = c.jet(&at.point())?;
    Ok(at.component_derivative(&cj) + at.omega_xi.commutator(&cj.val).scale(0.5))
}

/// `D^s_ξ ψ = 𝔡_ξ ψ + ½ ω_ξ ψ`.
pub fn cov_deriv_spinor(at: &LieAt, psi: &SpinorField) -> Result<Multivector, MathError> {
    let pj = psi.jet(&at.point())?;
    Ok(at.component_derivative(&pj) + at.omega_xi.gp(&pj.val).scale(0.5))
}

/// `s£_ξ C = 𝔡_ξ C + ¼[S(ξ), C]`.
pub fn spinor_lie_clifford(at: &LieAt, c: &CliffordField) -> Result<Multivector, MathError> {
    let cj = c.jet(&at.point())?;
    Ok(spinor_lie_clifford_jet(at, &cj))
}

pub fn spinor_lie_clifford_jet(at: &LieAt, c: &MvJet) -> Multivector {
    at.component_derivative(c) + at.s.commutator(&c.val).scale(0.25)
}

/// `s£_ξ ψ = 𝔡_ξ ψ + ¼ S(ξ) ψ`.
pub fn spinor_lie_left(at: &LieAt, psi: &SpinorField) -> Result<Multivector, MathError> {
    Ok(spinor_lie_left_jet(at, &psi.jet(&at.point())?))
}

pub fn spinor_lie_left_jet(at: &LieAt, psi: &MvJet) -> Multivector {
    at.component_derivative(psi) + at.s.gp(&psi.val).scale(0.25)
}

/// `s£_ξ φ = 𝔡_ξ φ − ¼ φ S(ξ)`.
pub fn spinor_lie_right(at: &LieAt, phi: &SpinorField) -> Result<Multivector, MathError> {
    Ok(spinor_lie_right_jet(at, &phi.jet(&at.point())?))
}

pub fn spinor_lie_right_jet(at: &LieAt, phi: &MvJet) -> Multivector {
    at.component_derivative(phi) - phi.val.gp(&at.s).scale(0.25)
}

/// Covariant form `D^s_ξ ψ + ¼ dξ ψ`, with `ω_ξ` from the spin connection
/// and `dξ` from Christoffel symbols.
pub fn spinor_lie_covariant(at: &LieAt, psi: &SpinorField) -> Result<Multivector, MathError> {
    Ok(spinor_lie_covariant_jet(at, &psi.jet(&at.point())?))
}

pub fn spinor_lie_covariant_jet(at: &LieAt, psi: &MvJet) -> Multivector {
    at.component_derivative(psi)
        + at.omega_xi.gp(&psi.val).scale(0.5)
        + at.dxi_christoffel.gp(&psi.val).scale(0.25)
}

/// The bivector `B` with `s£_ξ ψ = 𝔡_ξ ψ + B ψ`, written in coordinates:
///
/// `B = −¼ h_β^ν {ξ^μ ∂_μ h_{αν} + (∂_ν ξ_μ) h_α^μ} γ^α∧γ^β + ¼ ξ^ρ Γ_{ραβ} γ^α∧γ^β`
///
/// with `Γ_{ραβ} = h_{αν} Γ^ν_{ρτ} h_β^τ`. The second term does not vanish
/// in general; `with_gamma = false` drops it.
pub fn coordinate_bivector(at: &LieAt, with_gamma: bool) -> Multivector {
    let (geo, xi) = (&at.geo, &at.xi);
    let dlow = xi.d_lowered(geo);
    let mut m = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let mut s = 0.0;
            for nu in 0..4 {
                let mut brace = 0.0;
                for mu in 0..4 {
                    brace += xi.coord[mu] * ETA[a] * geo.dh[mu][a][nu];
                    brace += dlow[nu][mu] * geo.e[a][mu];
                }
                s += geo.e[b][nu] * brace;
            }
            m[a][b] = -0.5 * s;
        }
    }
    let mut out = Multivector::bivector_from_matrix(&m);
    if with_gamma {
        out += gamma_term(at);
    }
    out
}

/// `¼ ξ^ρ Γ_{ραβ} γ^α∧γ^β`.
pub fn gamma_term(at: &LieAt) -> Multivector {
    let (geo, xi) = (&at.geo, &at.xi);
    let gamma = &geo.connection.christoffel;
    let mut m = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let mut s = 0.0;
            for rho in 0..4 {
                for nu in 0..4 {
                    for tau in 0..4 {
                        s += xi.coord[rho]
                            * ETA[a]
                            * geo.h[a][nu]
                            * gamma[nu][rho][tau]
                            * geo.e[b][tau];
                    }
                }
            }
            m[a][b] = 0.5 * s;
        }
    }
    Multivector::bivector_from_matrix(&m)
}

/// Coordinate form of the spinor Lie derivative.
pub fn spinor_lie_coordinate(
    at: &LieAt,
    psi: &SpinorField,
    with_gamma: bool,
) -> Result<Multivector, MathError> {
    Ok(spinor_lie_coordinate_jet(at, &psi.jet(&at.point())?, with_gamma))
}

pub fn spinor_lie_coordinate_jet(at: &LieAt, psi: &MvJet, with_gamma: bool) -> Multivector {
    at.component_derivative(psi) + coordinate_bivector(at, with_gamma).gp(&psi.val)
}

/// `V^α = ψ γ^α ψ̃`.
pub fn current_vector(psi: &Multivector, alpha: usize) -> Multivector {
    psi.gp(&Multivector::gamma(alpha)).gp(&psi.reverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Blade;
    use crate::geometry::{Chart, MetricField, TetradField};
    use crate::symexpr::{default_names, ScalarExpr};

    fn diag(d: [&'static str; 4]) -> [[&'static str; 4]; 4] {
        let mut m = [["0"; 4]; 4];
        for i in 0..4 {
            m[i][i] = d[i];
        }
        m
    }

    fn parse44(m: [[&str; 4]; 4]) -> [[ScalarExpr; 4]; 4] {
        let n = default_names();
        m.map(|row| row.map(|s| ScalarExpr::parse(s, &n).unwrap()))
    }

    fn geometry(g: [[&str; 4]; 4], h: Option<[[&str; 4]; 4]>) -> Geometry {
        Geometry {
            chart: Chart::new(default_names(), [[-5.0, 5.0]; 4]),
            metric: MetricField { g: parse44(g) },
            tetrad: h.map(|h| TetradField { h: parse44(h) }),
        }
    }

    fn minkowski() -> Geometry {
        geometry(diag(["1", "-1", "-1", "-1"]), None)
    }

    fn rindler() -> Geometry {
        geometry(diag(["x^2", "-1", "-1", "-1"]), Some(diag(["x", "1", "1", "1"])))
    }

    fn flrw() -> Geometry {
        geometry(diag(["1", "-t^2", "-t^2", "-t^2"]), Some(diag(["1", "t", "t", "t"])))
    }

    fn vector(c: [&str; 4]) -> VectorField {
        let n = default_names();
        VectorField {
            xi: c.map(|s| ScalarExpr::parse(s, &n).unwrap()),
        }
    }

    fn b(key: &str) -> Multivector {
        Multivector::blade(Blade::from_key(key).unwrap(), 1.0)
    }

    fn at(geo: &Geometry, xi: [&str; 4], p: [f64; 4]) -> LieAt {
        LieAt::new(geo, &vector(xi), &p).unwrap()
    }

    fn one() -> SpinorField {
        SpinorField::constant(&Multivector::one(), &default_names()).unwrap()
    }

    fn close(a: Multivector, b: Multivector, tol: f64) -> bool {
        (a - b).norm_inf() <= tol
    }

    const P: [f64; 4] = [0.3, -0.7, 0.2, 0.5];
    const BOOST: [&str; 4] = ["x", "t", "0", "0"];
    const ROT: [&str; 4] = ["0", "y", "-x", "0"];
    const TRANS: [&str; 4] = ["1", "0", "0", "0"];

    #[test]
    fn cartan_examples() {
        let m = minkowski();
        let n = default_names();
        let g0 = CliffordField::gamma(0, &n);
        assert_eq!(lie_form_cartan(&at(&m, TRANS, P), &g0).unwrap(), Multivector::ZERO);
        assert_eq!(lie_form_cartan(&at(&m, BOOST, P), &g0).unwrap(), b("1"));
        let f = CliffordField::parse(&n, [("s", "t*x + y^2")]).unwrap();
        // ξ(f) = x·x + t·t
        let got = lie_form_cartan(&at(&m, BOOST, P), &f).unwrap();
        assert!((got.scalar_part() - (0.49 + 0.09)).abs() < 1e-15);
        let mixed = CliffordField::parse(&n, [("s", "1"), ("0", "1")]).unwrap();
        assert!(matches!(
            lie_form_cartan(&at(&m, BOOST, P), &mixed),
            Err(MathError::Domain(_))
        ));
    }

    #[test]
    fn cartan_matches_coordinate_lie_derivative_of_a_form() {
        // Oracle: (£_ξ A)_ν = ξ^μ ∂_μ A_ν + A_μ ∂_ν ξ^μ in coordinates.
        let geo = flrw();
        let n = default_names();
        let p = [1.7, 0.3, -0.4, 0.2];
        let xi = ["t*x", "y + t^2", "sin(x)", "1"];
        let a = CliffordField::parse(&n, [("0", "x*y"), ("1", "t"), ("3", "z^2 + 1")]).unwrap();
        let la = at(&geo, xi, p);
        let got = lie_form_cartan(&la, &a).unwrap();
        // coordinate components A_ν = a_α h^α_ν, evaluated by jets
        let hj = geo.tetrad_jets(&p).unwrap();
        let aj = a.jet(&p).unwrap();
        let comp = |nu: usize, q: usize| -> (f64, f64) {
            // value and ∂_q of A_ν
            let mut v = 0.0;
            let mut d = 0.0;
            for al in 0..4 {
                let c = aj.val.vector_part()[al];
                let dc = aj.d[q].vector_part()[al];
                v += c * hj[al][nu].value;
                d += dc * hj[al][nu].value + c * hj[al][nu].grad[q];
            }
            (v, d)
        };
        let mut coord = [0.0; 4];
        for nu in 0..4 {
            let mut s = 0.0;
            for mu in 0..4 {
                s += la.xi.coord[mu] * comp(nu, mu).1 + comp(mu, 0).0 * la.xi.dcoord[nu][mu];
            }
            coord[nu] = s;
        }
        // back to frame: c_α = A_ν h_α^ν
        let expect = Multivector::vector(std::array::from_fn(|al| {
            (0..4).map(|nu| coord[nu] * la.geo.e[al][nu]).sum()
        }));
        assert!(close(got, expect, 1e-12), "{got} vs {expect}");
    }

    #[test]
    fn killing_coterad_examples() {
        let m = minkowski();
        assert_eq!(lie_coterad_killing(&at(&m, TRANS, P), 0).unwrap(), Multivector::ZERO);
        assert_eq!(lie_coterad_killing(&at(&m, BOOST, P), 0).unwrap(), b("1"));
        assert_eq!(lie_coterad_killing(&at(&m, ROT, P), 3).unwrap(), Multivector::ZERO);
        let err = lie_coterad_killing(&at(&m, ["t", "0", "0", "0"], P), 0).unwrap_err();
        assert!(matches!(err, MathError::KillingViolation { residual } if (residual - 2.0).abs() < 1e-15));
    }

    #[test]
    fn killing_residual_examples() {
        let m = minkowski();
        let pts = [P, [1.0, 2.0, -1.0, 0.5]];
        assert_eq!(killing_residual(&m, &vector(BOOST), &pts).unwrap(), 0.0);
        assert_eq!(killing_residual(&m, &vector(["t", "0", "0", "0"]), &pts).unwrap(), 2.0);
        assert_eq!(
            killing_residual(&m, &VectorField::zero(&default_names()), &pts).unwrap(),
            0.0
        );
        let r = rindler();
        assert!(killing_residual(&r, &vector(TRANS), &[[0.0, 2.0, 0.0, 0.0]]).unwrap() < 1e-15);
    }

    #[test]
    fn covariant_derivative_examples() {
        let n = default_names();
        let m = minkowski();
        let c = CliffordField::constant(&(b("0") + b("12").scale(2.0)), &n);
        assert_eq!(cov_deriv_clifford(&at(&m, BOOST, P), &c).unwrap(), Multivector::ZERO);
        assert_eq!(
            cov_deriv_clifford(&at(&rindler(), TRANS, [0.0, 2.0, 0.0, 0.0]), &CliffordField::constant(&Multivector::one(), &n)).unwrap(),
            Multivector::ZERO
        );
        // Rindler: D_{∂t} γ^0 = −ω^0_{t1} γ^1 = −γ^1
        let la = at(&rindler(), TRANS, [0.0, 2.0, 0.0, 0.0]);
        let d = cov_deriv_clifford(&la, &CliffordField::gamma(0, &n)).unwrap();
        assert!(close(d, b("1").scale(-1.0), 1e-15), "{d}");
        assert!(close(d, la.omega_xi.commutator(&b("0")).scale(0.5), 0.0));
        let ds = cov_deriv_spinor(&la, &one()).unwrap();
        assert!(close(ds, la.omega_xi.scale(0.5), 0.0));
        // parallel at the point: ψ with 𝔡ψ = −½ω_ξ ψ
        let psi = SpinorField::new(CliffordField::parse(&n, [("s", "1"), ("01", "-t/2")]).unwrap()).unwrap();
        let la0 = at(&rindler(), TRANS, [0.0, 2.0, 0.0, 0.0]);
        assert!(close(cov_deriv_spinor(&la0, &psi).unwrap(), Multivector::ZERO, 1e-15));
    }

    #[test]
    fn spinor_lie_examples() {
        let n = default_names();
        let m = minkowski();
        assert_eq!(
            spinor_lie_clifford(&at(&m, BOOST, P), &CliffordField::gamma(0, &n)).unwrap(),
            b("1")
        );
        let unit = CliffordField::constant(&Multivector::one(), &n);
        assert_eq!(spinor_lie_clifford(&at(&rindler(), TRANS, [0.0, 2.0, 0.0, 0.0]), &unit).unwrap(), Multivector::ZERO);
        // τ commutes with bivectors: only the coefficient derivative survives
        let tau = CliffordField::parse(&n, [("0123", "t*x")]).unwrap();
        let got = spinor_lie_clifford(&at(&m, BOOST, P), &tau).unwrap();
        assert!(close(got, Multivector::tau().scale(0.49 + 0.09), 1e-15));

        assert_eq!(spinor_lie_left(&at(&m, TRANS, P), &one()).unwrap(), Multivector::ZERO);
        assert_eq!(spinor_lie_left(&at(&m, BOOST, P), &one()).unwrap(), b("01").scale(-0.5));
        assert_eq!(spinor_lie_left(&at(&m, ROT, P), &one()).unwrap(), b("12").scale(0.5));
        assert_eq!(spinor_lie_right(&at(&m, BOOST, P), &one()).unwrap(), b("01").scale(0.5));
        assert_eq!(spinor_lie_right(&at(&m, TRANS, P), &one()).unwrap(), Multivector::ZERO);
    }

    #[test]
    fn coordinate_form_examples() {
        let m = minkowski();
        assert_eq!(spinor_lie_coordinate(&at(&m, BOOST, P), &one(), true).unwrap(), b("01").scale(-0.5));
        assert_eq!(spinor_lie_coordinate(&at(&m, TRANS, P), &one(), true).unwrap(), Multivector::ZERO);
        let la = at(&flrw(), TRANS, [2.0, 0.1, 0.2, 0.3]);
        let left = spinor_lie_left(&la, &one()).unwrap();
        assert!(close(spinor_lie_coordinate(&la, &one(), true).unwrap(), left, 1e-14));
    }

    #[test]
    fn gamma_term_is_needed_on_rindler() {
        let la = at(&rindler(), TRANS, [0.0, 2.0, 0.0, 0.0]);
        let g = gamma_term(&la);
        assert!(close(g, b("01").scale(0.5), 1e-15), "{g}");
        let left = spinor_lie_left(&la, &one()).unwrap();
        assert!(close(left, Multivector::ZERO, 1e-15));
        assert!(close(spinor_lie_coordinate(&la, &one(), true).unwrap(), left, 1e-15));
        let without = spinor_lie_coordinate(&la, &one(), false).unwrap();
        assert!(close(without, b("01").scale(-0.5), 1e-15));
    }

    #[test]
    fn three_forms_agree_for_generic_data() {
        let n = default_names();
        let psi = SpinorField::new(
            CliffordField::parse(
                &n,
                [("s", "1 + t*x"), ("01", "sin(y)"), ("13", "z - t"), ("23", "x^2"), ("0123", "0.3")],
            )
            .unwrap(),
        )
        .unwrap();
        let xi = ["t*x + 1", "sin(y) - t", "x*z", "exp(0.1*t)*y"];
        for (geo, p) in [
            (minkowski(), [0.3, 0.2, -0.5, 0.7]),
            (rindler(), [0.2, 1.7, 0.1, -0.3]),
            (flrw(), [1.6, 0.4, -0.1, 0.3]),
        ] {
            let la = at(&geo, xi, p);
            let a = spinor_lie_left(&la, &psi).unwrap();
            let c = spinor_lie_covariant(&la, &psi).unwrap();
            let d = spinor_lie_coordinate(&la, &psi, true).unwrap();
            assert!(close(a, c, 1e-10), "{a} vs {c}");
            assert!(close(a, d, 1e-10), "{a} vs {d}");
            assert!(a.is_even());
        }
    }

    #[test]
    fn killing_agreement_on_rindler_time() {
        let n = default_names();
        let la = at(&rindler(), TRANS, [0.1, 1.3, 0.0, 0.2]);
        for alpha in 0..4 {
            let g = CliffordField::gamma(alpha, &n);
            let s = spinor_lie_clifford(&la, &g).unwrap();
            let c = lie_form_cartan(&la, &g).unwrap();
            assert!(close(s, c, 1e-12), "{alpha}: {s} vs {c}");
        }
    }

    #[test]
    fn unit_section_identities() {
        let la = at(&flrw(), ["t*x", "y", "1", "z*t"], [1.4, 0.2, 0.3, -0.1]);
        assert!(close(spinor_lie_left(&la, &one()).unwrap(), la.s.scale(0.25), 1e-12));
        assert!(close(spinor_lie_right(&la, &one()).unwrap(), la.s.scale(-0.25), 1e-12));
    }

    #[test]
    fn current_vector_examples() {
        for a in 0..4 {
            assert_eq!(current_vector(&Multivector::one(), a), Multivector::gamma(a));
            assert_eq!(current_vector(&Multivector::scalar(2.0), a), Multivector::gamma(a).scale(4.0));
        }
        let psi = crate::clifford::exp_bivector(&b("12").scale(std::f64::consts::FRAC_PI_4), 1e-12).unwrap();
        let v = current_vector(&psi, 1);
        // oracle: explicit sandwich with cos/sin of the half angle
        let (c, s) = (std::f64::consts::FRAC_PI_4.cos(), std::f64::consts::FRAC_PI_4.sin());
        let r = b("s").scale(c) + b("12").scale(s);
        let expect = r.gp(&b("1")).gp(&r.reverse());
        assert!(close(v, expect, 1e-15));
        assert!(v.is_pure_grade(1));
        assert!(v.get(Blade::vector(1)).abs() < 1e-15 && (v.get(Blade::vector(2)).abs() - 1.0).abs() < 1e-15);
    }
}
