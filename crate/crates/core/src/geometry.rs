//! Point-wise geometric data of a chart with metric and cotetrad.
//!
//! Index conventions used throughout:
//!
//! * `h[α][μ] = h^α_μ`, so `γ^α = h^α_μ dx^μ`;
//! * `e[α][μ] = h_α^μ`, the dual frame `e_α = h_α^μ ∂_μ`;
//! * `christoffel[ρ][μ][ν] = Γ^ρ_{μν}` with `D_{∂μ} dx^ρ = −Γ^ρ_{μν} dx^ν`;
//! * `omega[α][μ][β] = ω_{αμβ}` with `D_{∂μ} γ^α = −ω^α_{μβ} γ^β`, frame
//!   indices lowered by η;
//! * `structure[α][κ][ι] = c^α_{κι}` with `[e_κ, e_ι] = c^α_{κι} e_α`.

use nalgebra::{Matrix4, SymmetricEigen};

use crate::clifford::{Multivector, ETA};
use crate::error::MathError;
use crate::jet::Jet2;
use crate::symexpr::{CoordNames, ScalarExpr};

pub type Tensor3 = [[[f64; 4]; 4]; 4];
pub type Mat4 = [[f64; 4]; 4];

/// Absolute tolerance for point-wise identities on O(1) scenes.
pub const POINT_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct Chart {
    pub names: CoordNames,
    /// Closed sampling interval per coordinate.
    pub sample_box: [[f64; 2]; 4],
}

impl Chart {
    pub fn new(names: CoordNames, sample_box: [[f64; 2]; 4]) -> Self {
        Chart { names, sample_box }
    }

    pub fn contains(&self, p: &[f64; 4]) -> bool {
        (0..4).all(|i| p[i] >= self.sample_box[i][0] && p[i] <= self.sample_box[i][1])
    }

    pub fn center(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|i| 0.5 * (self.sample_box[i][0] + self.sample_box[i][1]))
    }

    /// The 16 corners of the sample box.
    pub fn corners(&self) -> Vec<[f64; 4]> {
        (0..16u8)
            .map(|m| [0, 1, 2, 3].map(|i| self.sample_box[i][((m >> i) & 1) as usize]))
            .collect()
    }
}

/// Lower-index metric components `g_{μν}`.
#[derive(Clone, Debug)]
pub struct MetricField {
    pub g: [[ScalarExpr; 4]; 4],
}

/// Cotetrad components `h^α_μ`.
#[derive(Clone, Debug)]
pub struct TetradField {
    pub h: [[ScalarExpr; 4]; 4],
}

/// Vector field with coordinate components `ξ^μ`.
#[derive(Clone, Debug)]
pub struct VectorField {
    pub xi: [ScalarExpr; 4],
}

impl VectorField {
    pub fn zero(names: &CoordNames) -> Self {
        VectorField {
            xi: std::array::from_fn(|_| ScalarExpr::zero(names)),
        }
    }

    pub fn jets(&self, p: &[f64; 4]) -> Result<[Jet2; 4], MathError> {
        eval4(&self.xi, p)
    }
}

fn eval4(e: &[ScalarExpr; 4], p: &[f64; 4]) -> Result<[Jet2; 4], MathError> {
    let mut out = [Jet2::default(); 4];
    for i in 0..4 {
        out[i] = e[i].eval_jet(p)?;
    }
    Ok(out)
}

fn eval44(e: &[[ScalarExpr; 4]; 4], p: &[f64; 4]) -> Result<[[Jet2; 4]; 4], MathError> {
    let mut out = [[Jet2::default(); 4]; 4];
    for i in 0..4 {
        out[i] = eval4(&e[i], p)?;
    }
    Ok(out)
}

fn values(m: &[[Jet2; 4]; 4]) -> Mat4 {
    m.map(|row| row.map(|j| j.value))
}

/// `d[ρ][i][j] = ∂_ρ m[i][j]`.
fn partials(m: &[[Jet2; 4]; 4]) -> Tensor3 {
    let mut d = [[[0.0; 4]; 4]; 4];
    for (rho, slab) in d.iter_mut().enumerate() {
        for i in 0..4 {
            for j in 0..4 {
                slab[i][j] = m[i][j].grad[rho];
            }
        }
    }
    d
}

fn to_na(m: &Mat4) -> Matrix4<f64> {
    Matrix4::from_fn(|i, j| m[i][j])
}

fn from_na(m: &Matrix4<f64>) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)]))
}

fn max_abs(m: &Mat4) -> f64 {
    m.iter().flatten().fold(0.0, |a, v| a.max(v.abs()))
}

/// Inverse of a metric matrix, failing when it is numerically singular.
pub fn invert_metric(g: &Mat4, p: &[f64; 4]) -> Result<Mat4, MathError> {
    let na = to_na(g);
    let scale = max_abs(g).max(f64::MIN_POSITIVE);
    if na.determinant().abs() <= 1e-13 * scale.powi(4) {
        return Err(MathError::SingularMetric { point: *p });
    }
    na.try_inverse()
        .map(|m| from_na(&m))
        .ok_or(MathError::SingularMetric { point: *p })
}

/// `true` when the symmetric matrix has one positive and three negative
/// eigenvalues.
pub fn has_lorentz_signature(g: &Mat4) -> bool {
    let eig = SymmetricEigen::new(to_na(g));
    let scale = max_abs(g);
    let tiny = 1e-13 * scale;
    let pos = eig.eigenvalues.iter().filter(|&&v| v > tiny).count();
    let neg = eig.eigenvalues.iter().filter(|&&v| v < -tiny).count();
    pos == 1 && neg == 3
}

/// Christoffel symbols `Γ^ρ_{μν} = ½ g^{ρσ}(∂_μ g_{νσ} + ∂_ν g_{σμ} − ∂_σ g_{μν})`.
pub fn christoffel_from(g_inv: &Mat4, dg: &Tensor3) -> Tensor3 {
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for (rho, slab) in gamma.iter_mut().enumerate() {
        for mu in 0..4 {
            for nu in 0..4 {
                let mut s = 0.0;
                for sigma in 0..4 {
                    s += g_inv[rho][sigma]
                        * (dg[mu][nu][sigma] + dg[nu][sigma][mu] - dg[sigma][mu][nu]);
                }
                slab[mu][nu] = 0.5 * s;
            }
        }
    }
    gamma
}

pub fn christoffel(g: &MetricField, p: &[f64; 4]) -> Result<Tensor3, MathError> {
    let gj = eval44(&g.g, p)?;
    let g_inv = invert_metric(&values(&gj), p)?;
    Ok(christoffel_from(&g_inv, &partials(&gj)))
}

/// Lorentzian Cholesky factor carried through jets.
///
/// Returns `h` lower-triangular in coordinate order (`h^α_μ = 0` for
/// `μ > α`) with positive diagonal and `η_{αβ} h^α_μ h^β_ν = g_{μν}`.
/// Rows are eliminated from the last coordinate up, so row 0 is the
/// timelike one.
pub fn tetrad_jets_from_metric(
    g: &[[Jet2; 4]; 4],
    p: &[f64; 4],
) -> Result<[[Jet2; 4]; 4], MathError> {
    if !has_lorentz_signature(&values(g)) {
        return Err(MathError::Signature { point: *p });
    }
    let mut work = *g;
    let mut h = [[Jet2::constant(0.0); 4]; 4];
    for a in (0..4).rev() {
        let pivot = work[a][a] * ETA[a];
        if pivot.value <= 0.0 {
            return Err(MathError::Signature { point: *p });
        }
        let d = pivot.sqrt();
        h[a][a] = d;
        let denom = d * ETA[a];
        for nu in 0..a {
            h[a][nu] = work[a][nu] / denom;
        }
        for mu in 0..=a {
            for nu in 0..=a {
                work[mu][nu] = work[mu][nu] - (h[a][mu] * h[a][nu]) * ETA[a];
            }
        }
    }
    Ok(h)
}

pub fn tetrad_from_metric(g: &MetricField, p: &[f64; 4]) -> Result<Mat4, MathError> {
    let gj = eval44(&g.g, p)?;
    Ok(values(&tetrad_jets_from_metric(&gj, p)?))
}

/// `max |η_{αβ} h^α_μ h^β_ν − g_{μν}|`.
pub fn metric_reconstruction_residual(h: &Mat4, g: &Mat4) -> f64 {
    let mut r: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let s: f64 = (0..4).map(|a| ETA[a] * h[a][mu] * h[a][nu]).sum();
            r = r.max((s - g[mu][nu]).abs());
        }
    }
    r
}

fn invert_tetrad(h: &Mat4, p: &[f64; 4]) -> Result<Mat4, MathError> {
    let na = to_na(h);
    let scale = max_abs(h).max(f64::MIN_POSITIVE);
    if na.determinant().abs() <= 1e-13 * scale.powi(4) {
        return Err(MathError::SingularTetrad { point: *p });
    }
    // (H^{-1})[μ][α] = e_α^μ ; store transposed as e[α][μ]
    let inv = na
        .try_inverse()
        .ok_or(MathError::SingularTetrad { point: *p })?;
    Ok(std::array::from_fn(|a| std::array::from_fn(|mu| inv[(mu, a)])))
}

/// `ω_{αμβ} = −(∂_μ h_{αν}) h_β^ν + h_{αν} Γ^ν_{μτ} h_β^τ`, which is the
/// solution of `∂_μ h^α_ν + ω^α_{μβ} h^β_ν − h^α_σ Γ^σ_{μν} = 0`.
pub fn spin_connection_from(h: &Mat4, dh: &Tensor3, e: &Mat4, gamma: &Tensor3) -> Tensor3 {
    let mut omega = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for mu in 0..4 {
            for b in 0..4 {
                let mut s = 0.0;
                for nu in 0..4 {
                    s -= ETA[a] * dh[mu][a][nu] * e[b][nu];
                    for tau in 0..4 {
                        s += ETA[a] * h[a][nu] * gamma[nu][mu][tau] * e[b][tau];
                    }
                }
                omega[a][mu][b] = s;
            }
        }
    }
    omega
}

pub fn spin_connection(
    g: &MetricField,
    h: &TetradField,
    p: &[f64; 4],
) -> Result<Tensor3, MathError> {
    let gj = eval44(&g.g, p)?;
    let hj = eval44(&h.h, p)?;
    let (gv, hv) = (values(&gj), values(&hj));
    check_tetrad(&hv, &gv, p)?;
    let g_inv = invert_metric(&gv, p)?;
    let e = invert_tetrad(&hv, p)?;
    let gamma = christoffel_from(&g_inv, &partials(&gj));
    Ok(spin_connection_from(&hv, &partials(&hj), &e, &gamma))
}

fn check_tetrad(h: &Mat4, g: &Mat4, p: &[f64; 4]) -> Result<(), MathError> {
    let residual = metric_reconstruction_residual(h, g);
    if residual > POINT_TOL * (1.0 + max_abs(g)) {
        return Err(MathError::TetradMismatch {
            point: *p,
            residual,
        });
    }
    Ok(())
}

/// `c^α_{κι} = −h_κ^ν h_ι^ρ (∂_ν h^α_ρ − ∂_ρ h^α_ν)`, the commutator
/// coefficients of the dual frame.
pub fn structure_from(dh: &Tensor3, e: &Mat4) -> Tensor3 {
    let mut c = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for k in 0..4 {
            for i in 0..4 {
                let mut s = 0.0;
                for nu in 0..4 {
                    for rho in 0..4 {
                        s -= e[k][nu] * e[i][rho] * (dh[nu][a][rho] - dh[rho][a][nu]);
                    }
                }
                c[a][k][i] = s;
            }
        }
    }
    c
}

pub fn structure_coefficients(h: &TetradField, p: &[f64; 4]) -> Result<Tensor3, MathError> {
    let hj = eval44(&h.h, p)?;
    let e = invert_tetrad(&values(&hj), p)?;
    Ok(structure_from(&partials(&hj), &e))
}

/// `ω_{ακι} = ½(c_{ακι} + c_{και} + c_{ιακ})` with all indices frame and
/// lowered by η.
pub fn omega_from_structure(c: &Tensor3) -> Tensor3 {
    let low = |a: usize, k: usize, i: usize| ETA[a] * c[a][k][i];
    let mut w = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for k in 0..4 {
            for i in 0..4 {
                w[a][k][i] = 0.5 * (low(a, k, i) + low(k, a, i) + low(i, a, k));
            }
        }
    }
    w
}

/// `ω_{ακβ} = h_κ^μ ω_{αμβ}`: moves the middle index of the spin
/// connection to the frame.
pub fn omega_to_frame(omega: &Tensor3, e: &Mat4) -> Tensor3 {
    let mut w = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for k in 0..4 {
            for b in 0..4 {
                w[a][k][b] = (0..4).map(|mu| e[k][mu] * omega[a][mu][b]).sum();
            }
        }
    }
    w
}

/// Max difference between the connection rebuilt from structure
/// coefficients and the spin connection with its middle index moved to the
/// frame.
pub fn connection_check(c: &Tensor3, omega_frame: &Tensor3) -> f64 {
    let from_c = omega_from_structure(c);
    let mut r: f64 = 0.0;
    for a in 0..4 {
        for k in 0..4 {
            for i in 0..4 {
                r = r.max((from_c[a][k][i] - omega_frame[a][k][i]).abs());
            }
        }
    }
    r
}

/// Connection data at one point.
#[derive(Clone, Debug)]
pub struct ConnectionAtPoint {
    pub point: [f64; 4],
    pub christoffel: Tensor3,
    pub omega: Tensor3,
    pub structure: Tensor3,
}

/// Everything the derivative operators need at one point.
#[derive(Clone, Debug)]
pub struct PointGeometry {
    pub point: [f64; 4],
    pub g: Mat4,
    /// `dg[ρ][μ][ν] = ∂_ρ g_{μν}`
    pub dg: Tensor3,
    pub g_inv: Mat4,
    pub h: Mat4,
    /// `dh[ρ][α][μ] = ∂_ρ h^α_μ`
    pub dh: Tensor3,
    pub e: Mat4,
    pub connection: ConnectionAtPoint,
    /// Spin connection with all three indices in the frame, `ω_{ακβ}`.
    pub omega_frame: Tensor3,
}

/// Metric plus (optional) explicit cotetrad on a chart.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub chart: Chart,
    pub metric: MetricField,
    pub tetrad: Option<TetradField>,
}

impl Geometry {
    pub fn names(&self) -> &CoordNames {
        &self.chart.names
    }

    pub fn metric_jets(&self, p: &[f64; 4]) -> Result<[[Jet2; 4]; 4], MathError> {
        eval44(&self.metric.g, p)
    }

    /// Cotetrad jets: explicit expressions when given, else the Lorentzian
    /// Cholesky factor of the metric.
    pub fn tetrad_jets(&self, p: &[f64; 4]) -> Result<[[Jet2; 4]; 4], MathError> {
        match &self.tetrad {
            Some(t) => eval44(&t.h, p),
            None => tetrad_jets_from_metric(&self.metric_jets(p)?, p),
        }
    }

    pub fn at(&self, p: &[f64; 4]) -> Result<PointGeometry, MathError> {
        let gj = self.metric_jets(p)?;
        let g = values(&gj);
        let dg = partials(&gj);
        let g_inv = invert_metric(&g, p)?;
        let hj = self.tetrad_jets(p)?;
        let h = values(&hj);
        let dh = partials(&hj);
        check_tetrad(&h, &g, p)?;
        let e = invert_tetrad(&h, p)?;
        let christoffel = christoffel_from(&g_inv, &dg);
        let omega = spin_connection_from(&h, &dh, &e, &christoffel);
        let structure = structure_from(&dh, &e);
        let omega_frame = omega_to_frame(&omega, &e);
        Ok(PointGeometry {
            point: *p,
            g,
            dg,
            g_inv,
            h,
            dh,
            e,
            connection: ConnectionAtPoint {
                point: *p,
                christoffel,
                omega,
                structure,
            },
            omega_frame,
        })
    }
}

/// A vector field evaluated at a point, with first derivatives.
#[derive(Clone, Debug)]
pub struct XiAtPoint {
    /// `ξ^μ`
    pub coord: [f64; 4],
    /// `dcoord[ν][μ] = ∂_ν ξ^μ`
    pub dcoord: Mat4,
    /// Frame components `ξ^α = h^α_μ ξ^μ`.
    pub frame: [f64; 4],
}

impl XiAtPoint {
    pub fn new(jets: &[Jet2; 4], geo: &PointGeometry) -> Self {
        let coord = jets.map(|j| j.value);
        let dcoord = std::array::from_fn(|nu| std::array::from_fn(|mu| jets[mu].grad[nu]));
        let frame = std::array::from_fn(|a| (0..4).map(|mu| geo.h[a][mu] * coord[mu]).sum());
        XiAtPoint {
            coord,
            dcoord,
            frame,
        }
    }

    pub fn eval(xi: &VectorField, geo: &PointGeometry) -> Result<Self, MathError> {
        Ok(Self::new(&xi.jets(&geo.point)?, geo))
    }

    /// Lowered coordinate components `ξ_μ = g_{μν} ξ^ν`.
    pub fn lowered(&self, geo: &PointGeometry) -> [f64; 4] {
        std::array::from_fn(|mu| (0..4).map(|nu| geo.g[mu][nu] * self.coord[nu]).sum())
    }

    /// `∂_μ ξ_ν` of the lowered components (metric derivatives included).
    pub fn d_lowered(&self, geo: &PointGeometry) -> Mat4 {
        std::array::from_fn(|mu| {
            std::array::from_fn(|nu| {
                (0..4)
                    .map(|s| geo.dg[mu][nu][s] * self.coord[s] + geo.g[nu][s] * self.dcoord[mu][s])
                    .sum()
            })
        })
    }
}

/// `L(ξ) = ½(c_{ακι} + c_{και} + c_{ιακ}) ξ^κ γ^α∧γ^ι`.
pub fn biform_l(xi_frame: &[f64; 4], c: &Tensor3) -> Multivector {
    let w = omega_from_structure(c);
    // ½(...) = ω_{ακι}, and Σ_{α,ι} A_{αι} γ^α∧γ^ι needs the matrix 2A
    let mut f = [[0.0; 4]; 4];
    for a in 0..4 {
        for i in 0..4 {
            f[a][i] = 2.0 * (0..4).map(|k| w[a][k][i] * xi_frame[k]).sum::<f64>();
        }
    }
    Multivector::bivector_from_matrix(&f)
}

/// `ω_ξ = ½ ξ^κ ω_{ακβ} γ^α γ^β`, summed with geometric products.
pub fn connection_biform(xi_frame: &[f64; 4], omega_frame: &Tensor3) -> Multivector {
    let mut out = Multivector::ZERO;
    for a in 0..4 {
        for b in 0..4 {
            let coef: f64 = (0..4).map(|k| xi_frame[k] * omega_frame[a][k][b]).sum();
            if coef != 0.0 {
                out += Multivector::gamma(a)
                    .gp(&Multivector::gamma(b))
                    .scale(0.5 * coef);
            }
        }
    }
    out
}

/// Frame components `D_α ξ_β` of the covariant derivative of `ξ♭`, built
/// from Christoffel symbols in coordinates and moved to the frame.
pub fn covariant_dxi_christoffel(xi: &XiAtPoint, geo: &PointGeometry) -> Mat4 {
    let low = xi.lowered(geo);
    let dlow = xi.d_lowered(geo);
    let gamma = &geo.connection.christoffel;
    let mut nabla = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            nabla[mu][nu] =
                dlow[mu][nu] - (0..4).map(|r| gamma[r][mu][nu] * low[r]).sum::<f64>();
        }
    }
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let mut s = 0.0;
            for mu in 0..4 {
                for nu in 0..4 {
                    s += geo.e[a][mu] * geo.e[b][nu] * nabla[mu][nu];
                }
            }
            s
        })
    })
}

/// Frame components `D_α ξ_β = e_α(ξ_β) − ξ^δ ω_{δαβ}` using the connection
/// rebuilt from structure coefficients.
pub fn covariant_dxi_frame(xi: &XiAtPoint, geo: &PointGeometry) -> Mat4 {
    let w = omega_from_structure(&geo.connection.structure);
    // ∂_μ ξ_β (frame lowered) = η_β (∂_μ h^β_ν ξ^ν + h^β_ν ∂_μ ξ^ν)
    let d_frame_low: Mat4 = std::array::from_fn(|mu| {
        std::array::from_fn(|b| {
            ETA[b]
                * (0..4)
                    .map(|nu| geo.dh[mu][b][nu] * xi.coord[nu] + geo.h[b][nu] * xi.dcoord[mu][nu])
                    .sum::<f64>()
        })
    });
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let dir: f64 = (0..4).map(|mu| geo.e[a][mu] * d_frame_low[mu][b]).sum();
            let conn: f64 = (0..4).map(|d| xi.frame[d] * w[d][a][b]).sum();
            dir - conn
        })
    })
}

/// `dξ = γ^α ∧ D_{e_α} ξ = D_α ξ_β γ^α∧γ^β` from a `D_α ξ_β` matrix.
pub fn biform_from_covariant(dxi: &Mat4) -> Multivector {
    let twice: Mat4 = dxi.map(|row| row.map(|v| 2.0 * v));
    Multivector::bivector_from_matrix(&twice)
}

/// Both routes to `dξ`; callers compare them.
pub fn biform_dxi_routes(xi: &XiAtPoint, geo: &PointGeometry) -> (Multivector, Multivector) {
    (
        biform_from_covariant(&covariant_dxi_christoffel(xi, geo)),
        biform_from_covariant(&covariant_dxi_frame(xi, geo)),
    )
}

/// `dξ` (frame route).
pub fn biform_dxi(xi: &XiAtPoint, geo: &PointGeometry) -> Multivector {
    biform_from_covariant(&covariant_dxi_frame(xi, geo))
}

/// `S(ξ) = L(ξ) + dξ`.
pub fn biform_s(xi: &XiAtPoint, geo: &PointGeometry) -> Multivector {
    biform_l(&xi.frame, &geo.connection.structure) + biform_dxi(xi, geo)
}

/// Tetrad postulate residual `max |∂_μ h^α_ν + ω^α_{μβ} h^β_ν − h^α_σ Γ^σ_{μν}|`.
pub fn tetrad_postulate_residual(geo: &PointGeometry) -> f64 {
    let w = &geo.connection.omega;
    let gamma = &geo.connection.christoffel;
    let mut r: f64 = 0.0;
    for a in 0..4 {
        for mu in 0..4 {
            for nu in 0..4 {
                let mut s = geo.dh[mu][a][nu];
                for b in 0..4 {
                    s += ETA[a] * w[a][mu][b] * geo.h[b][nu];
                }
                for sg in 0..4 {
                    s -= geo.h[a][sg] * gamma[sg][mu][nu];
                }
                r = r.max(s.abs());
            }
        }
    }
    r
}

/// `max |ω_{αμβ} + ω_{βμα}|`.
pub fn omega_antisymmetry_residual(omega: &Tensor3) -> f64 {
    let mut r: f64 = 0.0;
    for a in 0..4 {
        for mu in 0..4 {
            for b in 0..4 {
                r = r.max((omega[a][mu][b] + omega[b][mu][a]).abs());
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::default_names;

    fn metric(entries: [[&str; 4]; 4]) -> MetricField {
        let n = default_names();
        MetricField {
            g: entries.map(|row| row.map(|s| ScalarExpr::parse(s, &n).unwrap())),
        }
    }

    fn tetrad(entries: [[&str; 4]; 4]) -> TetradField {
        let n = default_names();
        TetradField {
            h: entries.map(|row| row.map(|s| ScalarExpr::parse(s, &n).unwrap())),
        }
    }

    fn diag(d: [&'static str; 4]) -> [[&'static str; 4]; 4] {
        let mut m = [["0"; 4]; 4];
        for i in 0..4 {
            m[i][i] = d[i];
        }
        m
    }

    fn geometry(g: [[&str; 4]; 4], h: Option<[[&str; 4]; 4]>) -> Geometry {
        Geometry {
            chart: Chart::new(default_names(), [[-1.0, 1.0]; 4]),
            metric: metric(g),
            tetrad: h.map(tetrad),
        }
    }

    fn vector(c: [&str; 4]) -> VectorField {
        let n = default_names();
        VectorField {
            xi: c.map(|s| ScalarExpr::parse(s, &n).unwrap()),
        }
    }

    fn b(key: &str) -> Multivector {
        Multivector::blade(crate::clifford::Blade::from_key(key).unwrap(), 1.0)
    }

    const MINK: [&str; 4] = ["1", "-1", "-1", "-1"];
    const FLRW: [&str; 4] = ["1", "-t^2", "-t^2", "-t^2"];
    const RINDLER: [&str; 4] = ["x^2", "-1", "-1", "-1"];

    #[test]
    fn christoffel_minkowski_vanishes() {
        let gamma = christoffel(&metric(diag(MINK)), &[0.3, 0.1, -0.2, 0.5]).unwrap();
        assert!(gamma.iter().flatten().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn christoffel_flrw() {
        // a = t: Γ^1_{01} = a'/a = 1/2, Γ^0_{11} = a a' = 2 at t = 2
        let gamma = christoffel(&metric(diag(FLRW)), &[2.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((gamma[1][0][1] - 0.5).abs() < 1e-15);
        assert!((gamma[1][1][0] - 0.5).abs() < 1e-15);
        assert!((gamma[0][1][1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn christoffel_rindler() {
        // g00 = x²: Γ^0_{01} = 1/x, Γ^1_{00} = x
        let gamma = christoffel(&metric(diag(RINDLER)), &[0.0, 2.0, 0.0, 0.0]).unwrap();
        assert!((gamma[0][0][1] - 0.5).abs() < 1e-15);
        assert!((gamma[1][0][0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn singular_metric_is_reported() {
        let err = christoffel(&metric(diag(RINDLER)), &[0.0, 0.0, 0.0, 0.0]).unwrap_err();
        assert!(matches!(err, MathError::SingularMetric { .. }));
    }

    #[test]
    fn tetrad_from_metric_examples() {
        let p = [2.0, 0.0, 0.0, 0.0];
        let h = tetrad_from_metric(&metric(diag(MINK)), &p).unwrap();
        for a in 0..4 {
            for mu in 0..4 {
                assert_eq!(h[a][mu], if a == mu { 1.0 } else { 0.0 });
            }
        }
        let h = tetrad_from_metric(&metric(diag(["4", "-9", "-1", "-1"])), &p).unwrap();
        assert_eq!([h[0][0], h[1][1], h[2][2], h[3][3]], [2.0, 3.0, 1.0, 1.0]);
        let h = tetrad_from_metric(&metric(diag(FLRW)), &p).unwrap();
        assert_eq!([h[0][0], h[1][1], h[2][2], h[3][3]], [1.0, 2.0, 2.0, 2.0]);
        let g = [[1.0, 0.0, 0.0, 0.0], [0.0, -4.0, 0.0, 0.0], [0.0, 0.0, -4.0, 0.0], [0.0, 0.0, 0.0, -4.0]];
        assert!(metric_reconstruction_residual(&h, &g) < 1e-12);
    }

    #[test]
    fn tetrad_from_nondiagonal_metric_reproduces_it() {
        let g = metric([
            ["1 + x^2/10", "0.2*y", "0", "0.1"],
            ["0.2*y", "-1", "0.05*t", "0"],
            ["0", "0.05*t", "-1 - z^2/5", "0"],
            ["0.1", "0", "0", "-2"],
        ]);
        let p = [0.3, -0.4, 0.7, 0.2];
        let h = tetrad_from_metric(&g, &p).unwrap();
        let gv = values(&eval44(&g.g, &p).unwrap());
        assert!(metric_reconstruction_residual(&h, &gv) < 1e-12);
        for a in 0..4 {
            assert!(h[a][a] > 0.0);
            for mu in (a + 1)..4 {
                assert_eq!(h[a][mu], 0.0);
            }
        }
    }

    #[test]
    fn wrong_signature_is_rejected() {
        let err = tetrad_from_metric(&metric(diag(["-1", "-1", "-1", "-1"])), &[0.0; 4]).unwrap_err();
        assert!(matches!(err, MathError::Signature { .. }));
        let err = tetrad_from_metric(&metric(diag(["1", "1", "-1", "-1"])), &[0.0; 4]).unwrap_err();
        assert!(matches!(err, MathError::Signature { .. }));
    }

    #[test]
    fn spin_connection_minkowski_vanishes() {
        let w = spin_connection(&metric(diag(MINK)), &tetrad(diag(["1", "1", "1", "1"])), &[0.1; 4])
            .unwrap();
        assert!(w.iter().flatten().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn spin_connection_rindler() {
        // γ^0 = x dt ⇒ ω_{0 t 1} = h_{0ν} Γ^ν_{t1} = x · (1/x) = 1
        let w = spin_connection(
            &metric(diag(RINDLER)),
            &tetrad(diag(["x", "1", "1", "1"])),
            &[0.0, 2.0, 0.0, 0.0],
        )
        .unwrap();
        assert!((w[0][0][1] - 1.0).abs() < 1e-15);
        assert!((w[1][0][0] + 1.0).abs() < 1e-15);
        assert!(omega_antisymmetry_residual(&w) < 1e-15);
    }

    #[test]
    fn spin_connection_flrw() {
        // ω_{1 x 0} = h_{1ν} Γ^ν_{x τ} h_0^τ = −t · (1/t) = −1
        let w = spin_connection(
            &metric(diag(FLRW)),
            &tetrad(diag(["1", "t", "t", "t"])),
            &[2.0, 0.0, 0.0, 0.0],
        )
        .unwrap();
        assert!((w[1][1][0] + 1.0).abs() < 1e-15);
        assert!((w[0][1][1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tetrad_mismatch_is_reported() {
        let err = spin_connection(
            &metric(diag(RINDLER)),
            &tetrad(diag(["1", "1", "1", "1"])),
            &[0.0, 2.0, 0.0, 0.0],
        )
        .unwrap_err();
        assert!(matches!(err, MathError::TetradMismatch { .. }));
    }

    #[test]
    fn structure_coefficient_examples() {
        let c = structure_coefficients(&tetrad(diag(["1", "1", "1", "1"])), &[0.0; 4]).unwrap();
        assert!(c.iter().flatten().flatten().all(|&v| v == 0.0));
        // [e_0, e_1] = (1/x) e_0
        let c = structure_coefficients(&tetrad(diag(["x", "1", "1", "1"])), &[0.0, 2.0, 0.0, 0.0])
            .unwrap();
        assert!((c[0][0][1] - 0.5).abs() < 1e-15);
        assert!((c[0][1][0] + 0.5).abs() < 1e-15);
        // [e_0, e_1] = −(a'/a) e_1
        let c = structure_coefficients(&tetrad(diag(["1", "t", "t", "t"])), &[2.0, 0.0, 0.0, 0.0])
            .unwrap();
        assert!((c[1][0][1] + 0.5).abs() < 1e-15);
    }

    #[test]
    fn structure_coefficients_match_commutator_oracle() {
        // Oracle: [e_κ, e_ι]^μ = e_κ^ν ∂_ν e_ι^μ − e_ι^ν ∂_ν e_κ^μ with ∂e by
        // central differences of the numerically inverted tetrad.
        let t = tetrad([
            ["1 + 0.1*x", "0.2*y", "0", "0"],
            ["0", "1 + 0.3*t^2", "0.1*z", "0"],
            ["0.05*x*y", "0", "2 + sin(t)", "0"],
            ["0", "0", "0.1*t", "1 + x^2/4"],
        ]);
        let p = [0.3, -0.2, 0.5, 0.1];
        let inv_at = |q: &[f64; 4]| {
            let hv = values(&eval44(&t.h, q).unwrap());
            invert_tetrad(&hv, q).unwrap()
        };
        let e0 = inv_at(&p);
        let step = 1e-5;
        let mut de = [[[0.0; 4]; 4]; 4]; // de[ν][α][μ]
        for nu in 0..4 {
            let mut qp = p;
            let mut qm = p;
            qp[nu] += step;
            qm[nu] -= step;
            let (ep, em) = (inv_at(&qp), inv_at(&qm));
            for a in 0..4 {
                for mu in 0..4 {
                    de[nu][a][mu] = (ep[a][mu] - em[a][mu]) / (2.0 * step);
                }
            }
        }
        let hv = values(&eval44(&t.h, &p).unwrap());
        let c = structure_coefficients(&t, &p).unwrap();
        for k in 0..4 {
            for i in 0..4 {
                for a in 0..4 {
                    let mut s = 0.0;
                    for mu in 0..4 {
                        let mut comm = 0.0;
                        for nu in 0..4 {
                            comm += e0[k][nu] * de[nu][i][mu] - e0[i][nu] * de[nu][k][mu];
                        }
                        s += hv[a][mu] * comm;
                    }
                    assert!((s - c[a][k][i]).abs() < 1e-8, "{a}{k}{i}: {s} vs {}", c[a][k][i]);
                }
            }
        }
    }

    #[test]
    fn connection_check_golden_scenes() {
        let p_r = [0.2, 2.0, 0.1, -0.3];
        let p_f = [2.0, 0.4, -0.1, 0.3];
        for (geo, p) in [
            (geometry(diag(MINK), None), [0.1; 4]),
            (geometry(diag(RINDLER), Some(diag(["x", "1", "1", "1"]))), p_r),
            (geometry(diag(FLRW), Some(diag(["1", "t", "t", "t"]))), p_f),
        ] {
            let pg = geo.at(&p).unwrap();
            assert!(connection_check(&pg.connection.structure, &pg.omega_frame) <= 1e-10);
            assert!(tetrad_postulate_residual(&pg) <= 1e-10);
        }
    }

    #[test]
    fn biform_l_equals_twice_connection_biform() {
        let geo = geometry(diag(RINDLER), Some(diag(["x", "1", "1", "1"])));
        let pg = geo.at(&[0.0, 2.0, 0.0, 0.0]).unwrap();
        let xi = XiAtPoint::eval(&vector(["1", "0", "0", "0"]), &pg).unwrap();
        let l = biform_l(&xi.frame, &pg.connection.structure);
        let w = connection_biform(&xi.frame, &pg.omega_frame);
        assert!(l.is_pure_grade(2));
        assert!((l - w.scale(2.0)).norm_inf() < 1e-14);
        // ξ^0 = x = 2 and ω_{001} = h_0^t ω_{0t1} = 1/2
        assert!((w - b("01")).norm_inf() < 1e-14, "{w}");

        let zero = XiAtPoint::eval(&VectorField::zero(&default_names()), &pg).unwrap();
        assert_eq!(biform_l(&zero.frame, &pg.connection.structure), Multivector::ZERO);
    }

    #[test]
    fn flat_cartesian_l_vanishes() {
        let geo = geometry(diag(MINK), None);
        let pg = geo.at(&[0.3, 0.2, 0.1, 0.0]).unwrap();
        let xi = XiAtPoint::eval(&vector(["x*y", "t", "z^2", "1"]), &pg).unwrap();
        assert_eq!(biform_l(&xi.frame, &pg.connection.structure), Multivector::ZERO);
        assert_eq!(connection_biform(&xi.frame, &pg.omega_frame), Multivector::ZERO);
    }

    #[test]
    fn dxi_examples_minkowski() {
        let geo = geometry(diag(MINK), None);
        let pg = geo.at(&[0.3, -0.7, 0.2, 0.5]).unwrap();
        let trans = XiAtPoint::eval(&vector(["1", "0", "0", "0"]), &pg).unwrap();
        assert_eq!(biform_dxi(&trans, &pg), Multivector::ZERO);
        // ξ♭ = x dt − t dx ⇒ dξ = −2 dt∧dx
        let boost = XiAtPoint::eval(&vector(["x", "t", "0", "0"]), &pg).unwrap();
        let (a, c) = biform_dxi_routes(&boost, &pg);
        assert_eq!(a, b("01").scale(-2.0));
        assert_eq!(c, b("01").scale(-2.0));
        assert_eq!(biform_s(&boost, &pg), b("01").scale(-2.0));
        // ξ♭ = −y dx + x dy ⇒ dξ = 2 dx∧dy
        let rot = XiAtPoint::eval(&vector(["0", "y", "-x", "0"]), &pg).unwrap();
        assert_eq!(biform_dxi(&rot, &pg), b("12").scale(2.0));
    }

    #[test]
    fn dxi_routes_agree_on_curved_scenes() {
        let cases = [
            (geometry(diag(RINDLER), Some(diag(["x", "1", "1", "1"]))), [0.2, 1.7, 0.1, -0.3]),
            (geometry(diag(FLRW), Some(diag(["1", "t", "t", "t"]))), [1.6, 0.4, -0.1, 0.3]),
            (geometry(diag(FLRW), None), [2.3, 0.4, -0.1, 0.3]),
        ];
        let xi = vector(["t*x + 1", "sin(y) - t", "x*z", "exp(0.1*t)*y"]);
        for (geo, p) in cases {
            let pg = geo.at(&p).unwrap();
            let x = XiAtPoint::eval(&xi, &pg).unwrap();
            let (a, c) = biform_dxi_routes(&x, &pg);
            assert!((a - c).norm_inf() < 1e-10, "{a} vs {c}");
            let s = biform_s(&x, &pg);
            assert!(s.is_pure_grade(2));
        }
    }

    #[test]
    fn rindler_killing_time_has_nonzero_l_and_dxi_that_cancel() {
        // ∂_t is Killing; γ^α is invariant under its flow, so S(∂_t) = 0
        let geo = geometry(diag(RINDLER), Some(diag(["x", "1", "1", "1"])));
        let pg = geo.at(&[0.0, 2.0, 0.0, 0.0]).unwrap();
        let xi = XiAtPoint::eval(&vector(["1", "0", "0", "0"]), &pg).unwrap();
        let l = biform_l(&xi.frame, &pg.connection.structure);
        let d = biform_dxi(&xi, &pg);
        assert!(l.norm_inf() > 0.5 && d.norm_inf() > 0.5);
        assert!((l + d).norm_inf() < 1e-14);
    }
}
